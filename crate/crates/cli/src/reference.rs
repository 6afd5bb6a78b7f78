//! Reference values the command line checks against.

use symcos::poly::Family;

/// Integral errors of the reference interpolation experiment, per `N`:
/// columns `(V, anti)`, `(VII, anti)`, `(V, sym)`, `(VII, sym)` as tabulated.
pub const INTERPOLATION_ERRORS: [(usize, [f64; 4]); 6] = [
    (5, [0.648691, 1.396870, 0.725031, 1.502161]),
    (10, [0.007940, 0.007599, 0.007191, 0.006471]),
    (15, [0.001350, 0.001407, 0.000440, 0.000492]),
    (20, [0.001034, 0.001058, 0.000171, 0.000195]),
    (25, [0.000835, 0.000847, 0.000084, 0.000097]),
    (30, [0.000698, 0.000705, 0.000047, 0.000054]),
];

/// Relative tolerance for the interpolation errors.
pub const INTERPOLATION_RTOL: f64 = 1e-2;

/// Three-variable family members with known coefficients.
pub const POLYNOMIALS: &[(Family, [i64; 3], &str)] = &[
    (Family::IPlus, [0, 0, 0], "6"),
    (Family::IPlus, [1, 0, 0], "X1"),
    (Family::IPlus, [1, 1, 0], "X2"),
    (Family::IPlus, [1, 1, 1], "X3"),
    (Family::IPlus, [2, 0, 0], "X1^2 - 4*X2 - 6"),
    (Family::IPlus, [2, 1, 0], "1/2*X1*X2 - X1 - X3"),
    (Family::IPlus, [2, 1, 1], "1/3*X1*X3 - X2"),
    (Family::IPlus, [2, 2, 0], "2*X2^2 - 4/3*X1*X3 - 2*X1^2 + 8*X2 + 6"),
    (Family::IPlus, [2, 2, 1], "2/3*X2*X3 - X1*X2 + 2*X3 + X1"),
    (Family::IPlus, [2, 2, 2], "4/3*X3^2 - 6*X2^2 + 4*X1*X3 + 3*X1^2 - 12*X2 - 6"),
    (Family::IPlus, [3, 3, 1], "4/3*X2^2*X3 - 8/9*X1*X3^2 - 2*X1^2*X3 + 8*X2*X3 + 9*X3"),
    (
        Family::IPlus,
        [3, 3, 3],
        "16/9*X3^3 - 12*X2^2*X3 + 8*X1*X3^2 + 9*X1^2*X3 - 36*X2*X3 - 27*X3",
    ),
    (Family::IMinus, [0, 0, 0], "1"),
    (Family::IMinus, [1, 0, 0], "X1"),
    (Family::IMinus, [1, 1, 0], "2*X2 + 3"),
    (Family::IMinus, [1, 1, 1], "2/3*X3 + X1"),
    (Family::IMinus, [2, 0, 0], "X1^2 - 2*X2 - 4"),
    (Family::IMinus, [2, 1, 0], "2*X1*X2 - 4/3*X3"),
    (Family::IMinus, [2, 1, 1], "2/3*X1*X3 + X1^2 - 2*X2 - 3"),
    (Family::IMinus, [2, 2, 0], "4*X2^2 - 4/3*X1*X3 - 3*X1^2 + 14*X2 + 12"),
    (Family::IMinus, [2, 2, 1], "4/3*X2*X3 + 8/3*X3 + X1"),
    (Family::IMinus, [2, 2, 2], "8/9*X3^2 - 4*X2^2 + 10/3*X1*X3 + 3*X1^2 - 12*X2 - 9"),
    (Family::IIIPlus, [0, 0, 0], "1"),
    (Family::IIIPlus, [1, 0, 0], "1/3*X1 - 1"),
    (Family::IIIPlus, [1, 1, 0], "2/3*X2 - 2/3*X1 + 1"),
    (Family::IIIPlus, [1, 1, 1], "4/3*X3 - 2*X2 + X1 - 1"),
    (Family::IIIPlus, [2, 0, 0], "1/3*X1^2 - 4/3*X2 - 1/3*X1 - 1"),
    (Family::IIIPlus, [2, 1, 0], "1/3*X1*X2 - 1/3*X1^2 - 2/3*X3 + 2/3*X2 + 1"),
    (
        Family::IIIPlus,
        [2, 1, 1],
        "4/9*X1*X3 - 2/3*X1*X2 + 1/3*X1^2 - 2/3*X2 + 1/3*X1 - 1",
    ),
    (
        Family::IIIPlus,
        [2, 2, 0],
        "4/3*X2^2 - 8/9*X1*X3 - 2/3*X1*X2 - 2/3*X1^2 + 4/3*X3 + 10/3*X2 + 2/3*X1 + 1",
    ),
    (
        Family::IIIPlus,
        [2, 2, 1],
        "8/9*X2*X3 - 4/3*X2^2 + 2/3*X1^2 + 4/3*X3 - 2*X2 - 1/3*X1 - 1",
    ),
    (
        Family::IIIPlus,
        [2, 2, 2],
        "16/9*X3^2 - 8/3*X2*X3 - 4*X2^2 + 4*X1*X3 + 2*X1*X2 + X1^2 - 16/3*X3 - 6*X2 - X1 - 1",
    ),
    (Family::IIIMinus, [0, 0, 0], "1"),
    (Family::IIIMinus, [1, 0, 0], "X1 - 1"),
    (Family::IIIMinus, [1, 1, 0], "2*X2 - X1 + 3"),
    (Family::IIIMinus, [1, 1, 1], "4/3*X3 - 2*X2 + 2*X1 - 3"),
    (Family::IIIMinus, [2, 0, 0], "X1^2 - 2*X2 - X1 - 3"),
    (Family::IIIMinus, [2, 1, 0], "2*X1*X2 - X1^2 - 4/3*X3 + X1 + 1"),
    (
        Family::IIIMinus,
        [2, 1, 1],
        "4/3*X1*X3 - 2*X1*X2 + 2*X1^2 - 2*X2 - 2*X1 - 3",
    ),
    (
        Family::IIIMinus,
        [2, 2, 0],
        "4*X2^2 - 4/3*X1*X3 - 2*X1*X2 - 2*X1^2 + 4/3*X3 + 12*X2 + 8",
    ),
    (
        Family::IIIMinus,
        [2, 2, 1],
        "8/3*X2*X3 - 4*X2^2 + 2*X1*X2 + X1^2 + 4*X3 - 10*X2 + 2*X1 - 6",
    ),
    (
        Family::IIIMinus,
        [2, 2, 2],
        "16/9*X3^2 - 8/3*X2*X3 - 4*X2^2 + 16/3*X1*X3 + 3*X1^2 - 16/3*X3 - 10*X2 - 2*X1 - 6",
    ),
];
