#![allow(dead_code)]

use num_bigint::BigInt;
use symcos::poly::{Family, RationalPolynomial};
use symcos::Rational;

/// A coefficient table: monomial columns and one row per label, blank cells
/// meaning zero.
pub struct GoldenTable {
    pub family: Family,
    pub columns: &'static [&'static str],
    pub rows: &'static [([i64; 3], &'static [&'static str])],
}

const EVEN_COLUMNS: &[&str] = &["1", "X2", "X1^2", "X1X3", "X2^2", "X3^2"];
const ODD_COLUMNS: &[&str] = &["X1", "X3", "X1X2", "X2X3"];
const FULL_COLUMNS: &[&str] = &["1", "X1", "X2", "X3", "X1^2", "X1X2", "X1X3", "X2^2", "X2X3", "X3^2"];

pub const GOLDEN: &[GoldenTable] = &[
    GoldenTable {
        family: Family::IPlus,
        columns: EVEN_COLUMNS,
        rows: &[
            ([0, 0, 0], &["6"]),
            ([1, 1, 0], &["0", "1"]),
            ([2, 0, 0], &["-6", "-4", "1"]),
            ([2, 1, 1], &["0", "-1", "0", "1/3"]),
            ([2, 2, 0], &["6", "8", "-2", "-4/3", "2"]),
            ([2, 2, 2], &["-6", "-12", "3", "4", "-6", "4/3"]),
        ],
    },
    GoldenTable {
        family: Family::IMinus,
        columns: EVEN_COLUMNS,
        rows: &[
            ([0, 0, 0], &["1"]),
            ([1, 1, 0], &["3", "2"]),
            ([2, 0, 0], &["-4", "-2", "1"]),
            ([2, 1, 1], &["-3", "-2", "1", "2/3"]),
            ([2, 2, 0], &["12", "14", "-3", "-4/3", "4"]),
            ([2, 2, 2], &["-9", "-12", "3", "10/3", "-4", "8/9"]),
        ],
    },
    GoldenTable {
        family: Family::IPlus,
        columns: ODD_COLUMNS,
        rows: &[
            ([1, 0, 0], &["1"]),
            ([1, 1, 1], &["0", "1"]),
            ([2, 1, 0], &["-1", "-1", "1/2"]),
            ([2, 2, 1], &["1", "2", "-1", "2/3"]),
        ],
    },
    GoldenTable {
        family: Family::IMinus,
        columns: ODD_COLUMNS,
        rows: &[
            ([1, 0, 0], &["1"]),
            ([1, 1, 1], &["1", "2/3"]),
            ([2, 1, 0], &["0", "-4/3", "2"]),
            ([2, 2, 1], &["1", "8/3", "0", "4/3"]),
        ],
    },
    GoldenTable {
        family: Family::IIIPlus,
        columns: FULL_COLUMNS,
        rows: &[
            ([0, 0, 0], &["1"]),
            ([1, 0, 0], &["-1", "1/3"]),
            ([1, 1, 0], &["1", "-2/3", "2/3"]),
            ([1, 1, 1], &["-1", "1", "-2", "4/3"]),
            ([2, 0, 0], &["-1", "-1/3", "-4/3", "0", "1/3"]),
            ([2, 1, 0], &["1", "0", "2/3", "-2/3", "-1/3", "1/3"]),
            ([2, 1, 1], &["-1", "1/3", "-2/3", "0", "1/3", "-2/3", "4/9"]),
            ([2, 2, 0], &["1", "2/3", "10/3", "4/3", "-2/3", "-2/3", "-8/9", "4/3"]),
            ([2, 2, 1], &["-1", "-1/3", "-2", "4/3", "2/3", "0", "0", "-4/3", "8/9"]),
            ([2, 2, 2], &["-1", "-1", "-6", "-16/3", "1", "2", "4", "-4", "-8/3", "16/9"]),
        ],
    },
    GoldenTable {
        family: Family::IIIMinus,
        columns: FULL_COLUMNS,
        rows: &[
            ([0, 0, 0], &["1"]),
            ([1, 0, 0], &["-1", "1"]),
            ([1, 1, 0], &["3", "-1", "2"]),
            ([1, 1, 1], &["-3", "2", "-2", "4/3"]),
            ([2, 0, 0], &["-3", "-1", "-2", "0", "1"]),
            ([2, 1, 0], &["1", "1", "0", "-4/3", "-1", "2"]),
            ([2, 1, 1], &["-3", "-2", "-2", "0", "2", "-2", "4/3"]),
            ([2, 2, 0], &["8", "0", "12", "4/3", "-2", "-2", "-4/3", "4"]),
            ([2, 2, 1], &["-6", "2", "-10", "4", "1", "2", "0", "-4", "8/3"]),
            ([2, 2, 2], &["-6", "-2", "-10", "-16/3", "3", "0", "16/3", "-4", "-8/3", "16/9"]),
        ],
    },
];

/// Further `I+` members written out as polynomials.
pub const EXTRA_I_PLUS: &[([i64; 3], &str)] = &[
    ([2, 2, 0], "2*X2^2 - 2*X1^2 - 4/3*X1*X3 + 8*X2 + 6"),
    ([2, 2, 1], "2/3*X2*X3 - X1*X2 + 2*X3 + X1"),
    ([2, 2, 2], "4/3*X3^2 - 6*X2^2 + 3*X1^2 + 4*X1*X3 - 12*X2 - 6"),
    ([3, 3, 1], "4/3*X2^2*X3 - 8/9*X1*X3^2 - 2*X1^2*X3 + 8*X2*X3 + 9*X3"),
    ([3, 3, 3], "16/9*X3^3 - 12*X2^2*X3 + 8*X1*X3^2 + 9*X1^2*X3 - 36*X2*X3 - 27*X3"),
];

/// A variant of the `(2,2,2)` expression with an `X1*X2` cross term in place
/// of `X1*X3`.
pub const I_PLUS_222_WITH_X1X2: &str = "4/3*X3^2 - 6*X2^2 + 3*X1^2 + 4*X1*X2 - 12*X2 - 6";

/// Reference integral errors of the bump interpolation: columns
/// `(V, anti)`, `(VII, anti)`, `(V, sym)`, `(VII, sym)`.
pub const TABLE_ERRORS: [(usize, [f64; 4]); 6] = [
    (5, [0.648691, 1.396870, 0.725031, 1.502161]),
    (10, [0.007940, 0.007599, 0.007191, 0.006471]),
    (15, [0.001350, 0.001407, 0.000440, 0.000492]),
    (20, [0.001034, 0.001058, 0.000171, 0.000195]),
    (25, [0.000835, 0.000847, 0.000084, 0.000097]),
    (30, [0.000698, 0.000705, 0.000047, 0.000054]),
];

pub fn parse_rational(text: &str) -> Rational {
    match text.split_once('/') {
        Some((p, q)) => Rational::new(p.parse::<BigInt>().unwrap(), q.parse::<BigInt>().unwrap()),
        None => Rational::from_integer(text.parse::<BigInt>().unwrap()),
    }
}

/// Exponents of a column name such as `X1X3` or `X2^2`.
pub fn column_alpha(name: &str) -> Vec<u32> {
    let mut alpha = vec![0u32; 3];
    if name == "1" {
        return alpha;
    }
    for factor in name.split('X').filter(|s| !s.is_empty()) {
        let (var, power) = factor.split_once('^').unwrap_or((factor, "1"));
        alpha[var.parse::<usize>().unwrap() - 1] += power.parse::<u32>().unwrap();
    }
    alpha
}

impl GoldenTable {
    pub fn polynomials(&self) -> Vec<([i64; 3], RationalPolynomial)> {
        self.rows
            .iter()
            .map(|(k, cells)| {
                let terms = self
                    .columns
                    .iter()
                    .zip(cells.iter())
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(col, c)| (column_alpha(col), parse_rational(c)));
                (*k, RationalPolynomial::from_terms(3, terms).unwrap())
            })
            .collect()
    }
}

/// Points of the open fundamental domain `1 > x₁ > … > xₙ > 0`.
pub fn domain_point(rng: &mut impl rand::Rng, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    x.sort_by(|a, b| b.total_cmp(a));
    x
}
