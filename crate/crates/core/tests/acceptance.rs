//! One line per acceptance criterion; exits non-zero if any fails.
//!
//! Set `SYMCOS_LONG=1` to include the N = 20, 25, 30 interpolation errors.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use symcos::cubature::{build_rule, exact_integral, is_gaussian, node_vanishing_check, pairings};
use symcos::grids::{point_grid, spectral_norm, DctType, TransformKind};
use symcos::kernels::{eval_cos, eval_special_product, SpecialProduct, Symmetry};
use symcos::poly::{
    family_polynomial, jacobian_eval, phi_map, weight_polynomial, Family, RationalPolynomial,
    WeightKind,
};
use symcos::symmetry::Label;
use symcos::transforms::{inverse, interpolation_error, GaussianBump, QuadratureConfig, SampleSet, Transform};
use symcos::Rational;

use common::{domain_point, parse_rational, EXTRA_I_PLUS, GOLDEN, I_PLUS_222_WITH_X1X2, TABLE_ERRORS};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn golden_tables() -> Verdict {
    let start = Instant::now();
    let mut coefficients = 0;
    let mut mismatches = Vec::new();
    for table in GOLDEN {
        for (k, expected) in table.polynomials() {
            let computed = family_polynomial(table.family, &Label::integer(&k)).unwrap();
            coefficients += table.columns.len();
            if *computed != expected {
                mismatches.push(format!("{} {k:?}", table.family));
            }
        }
    }
    for (k, text) in EXTRA_I_PLUS {
        let expected = RationalPolynomial::parse(text, 3).unwrap();
        let computed = family_polynomial(Family::IPlus, &Label::integer(k)).unwrap();
        coefficients += expected.len();
        if *computed != expected {
            mismatches.push(format!("I+ {k:?} (explicit)"));
        }
    }
    // The variant with an X1*X2 term disagrees with the cosine function it
    // is supposed to represent; the X1*X3 form is the one that holds.
    let variant = RationalPolynomial::parse(I_PLUS_222_WITH_X1X2, 3).unwrap();
    let x = [0.71, 0.43, 0.12];
    let direct = eval_cos(Symmetry::Sym, &Label::integer(&[2, 2, 2]), &x).unwrap();
    let variant_gap = (variant.eval(&phi_map(&x)).unwrap() - direct).abs();
    let elapsed = start.elapsed().as_secs_f64();
    let passed = mismatches.is_empty() && variant_gap > 1e-3 && elapsed < 5.0;
    verdict(
        passed,
        format!(
            "{coefficients} table coefficients and 5 explicit I+ members exact{}; \
             (2,2,2) variant with 4*X1*X2 off by {variant_gap:.3} from cos+_(2,2,2), the 4*X1*X3 form holds; {elapsed:.2}s",
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(", mismatches: {}", mismatches.join(", "))
            }
        ),
    )
}

fn table_one() -> Verdict {
    let long = std::env::var_os("SYMCOS_LONG").is_some_and(|v| v != "0");
    let bump = GaussianBump::reference();
    // The reference "VII" columns are reproduced by the transform with
    // integer labels on the grid 2(r+1/2)/(2N-1).
    let columns = [
        ("V-", TransformKind::new(DctType::V, Symmetry::Anti)),
        ("VII-", TransformKind::new(DctType::VI, Symmetry::Anti)),
        ("V+", TransformKind::new(DctType::V, Symmetry::Sym)),
        ("VII+", TransformKind::new(DctType::VI, Symmetry::Sym)),
    ];
    let cases: Vec<(usize, usize, f64)> = TABLE_ERRORS
        .iter()
        .filter(|(n, _)| *n <= 15 || long)
        .flat_map(|(n, row)| (0..4).map(move |c| (*n, c, row[c])))
        .collect();
    let results: Vec<(usize, usize, f64, f64)> = cases
        .par_iter()
        .map(|&(big_n, c, reference)| {
            let quad = QuadratureConfig {
                points_per_axis: if big_n <= 15 { 48 } else { 96 },
                ..QuadratureConfig::default()
            };
            let e = interpolation_error(columns[c].1, big_n, 3, |x| bump.eval(x), &quad).unwrap();
            (big_n, c, reference, (e - reference).abs() / reference)
        })
        .collect();
    let failures: Vec<String> = results
        .iter()
        .filter(|r| r.3 > 1e-2)
        .map(|(n, c, p, rel)| format!("N={n} {} reference {p} rel {rel:.2e}", columns[*c].0))
        .collect();
    let worst = results.iter().map(|r| r.3).fold(0.0, f64::max);
    verdict(
        failures.is_empty(),
        format!(
            "{} of {} values within 1e-2 (worst rel {worst:.2e}){}; VII columns via (VI, ±){}",
            results.len() - failures.len(),
            results.len(),
            if long { ", N >= 20 at 96 points/axis" } else { ", N <= 15 only (SYMCOS_LONG=1 for N >= 20)" },
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

/// `c_m` of the one-dimensional transforms: 1/2 at `m = 0` and `m = N`.
fn c(m: i64, big_n: usize) -> f64 {
    if m == 0 || m == big_n as i64 {
        0.5
    } else {
        1.0
    }
}

/// Weight of grid point `r`, recomputed from the one-dimensional
/// transforms and the size of the point's stabilizer.
fn oracle_weight(kind: TransformKind, r: &[i64], big_n: usize) -> f64 {
    let per_axis: f64 = match kind.dct {
        DctType::I | DctType::III | DctType::V | DctType::VII => r.iter().map(|&m| c(m, big_n)).product(),
        DctType::VI => r.iter().map(|&m| c(m + 1, big_n)).product(),
        DctType::II | DctType::IV | DctType::VIII => 1.0,
    };
    match kind.symmetry {
        Symmetry::Anti => per_axis,
        Symmetry::Sym => {
            let mut stabilizer = 1.0;
            let mut run = 1.0;
            for i in 1..r.len() {
                if r[i] == r[i - 1] {
                    run += 1.0;
                    stabilizer *= run;
                } else {
                    run = 1.0;
                }
            }
            per_axis / stabilizer
        }
    }
}

fn sweep() -> Vec<(TransformKind, usize, usize)> {
    let mut cells = Vec::new();
    for kind in TransformKind::all() {
        for n in 1..=3 {
            for big_n in 2..=6 {
                if kind.symmetry == Symmetry::Anti && big_n < n + 1 {
                    continue;
                }
                cells.push((kind, n, big_n));
            }
        }
    }
    cells
}

fn discrete_orthogonality() -> Verdict {
    let start = Instant::now();
    let cells = sweep();
    let worst: Vec<(f64, f64)> = cells
        .par_iter()
        .map(|&(kind, n, big_n)| {
            let grid = point_grid(kind, big_n, n);
            let points = grid.points_f64();
            let weights: Vec<f64> = grid.entries.iter().map(|e| oracle_weight(kind, &e.r, big_n)).collect();
            let basis: Vec<Vec<f64>> = grid
                .labels
                .iter()
                .map(|l| points.iter().map(|x| eval_cos(kind.symmetry, &l.k, x).unwrap()).collect())
                .collect();
            let norms: Vec<f64> = grid
                .labels
                .iter()
                .map(|l| spectral_norm(kind, &l.k, big_n).unwrap().to_f64().unwrap())
                .collect();
            let scale = norms.iter().cloned().fold(0.0, f64::max);
            let (mut off, mut diag) = (0.0f64, 0.0f64);
            for (a, ba) in basis.iter().enumerate() {
                for (b, bb) in basis.iter().enumerate() {
                    let g: f64 = (0..weights.len()).map(|s| weights[s] * ba[s] * bb[s]).sum();
                    if a == b {
                        diag = diag.max((g - norms[a]).abs() / norms[a]);
                    } else {
                        off = off.max(g.abs() / scale);
                    }
                }
            }
            (off, diag)
        })
        .collect();
    let off = worst.iter().map(|w| w.0).fold(0.0, f64::max);
    let diag = worst.iter().map(|w| w.1).fold(0.0, f64::max);
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        off <= 1e-10 && diag <= 1e-10 && elapsed < 60.0,
        format!(
            "{} cells, off-diagonal {off:.1e} x scale, diagonal vs spectral norm rel {diag:.1e}; {elapsed:.1}s",
            cells.len()
        ),
    )
}

fn round_trip() -> Verdict {
    let cells = sweep();
    let worst = cells
        .par_iter()
        .enumerate()
        .map(|(i, &(kind, n, big_n))| {
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let t = Transform::new(kind, big_n, n);
            let values: Vec<f64> = (0..t.grid().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let spectrum = t.forward(&SampleSet::new(kind, big_n, n, values.clone()).unwrap()).unwrap();
            t.grid()
                .points_f64()
                .iter()
                .zip(&values)
                .map(|(x, v)| (inverse(&spectrum, x).unwrap() - v).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    verdict(worst <= 1e-10, format!("{} cells, max |inverse(forward(f)) - f| = {worst:.1e}", cells.len()))
}

fn random_polynomial(rng: &mut impl Rng, n: usize, degree: u32) -> RationalPolynomial {
    let mut terms = Vec::new();
    let mut alpha = vec![0u32; n];
    'outer: loop {
        if alpha.iter().sum::<u32>() <= degree {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            terms.push((alpha.clone(), Rational::new(num.into(), den.into())));
        }
        for a in alpha.iter_mut() {
            *a += 1;
            if *a <= degree {
                continue 'outer;
            }
            *a = 0;
        }
        break;
    }
    RationalPolynomial::from_terms(n, terms).unwrap()
}

fn cubature_cells() -> Vec<(Family, TransformKind, usize, usize)> {
    let mut cells = Vec::new();
    for (family, kind) in pairings() {
        for n in 2..=3 {
            for big_n in (n + 1).max(2)..=6 {
                cells.push((family, kind, n, big_n));
            }
        }
    }
    cells
}

fn cubature_exactness() -> Verdict {
    let start = Instant::now();
    let cells = cubature_cells();
    let worst = cells
        .par_iter()
        .enumerate()
        .map(|(i, &(family, kind, n, big_n))| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
            let rule = build_rule(family, kind, big_n, n).unwrap();
            (0..50)
                .map(|_| {
                    let p = random_polynomial(&mut rng, n, rule.exact_degree);
                    let exact = exact_integral(family, &p).to_f64().unwrap();
                    (rule.integrate(&p).unwrap() - exact).abs() / (1.0 + exact.abs())
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        worst <= 1e-9 && elapsed < 300.0,
        format!(
            "{} cells x 50 polynomials, worst |rule - exact| / (1 + |exact|) = {worst:.1e}; {elapsed:.1}s",
            cells.len()
        ),
    )
}

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn node_vanishing() -> Verdict {
    let cells: Vec<_> = cubature_cells()
        .into_iter()
        .filter(|&(f, k, _, _)| is_gaussian(f, k))
        .collect();
    let worst = cells
        .par_iter()
        .map(|&(f, k, n, big_n)| node_vanishing_check(f, k, big_n, n).unwrap())
        .reduce(|| 0.0, f64::max);
    let mut count_mismatch = Vec::new();
    for n in 2..=3 {
        for big_n in n + 1..=6 {
            let kind = TransformKind::new(DctType::II, Symmetry::Sym);
            let nodes = build_rule(Family::IPlus, kind, big_n, n).unwrap().nodes.len();
            if nodes != binomial(big_n - 1 + n, n) {
                count_mismatch.push(format!("n={n} N={big_n}: {nodes}"));
            }
        }
    }
    verdict(
        worst <= 1e-9 && count_mismatch.is_empty(),
        format!(
            "{} cells, max |P_k(node)| = {worst:.1e}; (I+, II) node counts {}",
            cells.len(),
            if count_mismatch.is_empty() {
                "equal C(N-1+n, n)".to_string()
            } else {
                count_mismatch.join(", ")
            }
        ),
    )
}

/// `A_k` of the one-dimensional DCT V-VIII written out directly.
fn classical_dct(dct: DctType, big_n: usize, f: &[f64]) -> Vec<f64> {
    let nn = big_n as f64;
    let m = big_n as i64;
    (0..m)
        .map(|k| {
            let kf = k as f64;
            let terms = (0..m).map(|r| {
                let rf = r as f64;
                match dct {
                    DctType::V => c(r, big_n) * f[r as usize] * (2.0 * PI * kf * rf / (2.0 * nn - 1.0)).cos(),
                    DctType::VI => {
                        c(r + 1, big_n) * f[r as usize] * (2.0 * PI * kf * (rf + 0.5) / (2.0 * nn - 1.0)).cos()
                    }
                    DctType::VII => {
                        c(r, big_n) * f[r as usize] * (2.0 * PI * (kf + 0.5) * rf / (2.0 * nn - 1.0)).cos()
                    }
                    _ => f[r as usize] * (2.0 * PI * (kf + 0.5) * (rf + 0.5) / (2.0 * nn + 1.0)).cos(),
                }
            });
            let sum: f64 = terms.sum();
            match dct {
                DctType::V | DctType::VI => 4.0 * c(k, big_n) / (2.0 * nn - 1.0) * sum,
                DctType::VII => 4.0 * c(k + 1, big_n) / (2.0 * nn - 1.0) * sum,
                _ => 4.0 / (2.0 * nn + 1.0) * sum,
            }
        })
        .collect()
}

fn one_dimensional() -> Verdict {
    let mut chebyshev: f64 = 0.0;
    for big_n in 1..=12 {
        let rule = build_rule(Family::IPlus, TransformKind::new(DctType::II, Symmetry::Sym), big_n, 1).unwrap();
        let mut nodes: Vec<(f64, f64)> = rule.nodes.iter().map(|nd| (nd.y[0], nd.weight)).collect();
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Gauss-Chebyshev for dy / (π sqrt(1 - y²)): nodes cos((2i-1)π/2N), weights 1/N
        let mut textbook: Vec<(f64, f64)> = (1..=big_n)
            .map(|i| (((2 * i - 1) as f64 * PI / (2 * big_n) as f64).cos(), (PI / big_n as f64) / PI))
            .collect();
        textbook.sort_by(|a, b| a.0.total_cmp(&b.0));
        if nodes.len() != textbook.len() {
            return verdict(false, format!("N={big_n}: {} nodes", nodes.len()));
        }
        for (a, b) in nodes.iter().zip(&textbook) {
            chebyshev = chebyshev.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut dct: f64 = 0.0;
    for d in [DctType::V, DctType::VI, DctType::VII, DctType::VIII] {
        for symmetry in [Symmetry::Sym, Symmetry::Anti] {
            for big_n in 1..=12 {
                let kind = TransformKind::new(d, symmetry);
                let t = Transform::new(kind, big_n, 1);
                let mut f = vec![0.0; big_n];
                for e in &t.grid().entries {
                    f[e.r[0] as usize] = rng.gen_range(-1.0..1.0);
                }
                let values: Vec<f64> = t.grid().entries.iter().map(|e| f[e.r[0] as usize]).collect();
                let spectrum = t.forward(&SampleSet::new(kind, big_n, 1, values).unwrap()).unwrap();
                let expected = classical_dct(d, big_n, &f);
                for (label, a) in spectrum.labels.iter().zip(&spectrum.coefficients) {
                    let k = label.unshifted().integer_components().unwrap()[0] as usize;
                    dct = dct.max((a - expected[k]).abs());
                }
            }
        }
    }
    verdict(
        chebyshev <= 1e-12 && dct <= 1e-12,
        format!("Gauss-Chebyshev nodes/weights {chebyshev:.1e}; DCT V-VIII coefficients {dct:.1e}"),
    )
}

fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (v, p) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *v -= factor * p;
            }
        }
    }
    det
}

fn poly(text: &str) -> RationalPolynomial {
    RationalPolynomial::parse(text, 3).unwrap()
}

fn analytic_consistency() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut product: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..2.0)).collect();
            for which in [SpecialProduct::Rho1Anti, SpecialProduct::Rho2Anti, SpecialProduct::RhoSym] {
                let direct = eval_cos(which.symmetry(), &which.label(n), &x).unwrap();
                product = product.max((eval_special_product(which, &x) - direct).abs());
            }
        }
    }
    let mut jacobian: f64 = 0.0;
    let h = 1e-6;
    for n in 1..=4 {
        for _ in 0..20 {
            let x = domain_point(&mut rng, n);
            let columns: Vec<Vec<f64>> = (0..n)
                .map(|j| {
                    let mut up = x.clone();
                    let mut down = x.clone();
                    up[j] += h;
                    down[j] -= h;
                    let (a, b) = (phi_map(&up), phi_map(&down));
                    (0..n).map(|i| (a[i] - b[i]) / (2.0 * h)).collect()
                })
                .collect();
            let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| columns[j][i]).collect()).collect();
            let fd = determinant(rows);
            let closed = jacobian_eval(&x);
            jacobian = jacobian.max((closed - fd).abs() / fd.abs().max(1e-300));
        }
    }
    let a = poly("-8*X2^3 + X1^2*X2^2 - 12*X3^2 + 12*X1*X2*X3 - 4/3*X1^3*X3");
    let b = poly("X3 + 3*X2 + 3*X1 + 6");
    let sine_factor = &poly("3*X2 + 6").pow(2) - &poly("X3 + 3*X1").pow(2);
    let j_i_minus = a.scale(&parse_rational("1/4"));
    let j_iii_plus = b.scale(&parse_rational("3/4"));
    // For n = 3, cos-_ρ₂ = (2/3) cos-_ρ₁ cos+_ρ, so the third weight is
    // (4/9) times the product of the other two: A·B/12. The alternative constant
    // 1/8 is checked against direct evaluation below.
    let j_iii_minus = (&a * &b).scale(&parse_rational("1/12"));
    let expected = [
        (WeightKind::PIPlus, &a * &sine_factor, 6),
        (WeightKind::JIMinus, j_i_minus.clone(), 0),
        (WeightKind::JIIIPlus, j_iii_plus.clone(), 0),
        (WeightKind::JIIIMinus, j_iii_minus.clone(), 0),
    ];
    let mut weight_mismatch = Vec::new();
    for (which, poly, pi_power) in expected {
        let w = weight_polynomial(which, 3).unwrap();
        if w.poly != poly || w.pi_power != pi_power {
            weight_mismatch.push(format!("{which:?}"));
        }
    }
    if (&j_i_minus * &j_iii_plus).scale(&parse_rational("4/9")) != j_iii_minus {
        weight_mismatch.push("product relation".into());
    }
    let x = [0.7, 0.4, 0.1];
    let seed = eval_cos(Symmetry::Anti, &Label::rho2(3), &x).unwrap();
    let alternative = (&a * &b).scale(&parse_rational("1/8")).eval(&phi_map(&x)).unwrap();
    let alternative_ratio = alternative / (seed * seed);
    verdict(
        product <= 1e-12 && jacobian <= 1e-6 && weight_mismatch.is_empty() && (alternative_ratio - 1.5).abs() < 1e-9,
        format!(
            "product forms {product:.1e}; Jacobian vs finite differences rel {jacobian:.1e}; n=3 weight polynomials {}; \
             J(III,-) constant is 1/12 (the alternative 1/8 gives {alternative_ratio:.6} x (cos-_rho2)^2)",
            if weight_mismatch.is_empty() {
                "exact".to_string()
            } else {
                format!("differ: {}", weight_mismatch.join(", "))
            }
        ),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 8] = [
        ("golden polynomial tables", golden_tables),
        ("interpolation error table", table_one),
        ("discrete orthogonality", discrete_orthogonality),
        ("round trip", round_trip),
        ("cubature exactness", cubature_exactness),
        ("Gaussian node vanishing", node_vanishing),
        ("one-dimensional reductions", one_dimensional),
        ("analytic consistency", analytic_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.passed);
        println!("{} criterion {}: {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
