//! Evaluation of the antisymmetric (`cos⁻`) and symmetric (`cos⁺`)
//! multivariate cosine functions.
//!
//! `cos±_λ(x) = Σ_{σ∈S_n} (sgn σ)^{0|1} Π_i cos(π λ_{σ(i)} x_i)`, i.e. the
//! determinant and the permanent of the matrix `cos(π λ_i x_j)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::Label;

/// Largest dimension supported by the enumerating kernels.
pub const MAX_DIM: usize = 8;

/// Dimension from which the determinant is evaluated by LU factorization.
pub const LU_THRESHOLD: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Sym,
    Anti,
}

#[derive(Debug, Clone)]
pub struct Permutation {
    pub map: Vec<usize>,
    pub sign: i8,
}

fn build_permutations(n: usize) -> Vec<Permutation> {
    // Heap's algorithm; every step is a single transposition.
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i8;
    out.push(Permutation {
        map: a.clone(),
        sign,
    });
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push(Permutation {
                map: a.clone(),
                sign,
            });
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// All `n!` permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> &'static [Permutation] {
    static TABLES: [OnceLock<Vec<Permutation>>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
    assert!(n <= MAX_DIM, "dimension {n} exceeds the supported maximum {MAX_DIM}");
    TABLES[n].get_or_init(|| build_permutations(n))
}

fn check_dims(label: &Label, x: &[f64]) -> Result<()> {
    if label.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: label.dim(),
            got: x.len(),
        });
    }
    if x.len() > MAX_DIM {
        return Err(Error::Invalid(format!(
            "dimension {} exceeds the supported maximum {MAX_DIM}",
            x.len()
        )));
    }
    Ok(())
}

/// Row-major `a[i][j] = cos(π λ_i x_j)`.
fn cosine_matrix(lambda: &[f64], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = Vec::with_capacity(n * n);
    for &l in lambda {
        for &xj in x {
            m.push((PI * l * xj).cos());
        }
    }
    m
}

fn enumerate(matrix: &[f64], n: usize, signed: bool) -> f64 {
    permutations(n)
        .iter()
        .map(|p| {
            let prod: f64 = (0..n).map(|j| matrix[p.map[j] * n + j]).product();
            if signed {
                f64::from(p.sign) * prod
            } else {
                prod
            }
        })
        .sum()
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap_or(col);
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for i in (col + 1)..n {
            let factor = a[i * n + col] / p;
            if factor != 0.0 {
                for j in col..n {
                    a[i * n + j] -= factor * a[col * n + j];
                }
            }
        }
    }
    det
}

/// Symmetric cosine function `cos⁺_λ(x)`.
pub fn eval_cos_sym(label: &Label, x: &[f64]) -> Result<f64> {
    check_dims(label, x)?;
    Ok(enumerate(&cosine_matrix(&label.values(), x), x.len(), false))
}

/// Antisymmetric cosine function `cos⁻_λ(x)`.
pub fn eval_cos_anti(label: &Label, x: &[f64]) -> Result<f64> {
    check_dims(label, x)?;
    let n = x.len();
    let m = cosine_matrix(&label.values(), x);
    Ok(if n >= LU_THRESHOLD {
        determinant(m, n)
    } else {
        enumerate(&m, n, true)
    })
}

/// `cos⁻_λ(x)` by explicit enumeration of `S_n`, regardless of dimension.
pub fn eval_cos_anti_enumerated(label: &Label, x: &[f64]) -> Result<f64> {
    check_dims(label, x)?;
    Ok(enumerate(&cosine_matrix(&label.values(), x), x.len(), true))
}

/// `cos⁻_λ(x)` through the LU determinant, regardless of dimension.
pub fn eval_cos_anti_lu(label: &Label, x: &[f64]) -> Result<f64> {
    check_dims(label, x)?;
    Ok(determinant(cosine_matrix(&label.values(), x), x.len()))
}

pub fn eval_cos(symmetry: Symmetry, label: &Label, x: &[f64]) -> Result<f64> {
    match symmetry {
        Symmetry::Sym => eval_cos_sym(label, x),
        Symmetry::Anti => eval_cos_anti(label, x),
    }
}

/// Cached `cos(π (h/2) x_j)` for one point, used to evaluate many labels at
/// the same point.
#[derive(Debug, Clone)]
pub struct CosineTable {
    n: usize,
    width: usize,
    values: Vec<f64>,
}

impl CosineTable {
    /// Table for label components with `|2 λ_i| ≤ max_halves`.
    pub fn new(x: &[f64], max_halves: usize) -> CosineTable {
        let width = max_halves + 1;
        let mut values = Vec::with_capacity(x.len() * width);
        for &xj in x {
            for h in 0..width {
                values.push((PI * 0.5 * h as f64 * xj).cos());
            }
        }
        CosineTable {
            n: x.len(),
            width,
            values,
        }
    }

    #[inline]
    fn entry(&self, coord: usize, halves: i64) -> f64 {
        self.values[coord * self.width + halves.unsigned_abs() as usize]
    }

    /// `cos±_λ` at the tabulated point, `λ` given in half units.
    pub fn eval(&self, symmetry: Symmetry, halves: &[i64]) -> f64 {
        let n = self.n;
        debug_assert_eq!(halves.len(), n);
        let mut acc = 0.0;
        for p in permutations(n) {
            let mut prod = 1.0;
            for j in 0..n {
                prod *= self.entry(j, halves[p.map[j]]);
            }
            acc += match symmetry {
                Symmetry::Sym => prod,
                Symmetry::Anti => f64::from(p.sign) * prod,
            };
        }
        acc
    }
}

/// The three functions with closed product forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialProduct {
    /// `cos⁻_{ρ₁}`, `ρ₁ = (n-1, ..., 1, 0)`.
    Rho1Anti,
    /// `cos⁻_{ρ₂}`, `ρ₂ = (n-1/2, ..., 1/2)`.
    Rho2Anti,
    /// `cos⁺_ρ`, `ρ = (1/2, ..., 1/2)`.
    RhoSym,
}

impl SpecialProduct {
    pub fn label(self, n: usize) -> Label {
        match self {
            SpecialProduct::Rho1Anti => Label::rho1(n),
            SpecialProduct::Rho2Anti => Label::rho2(n),
            SpecialProduct::RhoSym => Label::rho(n),
        }
    }

    pub fn symmetry(self) -> Symmetry {
        match self {
            SpecialProduct::RhoSym => Symmetry::Sym,
            _ => Symmetry::Anti,
        }
    }
}

fn pair_sine_product(x: &[f64]) -> f64 {
    let mut prod = 1.0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            prod *= (0.5 * PI * (x[i] + x[j])).sin() * (0.5 * PI * (x[i] - x[j])).sin();
        }
    }
    prod
}

fn half_cosine_product(x: &[f64]) -> f64 {
    x.iter().map(|&xi| (0.5 * PI * xi).cos()).product()
}

/// Closed product form of `cos⁻_{ρ₁}`, `cos⁻_{ρ₂}` or `cos⁺_ρ`.
pub fn eval_special_product(which: SpecialProduct, x: &[f64]) -> f64 {
    let n = x.len() as i32;
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    match which {
        SpecialProduct::Rho1Anti => sign * 2f64.powi((n - 1) * (n - 1)) * pair_sine_product(x),
        SpecialProduct::Rho2Anti => {
            sign * 2f64.powi(n * (n - 1)) * half_cosine_product(x) * pair_sine_product(x)
        }
        SpecialProduct::RhoSym => {
            let fact: f64 = (1..=n).map(f64::from).product();
            fact * half_cosine_product(x)
        }
    }
}

/// Folds an arbitrary point into the closed fundamental domain
/// `1 ≥ x_1 ≥ ... ≥ x_n ≥ 0`: reduce modulo 2, flip signs, sort.
pub fn fundamental_fold(x: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = x
        .iter()
        .map(|&v| {
            let r = v - 2.0 * (v / 2.0).round();
            r.abs().min(1.0)
        })
        .collect();
    out.sort_unstable_by(|a, b| b.total_cmp(a));
    out
}

/// Membership in the closed fundamental domain, up to `tol`.
pub fn in_fundamental_domain(x: &[f64], tol: f64) -> bool {
    x.first().is_none_or(|&x1| x1 <= 1.0 + tol)
        && x.last().is_none_or(|&xn| xn >= -tol)
        && x.windows(2).all(|w| w[0] >= w[1] - tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Shift;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn permutation_tables() {
        for n in 0..=6 {
            let perms = permutations(n);
            let expected: usize = (1..=n).product();
            assert_eq!(perms.len(), expected);
            let even = perms.iter().filter(|p| p.sign == 1).count();
            if n >= 2 {
                assert_eq!(even * 2, expected);
            }
        }
    }

    #[test]
    fn symmetric_examples() {
        let zero = Label::integer(&[0, 0, 0]);
        assert!((eval_cos_sym(&zero, &[0.3, 0.2, 0.1]).unwrap() - 6.0).abs() < TOL);
        let (x1, x2) = (0.37, 0.21);
        let v = eval_cos_sym(&Label::integer(&[1, 0]), &[x1, x2]).unwrap();
        assert!((v - ((PI * x1).cos() + (PI * x2).cos())).abs() < TOL);
        let v = eval_cos_sym(&Label::integer(&[3]), &[0.4]).unwrap();
        assert!((v - (3.0 * PI * 0.4).cos()).abs() < TOL);
    }

    #[test]
    fn antisymmetric_examples() {
        let v = eval_cos_anti(&Label::integer(&[1, 1, 0]), &[0.9, 0.4, 0.2]).unwrap();
        assert!(v.abs() < TOL);
        let (x1, x2) = (0.37, 0.21);
        let v = eval_cos_anti(&Label::integer(&[1, 0]), &[x1, x2]).unwrap();
        assert!((v - ((PI * x1).cos() - (PI * x2).cos())).abs() < TOL);
        let half = Label::from_halves(vec![3, 1], Shift::Rho).unwrap();
        assert!(eval_cos_anti(&half, &[1.0, 0.3]).unwrap().abs() < TOL);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert_eq!(
            eval_cos_sym(&Label::integer(&[1, 0]), &[0.1, 0.2, 0.3]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn special_product_examples() {
        assert!((eval_special_product(SpecialProduct::RhoSym, &[0.0; 3]) - 6.0).abs() < TOL);
        let x = [0.7, 0.25];
        let expected = -2.0 * (0.5 * PI * (x[0] + x[1])).sin() * (0.5 * PI * (x[0] - x[1])).sin();
        assert!((eval_special_product(SpecialProduct::Rho1Anti, &x) - expected).abs() < TOL);
        let direct = eval_cos_anti(&Label::integer(&[1, 0]), &x).unwrap();
        assert!((direct - expected).abs() < TOL);
        assert!(eval_special_product(SpecialProduct::Rho2Anti, &[0.8, 0.5, 0.1]).abs() > 1e-3);
    }

    #[test]
    fn fold_examples() {
        assert!((fundamental_fold(&[-0.3])[0] - 0.3).abs() < TOL);
        assert!((fundamental_fold(&[1.7])[0] - 0.3).abs() < TOL);
        let f = fundamental_fold(&[0.2, 0.5]);
        assert!((f[0] - 0.5).abs() < TOL && (f[1] - 0.2).abs() < TOL);
    }

    #[test]
    fn lu_and_enumeration_agree() {
        let label = Label::integer(&[7, 5, 4, 2, 1, 0]);
        let x = [0.93, 0.71, 0.55, 0.4, 0.22, 0.05];
        let a = eval_cos_anti_enumerated(&label, &x).unwrap();
        let b = eval_cos_anti_lu(&label, &x).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let x = [0.8, 0.45, 0.1];
        let table = CosineTable::new(&x, 12);
        for halves in [vec![6, 3, 1], vec![5, 3, 1], vec![4, 4, 0], vec![2, 0, 0]] {
            let label = Label::from_halves_unchecked(halves.clone());
            let s = eval_cos_sym(&label, &x).unwrap();
            let a = eval_cos_anti(&label, &x).unwrap();
            assert!((table.eval(Symmetry::Sym, &halves) - s).abs() < TOL);
            assert!((table.eval(Symmetry::Anti, &halves) - a).abs() < TOL);
        }
    }

    fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-3.0f64..3.0, n)
    }

    fn int_label(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, n)
    }

    proptest! {
        #[test]
        fn permutation_invariance(
            x in point(4), k in int_label(4),
            perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(), half in any::<bool>()
        ) {
            let shift = if half { Shift::Rho } else { Shift::None };
            let label = Label::integer(&k).shifted(shift);
            let px: Vec<f64> = perm.iter().map(|&i| x[i]).collect();
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j]).count();
            let sgn = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            let s0 = eval_cos_sym(&label, &x).unwrap();
            let s1 = eval_cos_sym(&label, &px).unwrap();
            prop_assert!((s0 - s1).abs() < 1e-10);
            let a0 = eval_cos_anti(&label, &x).unwrap();
            let a1 = eval_cos_anti(&label, &px).unwrap();
            prop_assert!((a1 - sgn * a0).abs() < 1e-10);
            let pk = Label::from_halves_unchecked(perm.iter().map(|&i| label.halves()[i]).collect());
            prop_assert!((eval_cos_anti(&pk, &x).unwrap() - sgn * a0).abs() < 1e-10);
        }

        #[test]
        fn sign_flip_invariance(x in point(3), k in int_label(3), i in 0usize..3) {
            let label = Label::integer(&k);
            let mut fx = x.clone();
            fx[i] = -fx[i];
            let mut fk = k.clone();
            fk[i] = -fk[i];
            let fk = Label::integer(&fk);
            for sym in [Symmetry::Sym, Symmetry::Anti] {
                let v = eval_cos(sym, &label, &x).unwrap();
                prop_assert!((eval_cos(sym, &label, &fx).unwrap() - v).abs() < 1e-10);
                prop_assert!((eval_cos(sym, &fk, &x).unwrap() - v).abs() < 1e-10);
            }
        }

        #[test]
        fn periodicity(x in point(3), k in int_label(3), t in proptest::collection::vec(-2i64..=2, 3)) {
            let shifted: Vec<f64> = x.iter().zip(&t).map(|(a, &b)| a + 2.0 * b as f64).collect();
            let parity = if t.iter().sum::<i64>() % 2 == 0 { 1.0 } else { -1.0 };
            let int = Label::integer(&k);
            let half = int.shifted(Shift::Rho);
            for sym in [Symmetry::Sym, Symmetry::Anti] {
                let a = eval_cos(sym, &int, &x).unwrap();
                prop_assert!((eval_cos(sym, &int, &shifted).unwrap() - a).abs() < 1e-9);
                let b = eval_cos(sym, &half, &x).unwrap();
                prop_assert!((eval_cos(sym, &half, &shifted).unwrap() - parity * b).abs() < 1e-9);
            }
        }

        #[test]
        fn values_bounded_by_group_order(x in point(3), k in int_label(3)) {
            let label = Label::integer(&k);
            prop_assert!(eval_cos_sym(&label, &x).unwrap().abs() <= 6.0 + 1e-12);
            prop_assert!(eval_cos_anti(&label, &x).unwrap().abs() <= 6.0 + 1e-12);
        }

        #[test]
        fn fold_preserves_symmetric_integer_values(x in point(3), k in int_label(3)) {
            let folded = fundamental_fold(&x);
            prop_assert!(in_fundamental_domain(&folded, 0.0));
            let label = Label::integer(&k);
            let a = eval_cos_sym(&label, &x).unwrap();
            let b = eval_cos_sym(&label, &folded).unwrap();
            prop_assert!((a - b).abs() < 1e-12 * 6.0);
        }
    }
}
