use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expansion::{product_rule, CosExpansion};
use super::polynomial::RationalPolynomial;
use crate::error::{Error, Result};
use crate::kernels::{eval_cos, Symmetry};
use crate::symmetry::{Label, Shift};
use crate::Rational;

/// The four families of Chebyshev-like polynomials.
///
/// Each is defined by `P_k(X(x)) · seed(x) = cos±_{k + shift}(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "I+")]
    IPlus,
    #[serde(rename = "I-")]
    IMinus,
    #[serde(rename = "III+")]
    IIIPlus,
    #[serde(rename = "III-")]
    IIIMinus,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::IPlus,
        Family::IMinus,
        Family::IIIPlus,
        Family::IIIMinus,
    ];

    /// Symmetry of the target cosine functions (and of the seed).
    pub fn symmetry(self) -> Symmetry {
        match self {
            Family::IPlus | Family::IIIPlus => Symmetry::Sym,
            Family::IMinus | Family::IIIMinus => Symmetry::Anti,
        }
    }

    pub fn shift(self) -> Shift {
        match self {
            Family::IPlus => Shift::None,
            Family::IMinus => Shift::Rho1,
            Family::IIIPlus => Shift::Rho,
            Family::IIIMinus => Shift::Rho2,
        }
    }

    /// Label of the seed cosine function: `0`, `ρ₁`, `ρ` or `ρ₂`.
    pub fn seed_label(self, n: usize) -> Label {
        Label::zero(n).shifted(self.shift())
    }

    /// The seed as an expansion; for `I+` it is the constant 1 = `cos⁺_0 / n!`.
    pub fn seed(self, n: usize) -> CosExpansion {
        let coefficient = match self {
            Family::IPlus => Rational::new(1.into(), factorial(n).into()),
            _ => Rational::one(),
        };
        CosExpansion::single(self.symmetry(), &self.seed_label(n), coefficient)
    }

    pub fn eval_seed(self, x: &[f64]) -> Result<f64> {
        match self {
            Family::IPlus => Ok(1.0),
            _ => eval_cos(self.symmetry(), &self.seed_label(x.len()), x),
        }
    }

    /// Target label `k + shift`.
    pub fn target_label(self, k: &Label) -> Label {
        k.shifted(self.shift())
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::IPlus => "I+",
            Family::IMinus => "I-",
            Family::IIIPlus => "III+",
            Family::IIIMinus => "III-",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('−', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

pub(crate) fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// `(X₁(x), …, Xₙ(x))` with `X_i = cos⁺_{(1,…,1,0,…,0)}` (`i` ones).
pub fn phi_map(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (1..=n)
        .map(|i| {
            let label = variable_label(n, i);
            eval_cos(Symmetry::Sym, &label, x).expect("label matches point dimension")
        })
        .collect()
}

fn variable_label(n: usize, i: usize) -> Label {
    let k: Vec<i64> = (0..n).map(|j| i64::from(j < i)).collect();
    Label::integer(&k)
}

/// `Π_{i=1}^{n} (n-i)! i!`, the scale between `X_i` and the elementary
/// symmetric functions of `cos(π x_j)`.
pub fn variable_scale(n: usize) -> u64 {
    (1..=n).map(|i| factorial(n - i) * factorial(i)).product()
}

/// Determinant of the Jacobian of [`phi_map`] at `x`.
pub fn jacobian_eval(x: &[f64]) -> f64 {
    use std::f64::consts::PI;
    let n = x.len();
    let pairs = n * n.saturating_sub(1) / 2;
    let sign = if (n * (n + 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    // (1/2)^{n(n-1)/2} · 2^{n(n-1)} = 2^{n(n-1)/2}
    let constant = sign * 2f64.powi(pairs as i32) * PI.powi(n as i32) * variable_scale(n) as f64;
    let mut product: f64 = x.iter().map(|&xi| (PI * xi).sin()).product();
    for i in 0..n {
        for j in (i + 1)..n {
            product *= (PI * (x[i] + x[j]) / 2.0).sin() * (PI * (x[i] - x[j]) / 2.0).sin();
        }
    }
    constant * product
}

type ExpansionCache = Mutex<HashMap<(Family, Vec<u32>), Arc<CosExpansion>>>;
type PolynomialCache = Mutex<HashMap<(Family, Vec<i64>), Arc<RationalPolynomial>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn polynomial_cache() -> &'static PolynomialCache {
    static CACHE: OnceLock<PolynomialCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Inserts `value` unless another thread got there first; returns the stored value.
fn publish<K: std::hash::Hash + Eq, V>(cache: &Mutex<HashMap<K, Arc<V>>>, key: K, value: V) -> Arc<V> {
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(key).or_insert_with(|| Arc::new(value)).clone()
}

fn lookup<K: std::hash::Hash + Eq, V>(cache: &Mutex<HashMap<K, Arc<V>>>, key: &K) -> Option<Arc<V>> {
    cache.lock().unwrap_or_else(|e| e.into_inner()).get(key).cloned()
}

/// Expansion of `X^α · seed` in the family's target cosine functions.
pub fn monomial_to_cos(family: Family, alpha: &[u32]) -> Arc<CosExpansion> {
    let key = (family, alpha.to_vec());
    if let Some(hit) = lookup(expansion_cache(), &key) {
        return hit;
    }
    let n = alpha.len();
    let value = match alpha.iter().position(|&a| a > 0) {
        None => family.seed(n),
        Some(i) => {
            let mut lower = alpha.to_vec();
            lower[i] -= 1;
            let base = monomial_to_cos(family, &lower);
            let x_i = variable_label(n, i + 1);
            let mut out = CosExpansion::zero(base.basis(), n);
            for (label, c) in base.terms() {
                let p = product_rule(Symmetry::Sym, &x_i, family.symmetry(), label);
                out.add_scaled(&p, c).expect("products keep the target basis");
            }
            out
        }
    };
    publish(expansion_cache(), key, value)
}

/// Sort key extending the partial-sum dominance order: first component,
/// then component sum, then lexicographic.
fn order_key(halves: &[i64]) -> (i64, i64, Vec<i64>) {
    (halves[0], halves.iter().sum(), halves.to_vec())
}

/// The polynomial `P_k` of `family`: the unique polynomial with
/// `P_k(X(x)) · seed(x) = cos±_{k+shift}(x)`.
///
/// `k` must be a weakly decreasing non-negative integer label.
pub fn family_polynomial(family: Family, k: &Label) -> Result<Arc<RationalPolynomial>> {
    let comps = k
        .integer_components()
        .filter(|c| c.iter().all(|&v| v >= 0) && c.windows(2).all(|w| w[0] >= w[1]))
        .ok_or_else(|| {
            Error::Invalid(format!(
                "family polynomials are labeled by weakly decreasing non-negative integers, got {k}"
            ))
        })?;
    let key = (family, comps.clone());
    if let Some(hit) = lookup(polynomial_cache(), &key) {
        return Ok(hit);
    }
    let n = comps.len();
    let shift = family.shift().halves(n);
    let target = Label::integer(&comps).shifted(family.shift());
    let mut residual = CosExpansion::single(family.symmetry(), &target, Rational::one());
    let mut poly = RationalPolynomial::zero(n);
    // every step removes the current leading label, and only smaller ones appear
    let budget = crate::grids::decreasing_indices(n, comps[0] as usize + 1, false).len() + 1;
    for _ in 0..budget {
        let Some((lead, lead_coef)) = residual
            .terms()
            .max_by(|a, b| order_key(a.0.halves()).cmp(&order_key(b.0.halves())))
            .map(|(l, c)| (l.clone(), c.clone()))
        else {
            return Ok(publish(polynomial_cache(), key, poly));
        };
        let l: Vec<i64> = lead
            .halves()
            .iter()
            .zip(&shift)
            .map(|(h, s)| (h - s) / 2)
            .collect();
        let alpha: Vec<u32> = (0..n)
            .map(|i| (l[i] - l.get(i + 1).copied().unwrap_or(0)) as u32)
            .collect();
        let expansion = monomial_to_cos(family, &alpha);
        let pivot = expansion.coefficient(&lead);
        let leads = expansion
            .terms()
            .map(|(lbl, _)| order_key(lbl.halves()))
            .max()
            .is_some_and(|m| m == order_key(lead.halves()));
        if pivot.is_zero() || !leads {
            return Err(Error::Singular(lead.to_string()));
        }
        let c = lead_coef / pivot;
        residual
            .add_scaled(&expansion, &-&c)
            .expect("monomials expand in the target basis");
        poly.add_term(alpha, c);
    }
    Err(Error::Singular(k.to_string()))
}

/// All labels `k` with `k₁ ≤ max_first`, in descending lexicographic order.
pub fn labels_up_to(n: usize, max_first: usize) -> Vec<Label> {
    crate::grids::decreasing_indices(n, max_first + 1, false)
        .into_iter()
        .map(|k| Label::integer(&k))
        .collect()
}
