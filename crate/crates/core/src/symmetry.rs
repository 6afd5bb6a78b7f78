//! Labels, canonical forms under permutations and sign flips, and the
//! combinatorial weights (stabilizer orders, `h_k`, `c_r`, `d_k`) used by the
//! transforms and cubature rules.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Which half-integer shift produced a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Shift {
    /// Plain integer label `k`.
    #[default]
    None,
    /// `k + (1/2, ..., 1/2)`.
    Rho,
    /// `k + (n-1, n-2, ..., 0)`.
    Rho1,
    /// `k + (n-1/2, n-3/2, ..., 1/2)`.
    Rho2,
}

impl Shift {
    /// The shift vector in half units.
    pub fn halves(self, n: usize) -> Vec<i64> {
        let n_i = n as i64;
        match self {
            Shift::None => vec![0; n],
            Shift::Rho => vec![1; n],
            Shift::Rho1 => (0..n_i).map(|i| 2 * (n_i - 1 - i)).collect(),
            Shift::Rho2 => (0..n_i).map(|i| 2 * (n_i - 1 - i) + 1).collect(),
        }
    }
}

/// A label vector `λ` with components that are integers or half-odd integers.
///
/// Components are stored exactly in half units (`halves[i] = 2 λ_i`).
/// Equality, ordering and hashing only look at the components; the shift tag
/// records provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Label {
    halves: Vec<i64>,
    shift: Shift,
}

impl Label {
    /// Integer label `k`.
    pub fn integer(k: &[i64]) -> Label {
        Label {
            halves: k.iter().map(|&v| 2 * v).collect(),
            shift: Shift::None,
        }
    }

    /// Label from components given in half units, validated against the shift tag.
    pub fn from_halves(halves: Vec<i64>, shift: Shift) -> Result<Label> {
        let parity_ok = match shift {
            Shift::None | Shift::Rho => halves.windows(2).all(|w| (w[0] - w[1]) % 2 == 0),
            Shift::Rho1 => halves.iter().all(|h| h % 2 == 0),
            Shift::Rho2 => halves.iter().all(|h| h % 2 != 0),
        };
        if !parity_ok {
            return Err(Error::Invalid(format!(
                "components {halves:?} (half units) inconsistent with shift {shift:?}"
            )));
        }
        Ok(Label { halves, shift })
    }

    /// Label from components in half units; the tag is inferred from parity.
    pub(crate) fn from_halves_unchecked(halves: Vec<i64>) -> Label {
        let shift = if halves.first().is_some_and(|h| h % 2 != 0) {
            Shift::Rho
        } else {
            Shift::None
        };
        Label { halves, shift }
    }

    pub fn zero(n: usize) -> Label {
        Label::integer(&vec![0; n])
    }

    pub fn rho(n: usize) -> Label {
        Label::zero(n).shifted(Shift::Rho)
    }

    pub fn rho1(n: usize) -> Label {
        Label::zero(n).shifted(Shift::Rho1)
    }

    pub fn rho2(n: usize) -> Label {
        Label::zero(n).shifted(Shift::Rho2)
    }

    /// `self + shift`, tagged with `shift`.
    pub fn shifted(&self, shift: Shift) -> Label {
        let s = shift.halves(self.dim());
        Label {
            halves: self.halves.iter().zip(s).map(|(a, b)| a + b).collect(),
            shift,
        }
    }

    /// Removes the recorded shift, returning the underlying label `k`.
    pub fn unshifted(&self) -> Label {
        let s = self.shift.halves(self.dim());
        Label {
            halves: self.halves.iter().zip(s).map(|(a, b)| a - b).collect(),
            shift: Shift::None,
        }
    }

    pub fn with_shift_tag(mut self, shift: Shift) -> Label {
        self.shift = shift;
        self
    }

    pub fn dim(&self) -> usize {
        self.halves.len()
    }

    pub fn halves(&self) -> &[i64] {
        &self.halves
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn value(&self, i: usize) -> f64 {
        self.halves[i] as f64 / 2.0
    }

    pub fn values(&self) -> Vec<f64> {
        self.halves.iter().map(|&h| h as f64 / 2.0).collect()
    }

    pub fn component(&self, i: usize) -> Rational {
        Rational::new(BigInt::from(self.halves[i]), BigInt::from(2))
    }

    /// Integer components, if every component is an integer.
    pub fn integer_components(&self) -> Option<Vec<i64>> {
        self.halves
            .iter()
            .map(|&h| (h % 2 == 0).then_some(h / 2))
            .collect()
    }

    pub fn is_integer(&self) -> bool {
        self.halves.iter().all(|h| h % 2 == 0)
    }

    /// Non-negative and sorted non-increasing.
    pub fn is_canonical(&self) -> bool {
        self.halves.iter().all(|&h| h >= 0) && self.halves.windows(2).all(|w| w[0] >= w[1])
    }

    /// First (largest, for canonical labels) component.
    pub fn leading(&self) -> f64 {
        self.value(0)
    }
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.halves == other.halves
    }
}

impl Eq for Label {}

impl Hash for Label {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.halves.hash(state);
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.halves.cmp(&other.halves)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.halves.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if h % 2 == 0 {
                write!(f, "{}", h / 2)?;
            } else {
                write!(f, "{}/2", h)?;
            }
        }
        write!(f, ")")
    }
}

/// Membership in `P⁺`: integer, weakly decreasing, non-negative.
pub fn in_p_plus(k: &Label) -> bool {
    k.is_integer() && k.is_canonical()
}

/// Membership in `P⁺⁺`: integer, strictly decreasing, non-negative.
pub fn in_p_plus_plus(k: &Label) -> bool {
    in_p_plus(k) && k.halves.windows(2).all(|w| w[0] > w[1])
}

/// Representative of the orbit of `label` under permutations and sign flips.
pub fn canonicalize_symmetric(label: &Label) -> Label {
    let mut halves: Vec<i64> = label.halves.iter().map(|h| h.abs()).collect();
    halves.sort_unstable_by(|a, b| b.cmp(a));
    Label {
        halves,
        shift: label.shift,
    }
}

/// Canonical representative together with the sign relating the antisymmetric
/// cosine functions: `cos⁻_label = sign · cos⁻_canonical`.
///
/// The sign is 0 when two components coincide in absolute value.
pub fn canonicalize_antisymmetric(label: &Label) -> (Label, i8) {
    let abs: Vec<i64> = label.halves.iter().map(|h| h.abs()).collect();
    let mut inversions = 0usize;
    for i in 0..abs.len() {
        for j in (i + 1)..abs.len() {
            match abs[i].cmp(&abs[j]) {
                Ordering::Equal => {
                    return (canonicalize_symmetric(label), 0);
                }
                Ordering::Less => inversions += 1,
                Ordering::Greater => {}
            }
        }
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    (canonicalize_symmetric(label), sign)
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Order `H_k` of the stabilizer of `k` in `S_n`: the product of the
/// factorials of the multiplicities of its distinct components.
pub fn stabilizer_order(k: &Label) -> u64 {
    let mut sorted = k.halves.clone();
    sorted.sort_unstable();
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| factorial(run.len()))
        .product()
}

/// Number of distinct permutations of the components of `k`.
pub fn orbit_size(k: &Label) -> u64 {
    factorial(k.dim()) / stabilizer_order(k)
}

/// `h_k = Π h_{k_i}` with `h_0 = 1` and `h_m = 1/2` otherwise.
pub fn h_weight(k: &Label) -> Result<Rational> {
    if !k.is_integer() {
        return Err(Error::Invalid(format!("h_k needs an integer label, got {k}")));
    }
    let halves = k.halves.iter().filter(|&&h| h != 0).count();
    Ok(Rational::new(BigInt::one(), BigInt::from(2).pow(halves as u32)))
}

/// `c_r` for `0 ≤ r ≤ N`: `1/2` at the two ends, `1` otherwise.
pub fn c_coefficient(r: i64, big_n: usize) -> Result<Rational> {
    let n = big_n as i64;
    if !(0..=n).contains(&r) {
        return Err(Error::OutOfRange {
            value: r,
            min: 0,
            max: n,
        });
    }
    Ok(c_value(r, big_n))
}

pub(crate) fn c_value(r: i64, big_n: usize) -> Rational {
    if r == 0 || r == big_n as i64 {
        Rational::new(BigInt::one(), BigInt::from(2))
    } else {
        Rational::one()
    }
}

/// `Π c_{r_i + offset}` over integer components, with `c` taken at `N`.
pub(crate) fn c_product(r: &[i64], offset: i64, big_n: usize) -> Rational {
    let halves = r
        .iter()
        .filter(|&&ri| ri + offset == 0 || ri + offset == big_n as i64)
        .count();
    Rational::new(BigInt::one(), BigInt::from(2).pow(halves as u32))
}

/// `(d_k, d̃_k) = (Π c_{k_i}, Π c_{k_i+1})` for `k ∈ D_N`.
pub fn d_weights(k: &Label, big_n: usize) -> Result<(Rational, Rational)> {
    let comps = k
        .integer_components()
        .ok_or_else(|| Error::Invalid(format!("d_k needs an integer label, got {k}")))?;
    let max = big_n as i64 - 1;
    if let Some(&bad) = comps.iter().find(|&&v| !(0..=max).contains(&v)) {
        return Err(Error::OutOfRange {
            value: bad,
            min: 0,
            max,
        });
    }
    Ok((c_product(&comps, 0, big_n), c_product(&comps, 1, big_n)))
}
