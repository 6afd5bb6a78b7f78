use super::expansion::{product_rule, CosBasis, CosExpansion};
use super::family::{family_polynomial, variable_scale, Family};
use super::polynomial::RationalPolynomial;
use crate::error::Result;
use crate::kernels::{permutations, Symmetry};
use crate::symmetry::Label;
use crate::Rational;

/// The weight functions of the four families, written as polynomials in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// Square of the Jacobian determinant of `x ↦ X(x)`.
    PIPlus,
    /// `(cos⁻_{ρ₁})²`.
    JIMinus,
    /// `(cos⁺_ρ)²`.
    JIIIPlus,
    /// `(cos⁻_{ρ₂})²`.
    JIIIMinus,
}

impl WeightKind {
    pub fn family(self) -> Family {
        match self {
            WeightKind::PIPlus => Family::IPlus,
            WeightKind::JIMinus => Family::IMinus,
            WeightKind::JIIIPlus => Family::IIIPlus,
            WeightKind::JIIIMinus => Family::IIIMinus,
        }
    }
}

/// `π^pi_power · poly(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolynomial {
    pub poly: RationalPolynomial,
    pub pi_power: u32,
}

impl WeightPolynomial {
    pub fn eval(&self, y: &[f64]) -> Result<f64> {
        Ok(std::f64::consts::PI.powi(self.pi_power as i32) * self.poly.eval(y)?)
    }
}

/// Rewrites a symmetric integer-label expansion as a polynomial in `X`
/// through `cos⁺_l = P^{I,+}_l(X)`.
pub fn sym_int_to_polynomial(e: &CosExpansion) -> Result<RationalPolynomial> {
    debug_assert_eq!(e.basis(), CosBasis::SymInt);
    let mut out = RationalPolynomial::zero(e.dim());
    for (label, c) in e.terms() {
        let p = family_polynomial(Family::IPlus, label)?;
        out = &out + &p.scale(c);
    }
    Ok(out)
}

/// `(sin⁻_λ)²` with `λ = (n, …, 1)` in symmetric cosine functions.
fn sine_square(n: usize) -> CosExpansion {
    let lambda: Vec<i64> = (1..=n as i64).rev().map(|v| 2 * v).collect();
    let mut out = CosExpansion::zero(CosBasis::SymInt, n);
    let scale = Rational::new(1.into(), (1i64 << n).into());
    let mut halves = vec![0i64; n];
    for p in permutations(n) {
        for mask in 0u32..(1 << n) {
            // sin a sin b = (cos(a - b) - cos(a + b)) / 2
            let mut negative = p.sign < 0;
            for i in 0..n {
                let m = lambda[p.map[i]];
                if mask >> i & 1 == 1 {
                    halves[i] = lambda[i] + m;
                    negative = !negative;
                } else {
                    halves[i] = lambda[i] - m;
                }
            }
            out.add_halves(&halves, if negative { -&scale } else { scale.clone() });
        }
    }
    out
}

pub fn weight_polynomial(which: WeightKind, n: usize) -> Result<WeightPolynomial> {
    match which {
        WeightKind::PIPlus => {
            let pairs = n * n.saturating_sub(1) / 2;
            let scale = Rational::new(
                variable_scale(n).into(),
                num_traits::pow(num_bigint::BigInt::from(2), pairs),
            );
            let poly = sym_int_to_polynomial(&sine_square(n))?.scale(&(&scale * &scale));
            Ok(WeightPolynomial {
                poly,
                pi_power: 2 * n as u32,
            })
        }
        _ => {
            let family = which.family();
            let seed = family.seed_label(n);
            let square = product_rule(family.symmetry(), &seed, family.symmetry(), &seed);
            Ok(WeightPolynomial {
                poly: sym_int_to_polynomial(&square)?,
                pi_power: 0,
            })
        }
    }
}

/// `∫_F cos±_a cos±_b dx` for canonical labels of one symmetry.
pub fn continuous_inner_product(symmetry: Symmetry, a: &Label, b: &Label) -> Rational {
    product_rule(symmetry, a, symmetry, b).coefficient(&Label::zero(a.dim()))
}
