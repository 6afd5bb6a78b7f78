use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernels::{permutations, CosineTable, Symmetry};
use crate::sum::NeumaierSum;
use crate::symmetry::{canonicalize_antisymmetric, canonicalize_symmetric, Label};
use crate::Rational;

/// Which cosine functions an expansion is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosBasis {
    SymInt,
    AntiInt,
    SymHalf,
    AntiHalf,
}

impl CosBasis {
    pub fn new(symmetry: Symmetry, half: bool) -> Self {
        match (symmetry, half) {
            (Symmetry::Sym, false) => CosBasis::SymInt,
            (Symmetry::Anti, false) => CosBasis::AntiInt,
            (Symmetry::Sym, true) => CosBasis::SymHalf,
            (Symmetry::Anti, true) => CosBasis::AntiHalf,
        }
    }

    pub fn symmetry(self) -> Symmetry {
        match self {
            CosBasis::SymInt | CosBasis::SymHalf => Symmetry::Sym,
            CosBasis::AntiInt | CosBasis::AntiHalf => Symmetry::Anti,
        }
    }

    pub fn is_half(self) -> bool {
        matches!(self, CosBasis::SymHalf | CosBasis::AntiHalf)
    }
}

/// Finite linear combination `Σ c_λ cos±_λ` with canonical labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosExpansion {
    basis: CosBasis,
    n: usize,
    terms: BTreeMap<Label, Rational>,
}

impl CosExpansion {
    pub fn zero(basis: CosBasis, n: usize) -> Self {
        CosExpansion {
            basis,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `coefficient · cos±_label`, canonicalized.
    pub fn single(symmetry: Symmetry, label: &Label, coefficient: Rational) -> Self {
        let half = label.halves().first().is_some_and(|h| h % 2 != 0);
        let mut e = CosExpansion::zero(CosBasis::new(symmetry, half), label.dim());
        e.add_halves(label.halves(), coefficient);
        e
    }

    pub fn basis(&self) -> CosBasis {
        self.basis
    }

    pub fn symmetry(&self) -> Symmetry {
        self.basis.symmetry()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the canonical form of `label` (sign-adjusted for
    /// antisymmetric bases).
    pub fn coefficient(&self, label: &Label) -> Rational {
        let (canonical, sign) = self.canonical(label);
        if sign == 0 {
            return Rational::zero();
        }
        let c = self.terms.get(&canonical).cloned().unwrap_or_else(Rational::zero);
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    fn canonical(&self, label: &Label) -> (Label, i8) {
        match self.symmetry() {
            Symmetry::Sym => (canonicalize_symmetric(label), 1),
            Symmetry::Anti => canonicalize_antisymmetric(label),
        }
    }

    /// Adds `coefficient · cos±_λ` for `λ` given in half units, in any order and sign.
    pub fn add_halves(&mut self, halves: &[i64], coefficient: Rational) {
        let label = Label::from_halves_unchecked(halves.to_vec());
        let (canonical, sign) = self.canonical(&label);
        if sign == 0 || coefficient.is_zero() {
            return;
        }
        let c = if sign < 0 { -coefficient } else { coefficient };
        match self.terms.entry(canonical) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CosExpansion, factor: &Rational) -> Result<()> {
        if other.basis != self.basis && !other.is_empty() {
            return Err(Error::Invalid(format!(
                "cannot add a {:?} expansion to a {:?} expansion",
                other.basis, self.basis
            )));
        }
        for (l, c) in &other.terms {
            self.add_halves(l.halves(), c * factor);
        }
        Ok(())
    }

    /// Product with another expansion, term by term through [`product_rule`].
    pub fn multiply(&self, other: &CosExpansion) -> CosExpansion {
        let symmetry = product_symmetry(self.symmetry(), other.symmetry());
        let half = self.basis.is_half() != other.basis.is_half();
        let mut out = CosExpansion::zero(CosBasis::new(symmetry, half), self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coef = ca * cb;
                accumulate_product(&mut out, self.symmetry(), a, other.symmetry(), b, &coef);
            }
        }
        out
    }

    /// Value at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let width = self
            .terms
            .keys()
            .flat_map(|l| l.halves().iter())
            .map(|h| h.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        let table = CosineTable::new(x, width);
        Ok(self
            .terms
            .iter()
            .map(|(l, c)| c.to_f64().unwrap_or(f64::NAN) * table.eval(self.symmetry(), l.halves()))
            .sum::<NeumaierSum>()
            .value())
    }
}

fn product_symmetry(a: Symmetry, b: Symmetry) -> Symmetry {
    if a == b {
        Symmetry::Sym
    } else {
        Symmetry::Anti
    }
}

/// Adds `coefficient · cos_a · cos_b` to `out`:
/// `2⁻ⁿ Σ_σ Σ_{ε∈{±1}ⁿ} [sgn σ] cos_{a + ε∘b_σ}`, with the sign present
/// exactly when both factors are antisymmetric.
fn accumulate_product(
    out: &mut CosExpansion,
    sa: Symmetry,
    a: &Label,
    sb: Symmetry,
    b: &Label,
    coefficient: &Rational,
) {
    let n = a.dim();
    // For a mixed product the antisymmetric factor has to carry the
    // permutation-invariant role, so permute the symmetric one.
    let (fixed, moving, signed) = match (sa, sb) {
        (Symmetry::Sym, Symmetry::Sym) => (a, b, false),
        (Symmetry::Anti, Symmetry::Anti) => (a, b, true),
        (Symmetry::Anti, Symmetry::Sym) => (a, b, false),
        (Symmetry::Sym, Symmetry::Anti) => (b, a, false),
    };
    let scale = coefficient / Rational::from_integer((1i64 << n).into());
    let mut halves = vec![0i64; n];
    for p in permutations(n) {
        let c = if signed && p.sign < 0 { -&scale } else { scale.clone() };
        for mask in 0u32..(1 << n) {
            for (i, h) in halves.iter_mut().enumerate() {
                let m = moving.halves()[p.map[i]];
                *h = fixed.halves()[i] + if mask >> i & 1 == 1 { -m } else { m };
            }
            out.add_halves(&halves, c.clone());
        }
    }
}

/// `cos_a · cos_b` expanded in cosine functions:
/// symmetric·symmetric and antisymmetric·antisymmetric give symmetric
/// functions, mixed products give antisymmetric ones.
pub fn product_rule(sa: Symmetry, a: &Label, sb: Symmetry, b: &Label) -> CosExpansion {
    let symmetry = product_symmetry(sa, sb);
    let half = a.halves().first().is_some_and(|h| h % 2 != 0)
        != b.halves().first().is_some_and(|h| h % 2 != 0);
    let mut out = CosExpansion::zero(CosBasis::new(symmetry, half), a.dim());
    accumulate_product(&mut out, sa, a, sb, b, &Rational::from_integer(1.into()));
    out
}
