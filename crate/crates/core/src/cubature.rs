//! Cubature rules on the image of the fundamental domain under `x ↦ X(x)`,
//! built from the transform grids, and an exact integral oracle.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grids::{point_grid, DctType, TransformKind};
use crate::kernels::Symmetry;
use crate::poly::{family_polynomial, labels_up_to, monomial_to_cos, phi_map, Family, RationalPolynomial};
use crate::sum::NeumaierSum;
use crate::symmetry::Label;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct CubatureNode {
    /// Node `Y = X(s)`.
    pub y: Vec<f64>,
    /// Pre-image grid point `s`.
    pub point: Vec<Rational64>,
    /// Grid prefactor times the point weight (divided by `H_s` for
    /// symmetric families).
    pub combinatorial: Rational,
    /// Value of the weight polynomial at `Y`, taken as the squared seed at `s`.
    pub weight_polynomial: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubatureRule {
    pub family: Family,
    pub kind: TransformKind,
    pub big_n: usize,
    pub n: usize,
    pub nodes: Vec<CubatureNode>,
    pub exact_degree: u32,
}

#[derive(Serialize)]
struct RuleHeader<'a> {
    family: &'a str,
    kind: TransformKind,
    #[serde(rename = "N")]
    big_n: usize,
    n: usize,
    exact_degree: u32,
}

impl CubatureRule {
    /// `Σ weight · f(Y)`.
    pub fn integrate(&self, f: &RationalPolynomial) -> Result<f64> {
        if f.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: f.dim(),
            });
        }
        let terms: Vec<f64> = self
            .nodes
            .par_iter()
            .map(|node| f.eval(&node.y).map(|v| node.weight * v))
            .collect::<Result<_>>()?;
        Ok(terms.into_iter().sum::<NeumaierSum>().value())
    }

    /// JSON header line followed by CSV rows `Y1..Yn, weight`.
    pub fn to_csv(&self) -> Result<String> {
        let header = RuleHeader {
            family: self.family.name(),
            kind: self.kind,
            big_n: self.big_n,
            n: self.n,
            exact_degree: self.exact_degree,
        };
        let mut out = format!(
            "# {}\n",
            serde_json::to_string(&header).map_err(|e| Error::Parse(e.to_string()))?
        );
        let cols: Vec<String> = (1..=self.n)
            .map(|i| format!("Y{i}"))
            .chain(std::iter::once("weight".into()))
            .collect();
        out.push_str(&cols.join(","));
        out.push('\n');
        for node in &self.nodes {
            let row: Vec<String> = node
                .y
                .iter()
                .chain(std::iter::once(&node.weight))
                .map(|v| format!("{v:.16e}"))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Whether `(family, kind)` is one of the sixteen supported pairings.
pub fn is_supported(family: Family, kind: TransformKind) -> bool {
    use DctType::*;
    kind.symmetry == family.symmetry()
        && match family {
            Family::IPlus | Family::IMinus => matches!(kind.dct, I | II | V | VI),
            Family::IIIPlus | Family::IIIMinus => matches!(kind.dct, III | IV | VII | VIII),
        }
}

/// The four pairings whose rules are Gaussian.
pub fn is_gaussian(family: Family, kind: TransformKind) -> bool {
    is_supported(family, kind) && matches!(kind.dct, DctType::II | DctType::VIII)
}

/// All sixteen `(family, kind)` pairings.
pub fn pairings() -> Vec<(Family, TransformKind)> {
    Family::ALL
        .into_iter()
        .flat_map(|f| {
            DctType::ALL
                .into_iter()
                .map(move |t| (f, TransformKind::new(t, f.symmetry())))
        })
        .filter(|&(f, k)| is_supported(f, k))
        .collect()
}

fn check_supported(family: Family, kind: TransformKind) -> Result<()> {
    if is_supported(family, kind) {
        Ok(())
    } else {
        Err(Error::UnsupportedPairing { family, kind })
    }
}

/// Degree up to which the rule of `(family, kind)` at resolution `N` in
/// dimension `n` is exact.
pub fn degree_of_exactness(family: Family, kind: TransformKind, big_n: usize, n: usize) -> Result<u32> {
    use DctType::*;
    check_supported(family, kind)?;
    let nn = big_n as i64;
    let dim = n as i64;
    let fail = |requirement: &'static str| Error::Precondition {
        family,
        kind,
        big_n,
        requirement,
    };
    let degree = match (family.symmetry(), kind.dct) {
        (Symmetry::Sym, II | I | VIII) if nn >= 1 => 2 * nn - 1,
        (Symmetry::Sym, V | VI | III | IV) if nn >= 2 => 2 * (nn - 1),
        (Symmetry::Sym, VII) if nn >= 2 => 2 * (nn - 1) - 1,
        (Symmetry::Sym, _) => return Err(fail("N >= 2")),
        (Symmetry::Anti, II | I | VIII) if nn >= dim => 2 * (nn - dim) + 1,
        (Symmetry::Anti, II | I | VIII) => return Err(fail("N >= n")),
        (Symmetry::Anti, V | VI | III | IV) if nn > dim => 2 * (nn - dim),
        (Symmetry::Anti, VII) if nn > dim => 2 * (nn - dim) - 1,
        (Symmetry::Anti, _) => return Err(fail("N > n")),
    };
    Ok(degree as u32)
}

fn grid_prefactor(dct: DctType, big_n: usize, n: usize) -> Rational {
    let nn = big_n as i64;
    let step = match dct {
        DctType::I | DctType::II | DctType::III | DctType::IV => Rational::new(1.into(), nn.into()),
        DctType::V | DctType::VI | DctType::VII => Rational::new(2.into(), (2 * nn - 1).into()),
        DctType::VIII => Rational::new(2.into(), (2 * nn + 1).into()),
    };
    num_traits::pow(step, n)
}

/// The cubature rule of `(family, kind)` at resolution `N` in dimension `n`.
pub fn build_rule(family: Family, kind: TransformKind, big_n: usize, n: usize) -> Result<CubatureRule> {
    let exact_degree = degree_of_exactness(family, kind, big_n, n)?;
    let grid = point_grid(kind, big_n, n);
    let prefactor = grid_prefactor(kind.dct, big_n, n);
    let nodes = grid
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, entry)| {
            let x = entry.point_f64();
            let seed = family.eval_seed(&x)?;
            let combinatorial = &prefactor * grid.inner_weight(i);
            let weight_polynomial = seed * seed;
            let weight = combinatorial.to_f64().unwrap_or(f64::NAN) * weight_polynomial;
            Ok(CubatureNode {
                y: phi_map(&x),
                point: entry.point.clone(),
                combinatorial,
                weight_polynomial,
                weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubatureRule {
        family,
        kind,
        big_n,
        n,
        nodes,
        exact_degree,
    })
}

type MomentCache = Mutex<HashMap<(Family, Vec<u32>), Rational>>;

fn moment_cache() -> &'static MomentCache {
    static CACHE: OnceLock<MomentCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `∫_F X(x)^α seed(x)² dx`, exactly.
pub fn monomial_integral(family: Family, alpha: &[u32]) -> Rational {
    let key = (family, alpha.to_vec());
    if let Some(hit) = moment_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&key)
    {
        return hit.clone();
    }
    let n = alpha.len();
    let expansion = monomial_to_cos(family, alpha);
    let value = expansion
        .multiply(&family.seed(n))
        .coefficient(&Label::zero(n));
    moment_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(key)
        .or_insert(value)
        .clone()
}

/// Exact value of the integral the rules of `family` approximate:
/// `∫_F f(X(x)) seed(x)² dx`.
pub fn exact_integral(family: Family, f: &RationalPolynomial) -> Rational {
    f.terms()
        .map(|(alpha, c)| c * monomial_integral(family, alpha))
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// Largest `|P_k(Y)|` over the nodes of a Gaussian rule, for all `k` whose
/// first component is `N` (symmetric families) or `N - n + 1`
/// (antisymmetric families).
pub fn node_vanishing_check(family: Family, kind: TransformKind, big_n: usize, n: usize) -> Result<f64> {
    if !is_gaussian(family, kind) {
        return Err(Error::UnsupportedPairing { family, kind });
    }
    let rule = build_rule(family, kind, big_n, n)?;
    let first = match family.symmetry() {
        Symmetry::Sym => big_n,
        Symmetry::Anti => big_n + 1 - n,
    };
    let polys = labels_up_to(n, first)
        .into_iter()
        .filter(|k| k.integer_components().is_some_and(|c| c[0] == first as i64))
        .map(|k| family_polynomial(family, &k))
        .collect::<Result<Vec<_>>>()?;
    // Exact arithmetic at the binary node values: the monomial terms reach
    // ~1e7 at moderate N and cancel, so f64 evaluation would dominate.
    let mut worst: f64 = 0.0;
    for node in &rule.nodes {
        let y: Vec<Rational> = node
            .y
            .iter()
            .map(|&v| Rational::from_float(v).ok_or_else(|| Error::Invalid(format!("node coordinate {v}"))))
            .collect::<Result<_>>()?;
        for p in &polys {
            let value = p.eval_exact(&y)?.to_f64().unwrap_or(f64::INFINITY);
            worst = worst.max(value.abs());
        }
    }
    Ok(worst)
}

/// Exact integral of the constant 1.
pub fn total_mass(family: Family, n: usize) -> Rational {
    monomial_integral(family, &vec![0; n])
}
