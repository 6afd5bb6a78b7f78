//! Label sets, point grids and their weights for the sixteen transform kinds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Symmetry;
use crate::symmetry::{c_product, stabilizer_order, Label, Shift};
use crate::Rational;

/// The eight one-dimensional DCT types the multivariate transforms generalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DctType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl DctType {
    pub const ALL: [DctType; 8] = [
        DctType::I,
        DctType::II,
        DctType::III,
        DctType::IV,
        DctType::V,
        DctType::VI,
        DctType::VII,
        DctType::VIII,
    ];

    /// Label components range over `0..label_range(N)`.
    pub fn label_range(self, big_n: usize) -> usize {
        match self {
            DctType::I => big_n + 1,
            _ => big_n,
        }
    }

    /// Whether the basis functions are labeled by `k + ρ`.
    pub fn label_shift(self) -> Shift {
        match self {
            DctType::III | DctType::IV | DctType::VII | DctType::VIII => Shift::Rho,
            _ => Shift::None,
        }
    }

    /// Grid coordinate for the index `r`.
    pub fn coordinate(self, r: i64, big_n: usize) -> Rational64 {
        let n = big_n as i64;
        let (num, den) = match self {
            DctType::I | DctType::III => (r, n),
            DctType::II | DctType::IV => (2 * r + 1, 2 * n),
            DctType::V | DctType::VII => (2 * r, 2 * n - 1),
            DctType::VI => (2 * r + 1, 2 * n - 1),
            DctType::VIII => (2 * r + 1, 2 * n + 1),
        };
        Rational64::new(num, den)
    }

    /// `ε_s`, `ε̃_s` or 1 for the grid point indexed by `r`.
    pub fn point_weight(self, r: &[i64], big_n: usize) -> Rational {
        match self {
            DctType::I | DctType::III | DctType::V | DctType::VII => c_product(r, 0, big_n),
            DctType::VI => c_product(r, 1, big_n),
            DctType::II | DctType::IV | DctType::VIII => Rational::one(),
        }
    }

    /// Per-dimension factor of the discrete norms: `N/2`, `(2N-1)/4` or `(2N+1)/4`.
    pub fn norm_scale(self, big_n: usize) -> Rational {
        let n = big_n as i64;
        let (p, q) = match self {
            DctType::I | DctType::II | DctType::III | DctType::IV => (n, 2),
            DctType::V | DctType::VI | DctType::VII => (2 * n - 1, 4),
            DctType::VIII => (2 * n + 1, 4),
        };
        Rational::new(p.into(), q.into())
    }

    /// Label-dependent factor `1/d_k`, `1/d̃_k` or 1 of the discrete norms.
    fn label_factor(self, k: &[i64], big_n: usize) -> Rational {
        match self {
            DctType::I | DctType::II | DctType::V | DctType::VI => c_product(k, 0, big_n).recip(),
            DctType::VII => c_product(k, 1, big_n).recip(),
            DctType::III | DctType::IV | DctType::VIII => Rational::one(),
        }
    }

    pub fn roman(self) -> &'static str {
        match self {
            DctType::I => "I",
            DctType::II => "II",
            DctType::III => "III",
            DctType::IV => "IV",
            DctType::V => "V",
            DctType::VI => "VI",
            DctType::VII => "VII",
            DctType::VIII => "VIII",
        }
    }
}

impl fmt::Display for DctType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl FromStr for DctType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DctType::ALL
            .into_iter()
            .find(|t| t.roman().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown transform type {s:?}")))
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Sym => "sym",
            Symmetry::Anti => "anti",
        })
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sym" | "+" | "symmetric" => Ok(Symmetry::Sym),
            "anti" | "-" | "antisymmetric" => Ok(Symmetry::Anti),
            other => Err(Error::Parse(format!("unknown symmetry {other:?}"))),
        }
    }
}

/// One of the sixteen transforms: a DCT type with a symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformKind {
    #[serde(rename = "type")]
    pub dct: DctType,
    pub symmetry: Symmetry,
}

impl TransformKind {
    pub const fn new(dct: DctType, symmetry: Symmetry) -> Self {
        TransformKind { dct, symmetry }
    }

    pub fn all() -> Vec<TransformKind> {
        [Symmetry::Anti, Symmetry::Sym]
            .into_iter()
            .flat_map(|s| DctType::ALL.into_iter().map(move |t| TransformKind::new(t, s)))
            .collect()
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dct, self.symmetry)
    }
}

/// Integer vectors with components in `0..range`, sorted non-increasing
/// (strictly when `strict`), in descending lexicographic order.
pub fn decreasing_indices(n: usize, range: usize, strict: bool) -> Vec<Vec<i64>> {
    fn rec(n: usize, upper: i64, strict: bool, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let remaining = (n - prefix.len()) as i64;
        let lowest = if strict { remaining - 1 } else { 0 };
        let mut v = upper;
        while v >= lowest {
            prefix.push(v);
            rec(n, if strict { v - 1 } else { v }, strict, prefix, out);
            prefix.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    if range == 0 && n > 0 {
        return out;
    }
    rec(n, range as i64 - 1, strict, &mut Vec::with_capacity(n), &mut out);
    out
}

fn index_set(kind: TransformKind, big_n: usize, n: usize) -> Vec<Vec<i64>> {
    decreasing_indices(
        n,
        kind.dct.label_range(big_n),
        kind.symmetry == Symmetry::Anti,
    )
}

/// Labels of the basis functions of `kind`: `D^±` over `0..N-1` (`0..N` for
/// type I), shifted by `ρ` where the basis is `cos±_{k+ρ}`.
pub fn label_set(kind: TransformKind, big_n: usize, n: usize) -> Vec<Label> {
    let shift = kind.dct.label_shift();
    index_set(kind, big_n, n)
        .into_iter()
        .map(|k| Label::integer(&k).shifted(shift))
        .collect()
}

/// Diagonal entry of the discrete Gram matrix for the basis function labeled
/// by `k` (as returned by [`label_set`]).
pub fn spectral_norm(kind: TransformKind, k: &Label, big_n: usize) -> Result<Rational> {
    let n = k.dim();
    let shift = kind.dct.label_shift().halves(n);
    let raw: Vec<i64> = k.halves().iter().zip(&shift).map(|(a, b)| a - b).collect();
    let not_in_set = || Error::NotInLabelSet(k.to_string());
    if raw.iter().any(|h| h % 2 != 0) {
        return Err(not_in_set());
    }
    let base: Vec<i64> = raw.iter().map(|h| h / 2).collect();
    let range = kind.dct.label_range(big_n) as i64;
    let strict = kind.symmetry == Symmetry::Anti;
    let ordered = base
        .windows(2)
        .all(|w| if strict { w[0] > w[1] } else { w[0] >= w[1] });
    if !ordered || base.iter().any(|&v| !(0..range).contains(&v)) {
        return Err(not_in_set());
    }
    Ok(norm_of_index(kind, &base, big_n))
}

fn norm_of_index(kind: TransformKind, k: &[i64], big_n: usize) -> Rational {
    let scale = kind.dct.norm_scale(big_n);
    let mut norm = num_traits::pow(scale, k.len()) * kind.dct.label_factor(k, big_n);
    if kind.symmetry == Symmetry::Sym {
        norm *= Rational::from_integer(BigInt::from(stabilizer_order(&Label::integer(k))));
    }
    norm
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridEntry {
    /// Integer index `r` of the point.
    pub r: Vec<i64>,
    pub point: Vec<Rational64>,
    /// `ε_s`, `ε̃_s` or 1.
    pub point_weight: Rational,
    /// `H_s`.
    pub stabilizer: u64,
}

impl GridEntry {
    pub fn point_f64(&self) -> Vec<f64> {
        self.point
            .iter()
            .map(|c| *c.numer() as f64 / *c.denom() as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelEntry {
    pub k: Label,
    pub spectral_norm: Rational,
}

/// Grid points of a transform kind together with its labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGrid {
    pub kind: TransformKind,
    pub big_n: usize,
    pub n: usize,
    pub entries: Vec<GridEntry>,
    pub labels: Vec<LabelEntry>,
}

impl LabeledGrid {
    /// Weight of a grid point in the discrete scalar product: the point
    /// weight, divided by `H_s` for symmetric kinds.
    pub fn inner_weight(&self, index: usize) -> Rational {
        let e = &self.entries[index];
        match self.kind.symmetry {
            Symmetry::Sym => &e.point_weight / Rational::from_integer(BigInt::from(e.stabilizer)),
            Symmetry::Anti => e.point_weight.clone(),
        }
    }

    pub fn inner_weights_f64(&self) -> Vec<f64> {
        (0..self.entries.len())
            .map(|i| self.inner_weight(i).to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn points_f64(&self) -> Vec<Vec<f64>> {
        self.entries.iter().map(GridEntry::point_f64).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// CSV with columns `r1..rn, x1..xn, weight`; weights as `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.n)
            .map(|i| format!("r{i}"))
            .chain((1..=self.n).map(|i| format!("x{i}")))
            .chain(std::iter::once("weight".to_string()))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for e in &self.entries {
            let mut row: Vec<String> = e.r.iter().map(|v| v.to_string()).collect();
            row.extend(e.point_f64().iter().map(|v| format!("{v}")));
            row.push(format!("{}/{}", e.point_weight.numer(), e.point_weight.denom()));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Points, point weights and labels of `kind` at resolution `N` in dimension `n`.
pub fn point_grid(kind: TransformKind, big_n: usize, n: usize) -> LabeledGrid {
    let indices = index_set(kind, big_n, n);
    let shift = kind.dct.label_shift();
    let entries = indices
        .iter()
        .map(|r| GridEntry {
            r: r.clone(),
            point: r.iter().map(|&ri| kind.dct.coordinate(ri, big_n)).collect(),
            point_weight: kind.dct.point_weight(r, big_n),
            stabilizer: stabilizer_order(&Label::integer(r)),
        })
        .collect();
    let labels = indices
        .iter()
        .map(|k| LabelEntry {
            k: Label::integer(k).shifted(shift),
            spectral_norm: norm_of_index(kind, k, big_n),
        })
        .collect();
    LabeledGrid {
        kind,
        big_n,
        n,
        entries,
        labels,
    }
}
