//! Forward and inverse transforms, interpolants and their integral error.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grids::{label_set, point_grid, LabeledGrid, TransformKind};
use crate::kernels::{CosineTable, Symmetry};
use crate::sum::NeumaierSum;
use crate::symmetry::Label;

/// Function values on the grid of a transform, aligned with its entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub kind: TransformKind,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    pub values: Vec<f64>,
}

impl SampleSet {
    pub fn new(kind: TransformKind, big_n: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        let expected = label_set(kind, big_n, n).len();
        if values.len() != expected {
            return Err(Error::SizeMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(SampleSet {
            kind,
            big_n,
            n,
            values,
        })
    }

    /// Samples of `f` at the grid points of `kind`.
    pub fn from_fn<F>(kind: TransformKind, big_n: usize, n: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let grid = point_grid(kind, big_n, n);
        let values = grid.points_f64().par_iter().map(|x| f(x)).collect();
        SampleSet {
            kind,
            big_n,
            n,
            values,
        }
    }

    /// CSV with columns `r1..rn, value`.
    pub fn to_csv(&self) -> Result<String> {
        let grid = point_grid(self.kind, self.big_n, self.n);
        let mut header: Vec<String> = (1..=self.n).map(|i| format!("r{i}")).collect();
        header.push("value".into());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(csv_error)?;
        for (entry, v) in grid.entries.iter().zip(&self.values) {
            let mut row: Vec<String> = entry.r.iter().map(|r| r.to_string()).collect();
            row.push(format!("{v:e}"));
            w.write_record(&row).map_err(csv_error)?;
        }
        into_string(w)
    }

    /// Reads the CSV layout of [`SampleSet::to_csv`]; rows may come in any order.
    pub fn from_csv(kind: TransformKind, big_n: usize, n: usize, text: &str) -> Result<Self> {
        let grid = point_grid(kind, big_n, n);
        let mut values = vec![f64::NAN; grid.len()];
        let mut seen = vec![false; grid.len()];
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            if record.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    got: record.len(),
                });
            }
            let r = record
                .iter()
                .take(n)
                .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let value = parse_f64(&record[n])?;
            let idx = grid
                .entries
                .iter()
                .position(|e| e.r == r)
                .ok_or_else(|| Error::NotInLabelSet(format!("{r:?}")))?;
            values[idx] = value;
            seen[idx] = true;
        }
        let got = seen.iter().filter(|&&s| s).count();
        if got != grid.len() {
            return Err(Error::SizeMismatch {
                expected: grid.len(),
                got,
            });
        }
        SampleSet::new(kind, big_n, n, values)
    }
}

/// Expansion coefficients `A_k`, aligned with [`label_set`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub kind: TransformKind,
    pub big_n: usize,
    pub n: usize,
    pub labels: Vec<Label>,
    pub coefficients: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    kind: TransformKind,
    #[serde(rename = "N")]
    big_n: usize,
    n: usize,
    coefficients: Vec<CoefficientRecord>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientRecord {
    k: Vec<f64>,
    value: f64,
}

impl Spectrum {
    /// Spectrum with every coefficient zero.
    pub fn zeros(kind: TransformKind, big_n: usize, n: usize) -> Self {
        let labels = label_set(kind, big_n, n);
        let coefficients = vec![0.0; labels.len()];
        Spectrum {
            kind,
            big_n,
            n,
            labels,
            coefficients,
        }
    }

    pub fn coefficient(&self, k: &Label) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == k)
            .map(|i| self.coefficients[i])
    }

    pub fn set(&mut self, k: &Label, value: f64) -> Result<()> {
        let idx = self
            .labels
            .iter()
            .position(|l| l == k)
            .ok_or_else(|| Error::NotInLabelSet(k.to_string()))?;
        self.coefficients[idx] = value;
        Ok(())
    }

    fn label_from_values(&self, values: &[f64]) -> Result<Label> {
        if values.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: values.len(),
            });
        }
        let halves = values
            .iter()
            .map(|v| {
                let h = (2.0 * v).round();
                if (2.0 * v - h).abs() > 1e-9 {
                    Err(Error::Parse(format!("{v} is not a multiple of 1/2")))
                } else {
                    Ok(h as i64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Label::from_halves(halves, self.kind.dct.label_shift())
    }

    pub fn to_json(&self) -> Result<String> {
        let record = SpectrumRecord {
            kind: self.kind,
            big_n: self.big_n,
            n: self.n,
            coefficients: self
                .labels
                .iter()
                .zip(&self.coefficients)
                .map(|(k, &value)| CoefficientRecord {
                    k: k.values(),
                    value,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&record).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: SpectrumRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut spectrum = Spectrum::zeros(record.kind, record.big_n, record.n);
        for c in &record.coefficients {
            let k = spectrum.label_from_values(&c.k)?;
            spectrum.set(&k, c.value)?;
        }
        Ok(spectrum)
    }

    /// CSV with columns `k1..kn, value`.
    pub fn to_csv(&self) -> Result<String> {
        let mut header: Vec<String> = (1..=self.n).map(|i| format!("k{i}")).collect();
        header.push("value".into());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(csv_error)?;
        for (k, v) in self.labels.iter().zip(&self.coefficients) {
            let mut row: Vec<String> = k.values().iter().map(|c| c.to_string()).collect();
            row.push(format!("{v:e}"));
            w.write_record(&row).map_err(csv_error)?;
        }
        into_string(w)
    }

    pub fn from_csv(kind: TransformKind, big_n: usize, n: usize, text: &str) -> Result<Self> {
        let mut spectrum = Spectrum::zeros(kind, big_n, n);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            let cells = record.iter().map(parse_f64).collect::<Result<Vec<_>>>()?;
            let Some((value, k)) = cells.split_last() else {
                continue;
            };
            let k = spectrum.label_from_values(k)?;
            spectrum.set(&k, *value)?;
        }
        Ok(spectrum)
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn max_halves(labels: &[Label]) -> usize {
    labels
        .iter()
        .flat_map(|k| k.halves().iter())
        .map(|h| h.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

/// A transform kind at a fixed resolution, with its basis tabulated on the grid.
#[derive(Debug, Clone)]
pub struct Transform {
    grid: LabeledGrid,
    /// `basis[s * labels + k]` is basis function `k` at grid point `s`.
    basis: Vec<f64>,
    weights: Vec<f64>,
    norms: Vec<f64>,
}

impl Transform {
    pub fn new(kind: TransformKind, big_n: usize, n: usize) -> Self {
        let grid = point_grid(kind, big_n, n);
        let labels: Vec<Label> = grid.labels.iter().map(|l| l.k.clone()).collect();
        let width = max_halves(&labels);
        let basis = grid
            .points_f64()
            .par_iter()
            .flat_map_iter(|x| {
                let table = CosineTable::new(x, width);
                labels
                    .iter()
                    .map(move |k| table.eval(kind.symmetry, k.halves()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let weights = grid.inner_weights_f64();
        let norms = grid
            .labels
            .iter()
            .map(|l| num_traits::ToPrimitive::to_f64(&l.spectral_norm).unwrap_or(f64::NAN))
            .collect();
        Transform {
            grid,
            basis,
            weights,
            norms,
        }
    }

    pub fn grid(&self) -> &LabeledGrid {
        &self.grid
    }

    pub fn kind(&self) -> TransformKind {
        self.grid.kind
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.grid.labels.iter().map(|l| &l.k)
    }

    /// Discrete weights `w_s` of the grid points.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn spectral_norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn samples<F>(&self, f: F) -> SampleSet
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let values = self.grid.points_f64().par_iter().map(|x| f(x)).collect();
        SampleSet {
            kind: self.grid.kind,
            big_n: self.grid.big_n,
            n: self.grid.n,
            values,
        }
    }

    /// `A_k = Σ_s w_s f(s) basis_k(s) / ‖basis_k‖²`.
    pub fn forward(&self, samples: &SampleSet) -> Result<Spectrum> {
        let g = &self.grid;
        if samples.kind != g.kind || samples.big_n != g.big_n || samples.n != g.n {
            return Err(Error::Invalid(format!(
                "samples of {} at N={} n={} given to the transform {} at N={} n={}",
                samples.kind, samples.big_n, samples.n, g.kind, g.big_n, g.n
            )));
        }
        if samples.values.len() != g.len() {
            return Err(Error::SizeMismatch {
                expected: g.len(),
                got: samples.values.len(),
            });
        }
        let m = g.labels.len();
        let coefficients = (0..m)
            .into_par_iter()
            .map(|k| {
                let mut acc = NeumaierSum::new();
                for (s, (&w, &f)) in self.weights.iter().zip(&samples.values).enumerate() {
                    acc += w * f * self.basis[s * m + k];
                }
                acc.value() / self.norms[k]
            })
            .collect();
        Ok(Spectrum {
            kind: g.kind,
            big_n: g.big_n,
            n: g.n,
            labels: self.labels().cloned().collect(),
            coefficients,
        })
    }

    /// Values of the interpolant at the grid points.
    pub fn synthesize(&self, spectrum: &Spectrum) -> Vec<f64> {
        let m = self.grid.labels.len();
        (0..self.grid.len())
            .map(|s| {
                let row = &self.basis[s * m..(s + 1) * m];
                row.iter()
                    .zip(&spectrum.coefficients)
                    .map(|(b, a)| b * a)
                    .sum::<NeumaierSum>()
                    .value()
            })
            .collect()
    }

    /// Weighted discrete inner products of all pairs of basis functions.
    pub fn gram_matrix(&self) -> Vec<Vec<f64>> {
        let m = self.grid.labels.len();
        (0..m)
            .into_par_iter()
            .map(|k| {
                (0..m)
                    .map(|l| {
                        let mut acc = NeumaierSum::new();
                        for (s, &w) in self.weights.iter().enumerate() {
                            acc += w * self.basis[s * m + k] * self.basis[s * m + l];
                        }
                        acc.value()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Forward transform of samples on the grid of their kind.
pub fn forward(samples: &SampleSet) -> Result<Spectrum> {
    Transform::new(samples.kind, samples.big_n, samples.n).forward(samples)
}

/// The interpolant `ψ(x) = Σ_k A_k basis_k(x)`.
pub fn inverse(spectrum: &Spectrum, x: &[f64]) -> Result<f64> {
    if x.len() != spectrum.n {
        return Err(Error::DimensionMismatch {
            expected: spectrum.n,
            got: x.len(),
        });
    }
    let table = CosineTable::new(x, max_halves(&spectrum.labels));
    Ok(spectrum
        .labels
        .iter()
        .zip(&spectrum.coefficients)
        .map(|(k, a)| a * table.eval(spectrum.kind.symmetry, k.halves()))
        .sum::<NeumaierSum>()
        .value())
}

pub fn gram_matrix(kind: TransformKind, big_n: usize, n: usize) -> Vec<Vec<f64>> {
    Transform::new(kind, big_n, n).gram_matrix()
}

/// The Gaussian bump `exp(-‖x - x₀‖² / (2α²) + β)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianBump {
    pub alpha: f64,
    pub beta: f64,
    pub center: Vec<f64>,
}

impl GaussianBump {
    /// Parameters of the reference interpolation experiment in three dimensions.
    pub fn reference() -> Self {
        GaussianBump {
            alpha: 0.079,
            beta: 3.0,
            center: vec![0.8, 0.54, 0.3],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let d2: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        (-d2 / (2.0 * self.alpha * self.alpha) + self.beta).exp()
    }
}

pub fn model_function(alpha: f64, beta: f64, center: Vec<f64>) -> Result<GaussianBump> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Invalid(format!("alpha must be positive, got {alpha}")));
    }
    Ok(GaussianBump {
        alpha,
        beta,
        center,
    })
}

/// Tensor Gauss–Legendre rule on the cube, pulled back to the fundamental
/// domain `1 ≥ x₁ ≥ … ≥ xₙ ≥ 0` by `x_j = u₁⋯u_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub points_per_axis: usize,
    /// When set, the integral is recomputed with this many points per axis
    /// and the two results must agree to `rel_tol`.
    pub check_points: Option<usize>,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            points_per_axis: 48,
            check_points: None,
            rel_tol: 1e-6,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(points: usize) -> Result<Vec<(f64, f64)>> {
    let degree = NonZeroUsize::new(points)
        .ok_or_else(|| Error::Invalid("quadrature needs at least one point".into()))?;
    let rule = GaussLegendre::new(degree);
    Ok(rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect())
}

/// `∫_F g(x) dx` with the collapsed-cube rule.
pub fn integrate_over_domain<G>(n: usize, points: usize, g: G) -> Result<f64>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let rule = gauss_legendre_unit(points)?;
    let partial: Vec<f64> = rule
        .par_iter()
        .map(|&(u, w)| {
            let mut x = vec![0.0; n];
            x[0] = u;
            let weight = w * u.powi(n as i32 - 1);
            walk_simplex(&rule, n, 1, u, weight, &mut x, &g)
        })
        .collect();
    Ok(partial.into_iter().sum::<NeumaierSum>().value())
}

fn walk_simplex<G: Fn(&[f64]) -> f64>(
    rule: &[(f64, f64)],
    n: usize,
    level: usize,
    prefix: f64,
    weight: f64,
    x: &mut Vec<f64>,
    g: &G,
) -> f64 {
    if level == n {
        return weight * g(x);
    }
    let mut acc = NeumaierSum::new();
    for &(u, w) in rule {
        let p = prefix * u;
        x[level] = p;
        acc += walk_simplex(
            rule,
            n,
            level + 1,
            p,
            weight * w * u.powi((n - level - 1) as i32),
            x,
            g,
        );
    }
    acc.value()
}

/// The interpolant as a dense coefficient tensor over per-axis half
/// frequencies, so that `ψ(x) = Σ_h B[h] Π_i cos(π h_i x_i / 2)`.
struct DenseInterpolant {
    n: usize,
    side: usize,
    tensor: Vec<f64>,
}

impl DenseInterpolant {
    fn new(spectrum: &Spectrum) -> Self {
        let n = spectrum.n;
        let side = max_halves(&spectrum.labels) + 1;
        let mut tensor = vec![0.0; side.pow(n as u32)];
        for (k, &a) in spectrum.labels.iter().zip(&spectrum.coefficients) {
            if a == 0.0 {
                continue;
            }
            for p in crate::kernels::permutations(n) {
                let idx = (0..n).fold(0usize, |acc, i| {
                    acc * side + k.halves()[p.map[i]].unsigned_abs() as usize
                });
                tensor[idx] += match spectrum.kind.symmetry {
                    Symmetry::Sym => a,
                    Symmetry::Anti => f64::from(p.sign) * a,
                };
            }
        }
        DenseInterpolant { n, side, tensor }
    }

    fn contract(&self, tensor: &[f64], x: f64) -> Vec<f64> {
        let rest = tensor.len() / self.side;
        let mut out = vec![0.0; rest];
        for h in 0..self.side {
            let c = (std::f64::consts::FRAC_PI_2 * h as f64 * x).cos();
            let slice = &tensor[h * rest..(h + 1) * rest];
            for (o, t) in out.iter_mut().zip(slice) {
                *o += c * t;
            }
        }
        out
    }
}

fn squared_error<F>(spectrum: &Spectrum, f: &F, points: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let n = spectrum.n;
    let dense = DenseInterpolant::new(spectrum);
    let rule = gauss_legendre_unit(points)?;
    let partial: Vec<f64> = rule
        .par_iter()
        .map(|&(u, w)| {
            let mut x = vec![0.0; n];
            x[0] = u;
            let reduced = dense.contract(&dense.tensor, u);
            error_level(
                &dense,
                &rule,
                1,
                u,
                w * u.powi(n as i32 - 1),
                &reduced,
                &mut x,
                f,
            )
        })
        .collect();
    Ok(partial.into_iter().sum::<NeumaierSum>().value())
}

#[allow(clippy::too_many_arguments)]
fn error_level<F: Fn(&[f64]) -> f64>(
    dense: &DenseInterpolant,
    rule: &[(f64, f64)],
    level: usize,
    prefix: f64,
    weight: f64,
    tensor: &[f64],
    x: &mut Vec<f64>,
    f: &F,
) -> f64 {
    let n = dense.n;
    if level == n {
        let diff = f(x) - tensor[0];
        return weight * diff * diff;
    }
    let mut acc = NeumaierSum::new();
    for &(u, w) in rule {
        let p = prefix * u;
        x[level] = p;
        let reduced = dense.contract(tensor, p);
        acc += error_level(
            dense,
            rule,
            level + 1,
            p,
            weight * w * u.powi((n - level - 1) as i32),
            &reduced,
            x,
            f,
        );
    }
    acc.value()
}

/// `∫_F |f - ψ|² dx` for the interpolant `ψ` of `spectrum`.
pub fn interpolant_error<F>(spectrum: &Spectrum, f: F, quad: &QuadratureConfig) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let value = squared_error(spectrum, &f, quad.points_per_axis)?;
    if let Some(check) = quad.check_points {
        let other = squared_error(spectrum, &f, check)?;
        let scale = value.abs().max(other.abs()).max(f64::MIN_POSITIVE);
        if (value - other).abs() > quad.rel_tol * scale {
            return Err(Error::QuadratureNotConverged {
                coarse: value,
                fine: other,
                coarse_points: quad.points_per_axis,
                fine_points: check,
            });
        }
    }
    Ok(value)
}

/// Interpolates `f` with the transform of `kind` at resolution `N` and
/// returns `∫_F |f - ψ|² dx`.
pub fn interpolation_error<F>(
    kind: TransformKind,
    big_n: usize,
    n: usize,
    f: F,
    quad: &QuadratureConfig,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let transform = Transform::new(kind, big_n, n);
    let spectrum = transform.forward(&transform.samples(&f))?;
    interpolant_error(&spectrum, f, quad)
}
