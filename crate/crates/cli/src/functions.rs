//! Built-in test functions for sampling on grids.

use std::str::FromStr;

use symcos::grids::TransformKind;
use symcos::kernels::{eval_cos, Symmetry};
use symcos::poly::RationalPolynomial;
use symcos::symmetry::Label;
use symcos::transforms::{model_function, GaussianBump};

use crate::error::{CliError, CliResult};

/// `bump`, `bump:alpha,beta,c1,...,cn`, `poly:<polynomial in x1..xn>` or
/// `basis:k1,...,kn` (the transform's own basis function `k`, unshifted).
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Bump(Option<Vec<f64>>),
    Poly(String),
    Basis(Vec<i64>),
}

impl FromStr for FunctionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        match name.trim() {
            "bump" if args.is_empty() => Ok(FunctionSpec::Bump(None)),
            "bump" => args
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()
                .map(|v| FunctionSpec::Bump(Some(v))),
            "poly" => Ok(FunctionSpec::Poly(args.to_string())),
            "basis" => args
                .split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()
                .map(FunctionSpec::Basis),
            other => Err(format!("unknown function {other:?} (bump, poly:..., basis:...)")),
        }
    }
}

/// A function of `x` ready for evaluation.
pub enum SampleFunction {
    Bump(GaussianBump),
    Poly(RationalPolynomial),
    Basis(Symmetry, Label),
}

impl SampleFunction {
    pub fn new(spec: &FunctionSpec, kind: TransformKind, n: usize) -> CliResult<Self> {
        match spec {
            FunctionSpec::Bump(None) => {
                let bump = GaussianBump::reference();
                if n != bump.center.len() {
                    return Err(CliError::Validation(format!(
                        "the default bump lives in {} dimensions; pass bump:alpha,beta,c1,...,c{n}",
                        bump.center.len()
                    )));
                }
                Ok(SampleFunction::Bump(bump))
            }
            FunctionSpec::Bump(Some(values)) => {
                if values.len() != n + 2 {
                    return Err(CliError::Validation(format!(
                        "bump needs alpha, beta and {n} center coordinates"
                    )));
                }
                Ok(SampleFunction::Bump(model_function(
                    values[0],
                    values[1],
                    values[2..].to_vec(),
                )?))
            }
            FunctionSpec::Poly(text) => Ok(SampleFunction::Poly(RationalPolynomial::parse(text, n)?)),
            FunctionSpec::Basis(k) => {
                if k.len() != n {
                    return Err(CliError::Validation(format!(
                        "basis label needs {n} components"
                    )));
                }
                let label = Label::integer(k).shifted(kind.dct.label_shift());
                Ok(SampleFunction::Basis(kind.symmetry, label))
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            SampleFunction::Bump(b) => b.eval(x),
            SampleFunction::Poly(p) => p.eval(x).unwrap_or(f64::NAN),
            SampleFunction::Basis(s, k) => eval_cos(*s, k, x).unwrap_or(f64::NAN),
        }
    }
}
