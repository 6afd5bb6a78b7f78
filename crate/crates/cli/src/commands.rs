use std::fmt::Write as _;
use std::path::PathBuf;

use num_traits::{Signed, ToPrimitive};
use symcos::cubature::{build_rule, exact_integral, is_supported};
use symcos::grids::{point_grid, DctType, TransformKind};
use symcos::kernels::{in_fundamental_domain, Symmetry, MAX_DIM};
use symcos::poly::{coefficient_tables, family_polynomial, phi_map, Family, PolynomialRecord, RationalPolynomial};
use symcos::symmetry::Label;
use symcos::transforms::{inverse, interpolant_error, QuadratureConfig, SampleSet, Spectrum, Transform};

use crate::error::{CliError, CliResult};
use crate::functions::{FunctionSpec, SampleFunction};
use crate::output::{emit, read};
use crate::reference::{INTERPOLATION_ERRORS, INTERPOLATION_RTOL};

fn check_dims(n: usize, big_n: usize) -> CliResult<()> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(CliError::Validation(format!("--n must be in 1..={MAX_DIM}, got {n}")));
    }
    if big_n == 0 {
        return Err(CliError::Validation("--N must be positive".into()));
    }
    Ok(())
}

pub struct NodesRequest {
    pub kind: TransformKind,
    pub n: usize,
    pub big_n: usize,
    pub image: bool,
    pub output: Option<PathBuf>,
}

pub fn nodes(req: &NodesRequest) -> CliResult<()> {
    check_dims(req.n, req.big_n)?;
    let grid = point_grid(req.kind, req.big_n, req.n);
    let text = if req.image {
        let mut out = String::new();
        let cols: Vec<String> = (1..=req.n)
            .map(|i| format!("r{i}"))
            .chain((1..=req.n).map(|i| format!("Y{i}")))
            .collect();
        out.push_str(&cols.join(","));
        out.push('\n');
        for e in &grid.entries {
            let y = phi_map(&e.point_f64());
            let row: Vec<String> = e
                .r
                .iter()
                .map(|v| v.to_string())
                .chain(y.iter().map(|v| format!("{v:.16e}")))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    } else {
        grid.to_csv()
    };
    emit(req.output.as_deref(), &text)
}

/// A coordinate plane `x_j = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPlane {
    pub axis: usize,
    pub value: f64,
}

impl std::str::FromStr for EvalPlane {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| format!("expected x<j>=<value>, got {s:?}"))?;
        let axis: usize = lhs
            .trim()
            .trim_start_matches(['x', 'X'])
            .parse()
            .map_err(|_| format!("bad axis in {s:?}"))?;
        if axis == 0 {
            return Err("axes are numbered from 1".into());
        }
        let value = match rhs.trim().split_once('/') {
            Some((p, q)) => {
                let p: f64 = p.parse().map_err(|_| format!("bad value in {s:?}"))?;
                let q: f64 = q.parse().map_err(|_| format!("bad value in {s:?}"))?;
                p / q
            }
            None => rhs.trim().parse().map_err(|_| format!("bad value in {s:?}"))?,
        };
        Ok(EvalPlane {
            axis: axis - 1,
            value,
        })
    }
}

pub struct TransformRequest {
    pub kind: TransformKind,
    pub n: usize,
    pub big_n: usize,
    pub input: Option<PathBuf>,
    pub function: Option<FunctionSpec>,
    pub csv: bool,
    pub output: Option<PathBuf>,
    pub eval_plane: Option<EvalPlane>,
    pub lattice: usize,
    pub plane_output: Option<PathBuf>,
}

pub fn transform(req: &TransformRequest) -> CliResult<()> {
    check_dims(req.n, req.big_n)?;
    if let Some(plane) = req.eval_plane {
        if plane.axis >= req.n || !(0.0..=1.0).contains(&plane.value) {
            return Err(CliError::Validation(format!(
                "plane x{}={} is outside the domain",
                plane.axis + 1,
                plane.value
            )));
        }
        if req.lattice < 2 {
            return Err(CliError::Validation("--lattice needs at least 2 points".into()));
        }
    }
    let function = req
        .function
        .as_ref()
        .map(|spec| SampleFunction::new(spec, req.kind, req.n))
        .transpose()?;
    let t = Transform::new(req.kind, req.big_n, req.n);
    let samples = match (&req.input, &function) {
        (Some(path), None) => SampleSet::from_csv(req.kind, req.big_n, req.n, &read(path)?)?,
        (None, Some(f)) => t.samples(|x| f.eval(x)),
        _ => {
            return Err(CliError::Validation(
                "give exactly one of --input and --function".into(),
            ))
        }
    };
    let spectrum = t.forward(&samples)?;
    let text = if req.csv {
        spectrum.to_csv()?
    } else {
        spectrum.to_json()? + "\n"
    };
    emit(req.output.as_deref(), &text)?;
    if let Some(plane) = req.eval_plane {
        let lattice = plane_lattice(&spectrum, plane, req.lattice, function.as_ref())?;
        emit(req.plane_output.as_deref(), &lattice)?;
    }
    Ok(())
}

fn plane_lattice(
    spectrum: &Spectrum,
    plane: EvalPlane,
    m: usize,
    f: Option<&SampleFunction>,
) -> CliResult<String> {
    let n = spectrum.n;
    let free: Vec<usize> = (0..n).filter(|&i| i != plane.axis).collect();
    let mut out = String::new();
    let mut cols: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    cols.push("psi".into());
    if f.is_some() {
        cols.push("f".into());
    }
    out.push_str(&cols.join(","));
    out.push('\n');
    let total = m.pow(free.len() as u32);
    let mut x = vec![plane.value; n];
    for idx in 0..total {
        let mut rest = idx;
        for &axis in free.iter().rev() {
            x[axis] = (rest % m) as f64 / (m - 1) as f64;
            rest /= m;
        }
        if !in_fundamental_domain(&x, 1e-12) {
            continue;
        }
        let psi = inverse(spectrum, &x)?;
        let _ = write!(
            out,
            "{},{psi:.16e}",
            x.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",")
        );
        if let Some(f) = f {
            let _ = write!(out, ",{:.16e}", f.eval(&x));
        }
        out.push('\n');
    }
    Ok(out)
}

pub struct InterpRequest {
    pub kind: Option<TransformKind>,
    pub n: usize,
    pub big_ns: Vec<usize>,
    pub function: FunctionSpec,
    pub quad: QuadratureConfig,
    pub reference: bool,
    pub output: Option<PathBuf>,
}

fn error_of(kind: TransformKind, big_n: usize, n: usize, f: &SampleFunction, quad: &QuadratureConfig) -> CliResult<f64> {
    let t = Transform::new(kind, big_n, n);
    let spectrum = t.forward(&t.samples(|x| f.eval(x)))?;
    Ok(interpolant_error(&spectrum, |x| f.eval(x), quad)?)
}

pub fn interp_error(req: &InterpRequest) -> CliResult<()> {
    for &big_n in &req.big_ns {
        check_dims(req.n, big_n)?;
    }
    if req.quad.points_per_axis == 0 {
        return Err(CliError::Validation("--quad-points must be positive".into()));
    }
    if req.reference {
        return reference_errors(req);
    }
    let kind = req
        .kind
        .ok_or_else(|| CliError::Validation("--kind and --symmetry are required".into()))?;
    let f = SampleFunction::new(&req.function, kind, req.n)?;
    let mut out = String::from("N,error\n");
    for &big_n in &req.big_ns {
        let e = error_of(kind, big_n, req.n, &f, &req.quad)?;
        let _ = writeln!(out, "{big_n},{e:.6e}");
    }
    emit(req.output.as_deref(), &out)
}

/// Recomputes the reference interpolation errors. The reference type VII
/// columns coincide with the type VI transform (basis `cos_k` on the grid
/// `2(r+½)/(2N-1)`); both those and the type VII values are reported.
fn reference_errors(req: &InterpRequest) -> CliResult<()> {
    if req.n != 3 || req.function != FunctionSpec::Bump(None) {
        return Err(CliError::Validation(
            "the reference comparison uses n = 3 and the default bump".into(),
        ));
    }
    let f = SampleFunction::new(&req.function, TransformKind::new(DctType::V, Symmetry::Anti), 3)?;
    let columns = [
        ("V-", TransformKind::new(DctType::V, Symmetry::Anti)),
        ("VII-", TransformKind::new(DctType::VI, Symmetry::Anti)),
        ("V+", TransformKind::new(DctType::V, Symmetry::Sym)),
        ("VII+", TransformKind::new(DctType::VI, Symmetry::Sym)),
    ];
    let mut out = String::from("N,column,computed_with,reference,computed,rel_diff,status,type_vii_transform\n");
    let mut failures = 0;
    for &big_n in &req.big_ns {
        let Some((_, reference)) = INTERPOLATION_ERRORS.iter().find(|(m, _)| *m == big_n) else {
            return Err(CliError::Validation(format!("no reference value for N = {big_n}")));
        };
        for ((name, kind), &p) in columns.iter().zip(reference) {
            let e = error_of(*kind, big_n, 3, &f, &req.quad)?;
            let rel = (e - p).abs() / p;
            let ok = rel <= INTERPOLATION_RTOL;
            failures += usize::from(!ok);
            let vii = if kind.dct == DctType::VI {
                let k = TransformKind::new(DctType::VII, kind.symmetry);
                format!("{:.6e}", error_of(k, big_n, 3, &f, &req.quad)?)
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "{big_n},{name},{},{p:.6},{e:.6},{rel:.2e},{},{vii}",
                kind.dct,
                if ok { "pass" } else { "FAIL" }
            );
        }
    }
    emit(req.output.as_deref(), &out)?;
    if failures > 0 {
        return Err(CliError::Numerical(format!(
            "{failures} interpolation errors differ from the reference values by more than {INTERPOLATION_RTOL}"
        )));
    }
    Ok(())
}

pub struct PolyTableRequest {
    pub family: Family,
    pub n: usize,
    pub max_k1: usize,
    pub k: Option<Vec<i64>>,
    pub json: bool,
    pub output: Option<PathBuf>,
}

pub fn poly_table(req: &PolyTableRequest) -> CliResult<()> {
    check_dims(req.n, 1)?;
    let text = if let Some(k) = &req.k {
        if k.len() != req.n {
            return Err(CliError::Validation(format!("--k needs {} components", req.n)));
        }
        let p = family_polynomial(req.family, &Label::integer(k))?;
        if req.json {
            PolynomialRecord::new(Some(req.family), Some(k.clone()), &p)?.to_json()? + "\n"
        } else {
            format!("{p}\n")
        }
    } else if req.json {
        let labels = symcos::poly::labels_up_to(req.n, req.max_k1);
        let records = labels
            .iter()
            .rev()
            .map(|k| {
                let p = family_polynomial(req.family, k)?;
                PolynomialRecord::new(Some(req.family), k.integer_components(), &p)
            })
            .collect::<symcos::Result<Vec<_>>>()?;
        serde_json::to_string_pretty(&records).map_err(|e| CliError::Validation(e.to_string()))? + "\n"
    } else {
        coefficient_tables(req.family, req.n, req.max_k1)?
            .iter()
            .map(|t| t.to_csv())
            .collect::<Vec<_>>()
            .join("\n")
    };
    emit(req.output.as_deref(), &text)
}

pub struct CubatureRequest {
    pub family: Family,
    pub dct: DctType,
    pub n: usize,
    pub big_n: usize,
    pub poly: Option<String>,
    pub input: Option<PathBuf>,
    pub rule_output: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

/// Tolerance of the exactness verdict, relative to `1 + |oracle|`.
const EXACTNESS_TOL: f64 = 1e-9;

pub fn cubature(req: &CubatureRequest) -> CliResult<()> {
    check_dims(req.n, req.big_n)?;
    let kind = TransformKind::new(req.dct, req.family.symmetry());
    if !is_supported(req.family, kind) {
        return Err(symcos::Error::UnsupportedPairing {
            family: req.family,
            kind,
        }
        .into());
    }
    let f: RationalPolynomial = match (&req.poly, &req.input) {
        (Some(text), None) => RationalPolynomial::parse(text, req.n)?,
        (None, Some(path)) => PolynomialRecord::from_json(&read(path)?)?.polynomial(Some(req.n))?,
        (None, None) => RationalPolynomial::one(req.n),
        _ => {
            return Err(CliError::Validation(
                "give at most one of --poly and --input".into(),
            ))
        }
    };
    let rule = build_rule(req.family, kind, req.big_n, req.n)?;
    let value = rule.integrate(&f)?;
    let oracle = exact_integral(req.family, &f);
    let oracle_f = oracle.to_f64().unwrap_or(f64::NAN);
    let abs = (value - oracle_f).abs();
    let rel = abs / (1.0 + oracle_f.abs());
    let degree = f.total_degree().unwrap_or(0);
    let within = degree <= rule.exact_degree;
    let verdict = match (within, rel <= EXACTNESS_TOL) {
        (true, true) => "exact",
        (true, false) => "MISMATCH",
        (false, _) => "beyond guaranteed degree",
    };
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", req.family);
    let _ = writeln!(out, "kind: {kind}");
    let _ = writeln!(out, "N: {}", req.big_n);
    let _ = writeln!(out, "nodes: {}", rule.nodes.len());
    let _ = writeln!(out, "polynomial degree: {degree}");
    let _ = writeln!(out, "exact degree: {}", rule.exact_degree);
    let _ = writeln!(out, "rule: {value:.17e}");
    let sign = if oracle.is_negative() { "-" } else { "" };
    let _ = writeln!(
        out,
        "oracle: {sign}{}/{} ({oracle_f:.17e})",
        oracle.numer().abs(),
        oracle.denom()
    );
    let _ = writeln!(out, "absolute error: {abs:.3e}");
    let _ = writeln!(out, "relative error: {rel:.3e}");
    let _ = writeln!(out, "verdict: {verdict}");
    emit(req.output.as_deref(), &out)?;
    if let Some(path) = &req.rule_output {
        emit(Some(path), &rule.to_csv()?)?;
    }
    if verdict == "MISMATCH" {
        return Err(CliError::Numerical(format!(
            "rule and oracle differ by {rel:.3e} within the guaranteed degree"
        )));
    }
    Ok(())
}
