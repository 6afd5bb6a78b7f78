//! Internal consistency suites run by `symcos selftest`.

use std::fmt;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcos::cubature::{build_rule, exact_integral, is_gaussian, node_vanishing_check, pairings};
use symcos::grids::TransformKind;
use symcos::kernels::{eval_cos, Symmetry};
use symcos::poly::{family_polynomial, labels_up_to, phi_map, product_rule, Family, RationalPolynomial};
use symcos::symmetry::Label;
use symcos::transforms::{SampleSet, Transform};
use symcos::rational;

use crate::error::CliResult;
use crate::reference::POLYNOMIALS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gram,
    Roundtrip,
    Tables,
    Cubature,
    Vanishing,
    Identities,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Gram,
        Suite::Roundtrip,
        Suite::Tables,
        Suite::Cubature,
        Suite::Vanishing,
        Suite::Identities,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

pub struct Settings {
    pub n: usize,
    pub big_n: usize,
    pub seed: u64,
}

/// One line of the report.
pub struct Outcome {
    pub suite: Suite,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status} {:<10} {:<24} {}", self.suite, self.case, self.detail)
    }
}

fn outcome(suite: Suite, case: impl Into<String>, value: f64, tol: f64) -> Outcome {
    Outcome {
        suite,
        case: case.into(),
        passed: value <= tol,
        detail: format!("max deviation {value:.2e} (tol {tol:.0e})"),
    }
}

pub fn run(suite: Suite, settings: &Settings) -> CliResult<Vec<Outcome>> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut out = Vec::new();
    for s in suites {
        match s {
            Suite::Gram => gram(settings, &mut out),
            Suite::Roundtrip => roundtrip(settings, &mut rng, &mut out)?,
            Suite::Tables => tables(&mut out)?,
            Suite::Cubature => cubature(settings, &mut rng, &mut out)?,
            Suite::Vanishing => vanishing(settings, &mut out)?,
            Suite::Identities => identities(settings, &mut rng, &mut out)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(out)
}

fn gram(settings: &Settings, out: &mut Vec<Outcome>) {
    for kind in TransformKind::all() {
        let t = Transform::new(kind, settings.big_n, settings.n);
        let g = t.gram_matrix();
        let norms = t.spectral_norms();
        let mut worst: f64 = 0.0;
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j { norms[i] } else { 0.0 };
                worst = worst.max((v - expected).abs() / norms[i].max(norms[j]));
            }
        }
        out.push(outcome(Suite::Gram, format!("{kind} [{}]", g.len()), worst, 1e-10));
    }
}

fn roundtrip(settings: &Settings, rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> CliResult<()> {
    for kind in TransformKind::all() {
        let t = Transform::new(kind, settings.big_n, settings.n);
        let values: Vec<f64> = (0..t.grid().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let samples = SampleSet::new(kind, settings.big_n, settings.n, values.clone())?;
        let back = t.synthesize(&t.forward(&samples)?);
        let worst = values
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        out.push(outcome(Suite::Roundtrip, kind.to_string(), worst, 1e-10));
    }
    Ok(())
}

fn tables(out: &mut Vec<Outcome>) -> CliResult<()> {
    for family in Family::ALL {
        let rows: Vec<_> = POLYNOMIALS.iter().filter(|(f, _, _)| *f == family).collect();
        let mut mismatched = Vec::new();
        for (_, k, text) in &rows {
            let expected = RationalPolynomial::parse(text, 3)?;
            let computed = family_polynomial(family, &Label::integer(k))?;
            if *computed != expected {
                mismatched.push(format!("{k:?}"));
            }
        }
        out.push(Outcome {
            suite: Suite::Tables,
            case: family.to_string(),
            passed: mismatched.is_empty(),
            detail: if mismatched.is_empty() {
                format!("{} polynomials match exactly", rows.len())
            } else {
                format!("mismatch at {}", mismatched.join(" "))
            },
        });
    }
    Ok(())
}

/// A dense polynomial of total degree `degree` with small random rational
/// coefficients.
pub fn random_polynomial(rng: &mut impl Rng, n: usize, degree: u32) -> CliResult<RationalPolynomial> {
    let mut terms = Vec::new();
    let mut alpha = vec![0u32; n];
    loop {
        if alpha.iter().sum::<u32>() <= degree {
            let num = rng.gen_range(-9..=9);
            let den = rng.gen_range(1..=9);
            terms.push((alpha.clone(), rational(num, den)));
        }
        let mut i = 0;
        while i < n {
            alpha[i] += 1;
            if alpha[i] <= degree {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(RationalPolynomial::from_terms(n, terms)?)
}

fn cubature(settings: &Settings, rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> CliResult<()> {
    for (family, kind) in pairings() {
        let case = format!("{family} {kind}");
        let rule = match build_rule(family, kind, settings.big_n, settings.n) {
            Ok(rule) => rule,
            Err(e @ symcos::Error::Precondition { .. }) => {
                out.push(Outcome {
                    suite: Suite::Cubature,
                    case,
                    passed: true,
                    detail: format!("skipped: {e}"),
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let p = random_polynomial(rng, settings.n, rule.exact_degree)?;
            let exact = exact_integral(family, &p).to_f64().unwrap_or(f64::NAN);
            let approx = rule.integrate(&p)?;
            worst = worst.max((approx - exact).abs() / (1.0 + exact.abs()));
        }
        out.push(outcome(Suite::Cubature, case, worst, 1e-9));
    }
    Ok(())
}

fn vanishing(settings: &Settings, out: &mut Vec<Outcome>) -> CliResult<()> {
    for (family, kind) in pairings().into_iter().filter(|(f, k)| is_gaussian(*f, *k)) {
        let case = format!("{family} {kind}");
        match node_vanishing_check(family, kind, settings.big_n, settings.n) {
            Ok(worst) => out.push(outcome(Suite::Vanishing, case, worst, 1e-7)),
            Err(e @ symcos::Error::Precondition { .. }) => out.push(Outcome {
                suite: Suite::Vanishing,
                case,
                passed: true,
                detail: format!("skipped: {e}"),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn random_domain_point(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    x.sort_by(|a, b| b.total_cmp(a));
    x
}

fn identities(settings: &Settings, rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> CliResult<()> {
    let n = settings.n;
    let points: Vec<Vec<f64>> = (0..16).map(|_| random_domain_point(rng, n)).collect();
    for family in Family::ALL {
        let mut worst: f64 = 0.0;
        for k in labels_up_to(n, 4) {
            let p = family_polynomial(family, &k)?;
            let target = family.target_label(&k);
            for x in &points {
                let lhs = p.eval(&phi_map(x))? * family.eval_seed(x)?;
                let rhs = eval_cos(family.symmetry(), &target, x)?;
                worst = worst.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
            }
        }
        out.push(outcome(Suite::Identities, format!("polynomial {family}"), worst, 1e-9));
    }
    let symmetries = [Symmetry::Sym, Symmetry::Anti];
    for sa in symmetries {
        for sb in symmetries {
            let mut worst: f64 = 0.0;
            for _ in 0..8 {
                let a = random_label(rng, n, sa);
                let b = random_label(rng, n, sb);
                let product = product_rule(sa, &a, sb, &b);
                for x in &points {
                    let lhs = product.eval(x)?;
                    let rhs = eval_cos(sa, &a, x)? * eval_cos(sb, &b, x)?;
                    worst = worst.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
                }
            }
            out.push(outcome(Suite::Identities, format!("product {sa}·{sb}"), worst, 1e-9));
        }
    }
    Ok(())
}

fn random_label(rng: &mut impl Rng, n: usize, symmetry: Symmetry) -> Label {
    let mut k: Vec<i64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
    k.sort_by(|a, b| b.cmp(a));
    if symmetry == Symmetry::Anti {
        // strictly decreasing
        for i in (0..n).rev() {
            k[i] += (n - 1 - i) as i64;
        }
    }
    Label::integer(&k)
}
