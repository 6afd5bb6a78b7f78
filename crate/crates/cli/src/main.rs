mod commands;
mod error;
mod functions;
mod output;
mod reference;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symcos::grids::{DctType, TransformKind};
use symcos::kernels::Symmetry;
use symcos::poly::Family;
use symcos::transforms::QuadratureConfig;

use crate::commands::EvalPlane;
use crate::error::{CliError, CliResult};
use crate::functions::FunctionSpec;

/// Discrete cosine transforms on symmetric and antisymmetric grids.
#[derive(Debug, Parser)]
#[command(name = "symcos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the point grid of a transform.
    Nodes(NodesArgs),
    /// Compute expansion coefficients from samples.
    Transform(TransformArgs),
    /// Integrated squared interpolation error for a range of N.
    InterpError(InterpArgs),
    /// Coefficient tables of a polynomial family.
    PolyTable(PolyTableArgs),
    /// Integrate a polynomial with a cubature rule.
    Cubature(CubatureArgs),
    /// Run internal consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct KindArgs {
    /// Transform type, I to VIII.
    #[arg(long)]
    kind: DctType,
    /// `sym` or `anti`.
    #[arg(long)]
    symmetry: Symmetry,
}

impl KindArgs {
    fn kind(&self) -> TransformKind {
        TransformKind::new(self.kind, self.symmetry)
    }
}

#[derive(Debug, Args)]
struct NodesArgs {
    #[command(flatten)]
    kind: KindArgs,
    /// Dimension.
    #[arg(long)]
    n: usize,
    /// Resolution.
    #[arg(long = "N")]
    big_n: usize,
    /// Print the images `Y = X(x)` of the points instead.
    #[arg(long)]
    image: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    big_n: usize,
    /// CSV of samples with columns `r1,...,rn,value`.
    #[arg(long, conflicts_with = "function")]
    input: Option<PathBuf>,
    /// `bump`, `bump:alpha,beta,c1,...`, `poly:<expr>` or `basis:k1,...`.
    #[arg(long)]
    function: Option<FunctionSpec>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Evaluate the interpolant on a plane such as `x3=1/3`.
    #[arg(long)]
    eval_plane: Option<EvalPlane>,
    /// Lattice points per free axis on the evaluation plane.
    #[arg(long, default_value_t = 41)]
    lattice: usize,
    /// Destination of the plane values.
    #[arg(long, requires = "eval_plane")]
    plane_output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InterpArgs {
    /// Transform type; not needed with `--reference`.
    #[arg(long, requires = "symmetry", required_unless_present = "reference")]
    kind: Option<DctType>,
    #[arg(long, requires = "kind")]
    symmetry: Option<Symmetry>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Comma separated resolutions.
    #[arg(long = "N-list", value_delimiter = ',', default_values_t = [5, 10, 15])]
    big_ns: Vec<usize>,
    #[arg(long, default_value = "bump")]
    function: FunctionSpec,
    /// Gauss-Legendre points per axis.
    #[arg(long, default_value_t = 48)]
    quad_points: usize,
    /// Repeat each integral with this many points and require agreement.
    #[arg(long)]
    check_points: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    check_tol: f64,
    /// Compare against the reference errors.
    #[arg(long)]
    reference: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PolyTableArgs {
    /// `I+`, `I-`, `III+` or `III-`.
    #[arg(long, allow_hyphen_values = true)]
    family: Family,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Largest first label component.
    #[arg(long, default_value_t = 3)]
    max_k1: usize,
    /// A single label, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CubatureArgs {
    #[arg(long, allow_hyphen_values = true)]
    family: Family,
    #[arg(long)]
    kind: DctType,
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    big_n: usize,
    /// Polynomial in `X1..Xn`, for example `X1^2 - 4*X2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    poly: Option<String>,
    /// Polynomial as JSON `{"terms": [{"alpha": [...], "num": .., "den": ..}]}`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the nodes and weights as CSV.
    #[arg(long)]
    rule_output: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = selftest::Suite::All)]
    suite: selftest::Suite,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long = "N", default_value_t = 5)]
    big_n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Nodes(a) => commands::nodes(&commands::NodesRequest {
            kind: a.kind.kind(),
            n: a.n,
            big_n: a.big_n,
            image: a.image,
            output: a.output,
        }),
        Command::Transform(a) => commands::transform(&commands::TransformRequest {
            kind: a.kind.kind(),
            n: a.n,
            big_n: a.big_n,
            input: a.input,
            function: a.function,
            csv: a.format == Format::Csv,
            output: a.output,
            eval_plane: a.eval_plane,
            lattice: a.lattice,
            plane_output: a.plane_output,
        }),
        Command::InterpError(a) => commands::interp_error(&commands::InterpRequest {
            kind: a.kind.zip(a.symmetry).map(|(k, s)| TransformKind::new(k, s)),
            n: a.n,
            big_ns: a.big_ns,
            function: a.function,
            quad: QuadratureConfig {
                points_per_axis: a.quad_points,
                check_points: a.check_points,
                rel_tol: a.check_tol,
            },
            reference: a.reference,
            output: a.output,
        }),
        Command::PolyTable(a) => commands::poly_table(&commands::PolyTableRequest {
            family: a.family,
            n: a.n,
            max_k1: a.max_k1,
            k: a.k,
            json: a.format == Format::Json,
            output: a.output,
        }),
        Command::Cubature(a) => commands::cubature(&commands::CubatureRequest {
            family: a.family,
            dct: a.kind,
            n: a.n,
            big_n: a.big_n,
            poly: a.poly,
            input: a.input,
            rule_output: a.rule_output,
            output: a.output,
        }),
        Command::Selftest(a) => {
            if !(1..=symcos::kernels::MAX_DIM).contains(&a.n) || a.big_n == 0 {
                return Err(CliError::Validation("selftest needs 1 <= n <= 8 and N >= 1".into()));
            }
            let settings = selftest::Settings {
                n: a.n,
                big_n: a.big_n,
                seed: a.seed,
            };
            let outcomes = selftest::run(a.suite, &settings)?;
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} checks, {failed} failed", outcomes.len());
            if failed > 0 {
                return Err(CliError::Numerical(format!("{failed} selftest checks failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
