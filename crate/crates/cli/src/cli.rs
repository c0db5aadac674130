use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sobspec_core::diagnostics::checks::ZERO_RADIUS_SLACK;
use sobspec_core::linalg::PencilConfig;
use sobspec_core::orthopoly::ROOT_RESIDUAL_TOL;
use sobspec_core::scalar::{Complex64, ExactComplex, Scalar};

use crate::commands::{self, Ctx, Output};
use crate::error::{CliError, CliResult};
use crate::manifest::{RunConfig, RunManifest, Tolerances};
use crate::reproduce::{reproduce, Example};
use crate::source_arg::{parse_bound, parse_component, parse_range, SourceArg};

pub const CACHE_ENV: &str = "SOBSPEC_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "sobspec",
    version,
    about = "Spectral diagnostics for moment and Sobolev matrices"
)]
pub struct Cli {
    /// Arithmetic: exact Gaussian rationals or binary64 complex.
    #[arg(long, value_enum, global = true, default_value = "exact")]
    pub mode: Mode,
    /// Directory for cached truncations (SOBSPEC_CACHE takes precedence).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Output file, or the report directory for `reproduce`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Table format; matrices are always JSON.
    #[arg(long, value_enum, global = true, default_value = "csv")]
    pub format: Format,
    /// Slack for bound checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moment matrix of a measure up to degree n.
    Moments {
        spec: String,
        #[arg(long)]
        n: usize,
    },
    /// Sobolev matrix from `<source>:order=<j>` components.
    Sobolev {
        #[arg(long = "component", required = true)]
        components: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// Coefficients of the monic orthogonal polynomials.
    Opoly {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        degrees: String,
    },
    /// Zeros of the monic orthogonal polynomials against a bound.
    Zeros {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        degrees: String,
        /// hull, multnorm or value:<x>.
        #[arg(long, default_value = "multnorm")]
        bound: String,
    },
    /// Extreme generalized eigenvalues of (A_n, B_n).
    Eigs {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n_range: String,
    },
    /// Diagonal ratios c_{n+1,n+1} / c_{n,n}.
    Ratio {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n_range: String,
    },
    /// Norms of multiplication by z restricted to degree n.
    Multnorm {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n_range: String,
    },
    /// Domination constants of consecutive family members.
    Dominate {
        #[arg(long = "family", required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// Tail-sum comparability of a family.
    Tailsum {
        #[arg(long = "family", required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long)]
        n: usize,
        /// Domination constant; estimated from the family when omitted.
        #[arg(long)]
        constant: Option<f64>,
    },
    /// Hull containment and support disjointness of two measures.
    Hull {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
    },
    /// Essential extrema of a weight, or of a density ratio with --den.
    WeightExtrema {
        spec: String,
        #[arg(long)]
        den: Option<String>,
    },
    /// Zero radius for Sobolev polynomials, from lists or from components.
    Thm1Bound {
        /// Comma-separated C_0..C_k (C_0 is unused).
        #[arg(long, requires = "norms", conflicts_with = "components")]
        constants: Option<String>,
        /// Comma-separated norms for orders 0..k.
        #[arg(long, requires = "constants")]
        norms: Option<String>,
        #[arg(long = "component")]
        components: Vec<String>,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Full report for one of the worked examples.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
    },
}

fn parse_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{t}` in `{text}`")))
        })
        .collect()
}

fn components(texts: &[String]) -> CliResult<Vec<(SourceArg, usize)>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_component(t, i))
        .collect()
}

fn sources(texts: &[String]) -> CliResult<Vec<SourceArg>> {
    texts.iter().map(|t| SourceArg::parse(t)).collect()
}

fn dispatch<S: Scalar>(ctx: &mut Ctx, command: &Command) -> CliResult<Output> {
    match command {
        Command::Moments { spec, n } => commands::moments::<S>(ctx, &SourceArg::parse(spec)?, *n),
        Command::Sobolev { components: c, n } => commands::sobolev::<S>(ctx, &components(c)?, *n),
        Command::Opoly { matrix, degrees } => {
            commands::opoly::<S>(ctx, &SourceArg::parse(matrix)?, parse_range(degrees)?)
        }
        Command::Zeros {
            matrix,
            degrees,
            bound,
        } => commands::zeros_cmd::<S>(
            ctx,
            &SourceArg::parse(matrix)?,
            parse_range(degrees)?,
            parse_bound(bound)?,
        ),
        Command::Eigs { a, b, n_range } => commands::eigs::<S>(
            ctx,
            &SourceArg::parse(a)?,
            &SourceArg::parse(b)?,
            parse_range(n_range)?,
        ),
        Command::Ratio { matrix, n_range } => {
            commands::ratio::<S>(ctx, &SourceArg::parse(matrix)?, parse_range(n_range)?)
        }
        Command::Multnorm { matrix, n_range } => {
            commands::multnorm::<S>(ctx, &SourceArg::parse(matrix)?, parse_range(n_range)?)
        }
        Command::Dominate { family, n } => commands::dominate::<S>(ctx, &sources(family)?, *n),
        Command::Tailsum {
            family,
            n,
            constant,
        } => commands::tailsum::<S>(ctx, &sources(family)?, *n, *constant),
        Command::Hull { inner, outer } => {
            commands::hull(ctx, &SourceArg::parse(inner)?, &SourceArg::parse(outer)?)
        }
        Command::WeightExtrema { spec, den } => {
            let den = den.as_deref().map(SourceArg::parse).transpose()?;
            commands::weight_extrema_cmd(ctx, &SourceArg::parse(spec)?, den.as_ref())
        }
        Command::Thm1Bound {
            constants,
            norms,
            components: c,
            n,
        } => match (constants, norms) {
            (Some(cs), Some(ns)) => commands::thm1_from_lists(&parse_list(cs)?, &parse_list(ns)?),
            _ if !c.is_empty() => commands::thm1_from_components::<S>(ctx, &components(c)?, *n),
            _ => Err(CliError::Usage(
                "thm1-bound needs --constants/--norms or --component".into(),
            )),
        },
        Command::Reproduce { .. } => unreachable!("handled by run"),
    }
}

fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Matrix(m), _) => m.to_json(),
        (Output::Table(t), Format::Csv) => t.to_csv(),
        (Output::Table(t), Format::Json) => t.to_json(),
    }
}

fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Runs the command; returns the outputs written (stdout is not listed).
fn execute(cli: &Cli, ctx: &mut Ctx) -> CliResult<Vec<PathBuf>> {
    if let Command::Reproduce { example } = &cli.command {
        let dir = cli
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}-report", example.name())));
        let outcome = reproduce(ctx, *example, &dir)?;
        println!("report written to {}", dir.display());
        if outcome.failures > 0 {
            return Err(CliError::ChecksFailed(outcome.failures));
        }
        return Ok(outcome.outputs);
    }
    let out = match cli.mode {
        Mode::Exact => dispatch::<ExactComplex>(ctx, &cli.command)?,
        Mode::Float => dispatch::<Complex64>(ctx, &cli.command)?,
    };
    let text = render(&out, cli.format);
    match &cli.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(vec![path.clone()])
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
            Ok(Vec::new())
        }
    }
}

fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or(flag)
}

/// Parses `args`, runs the command, writes the manifest and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        cache_dir: cache_dir(cli.cache_dir.clone()),
        tol: cli.tol,
        inputs: Vec::new(),
    };
    let result = execute(&cli, &mut ctx);
    let (outputs, code) = match result {
        Ok(outputs) => (outputs, 0),
        Err(e) => {
            eprintln!("error: {e}");
            (Vec::new(), e.exit_code())
        }
    };
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        command_line: args
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        config: RunConfig {
            mode: format!("{:?}", cli.mode).to_lowercase(),
            format: format!("{:?}", cli.format).to_lowercase(),
            cache_dir: ctx.cache_dir.clone(),
            out: cli.out.clone(),
        },
        tolerances: Tolerances {
            tol: cli.tol,
            condition_threshold: PencilConfig::default().condition_threshold,
            root_residual: ROOT_RESIDUAL_TOL,
            zero_radius_slack: ZERO_RADIUS_SLACK,
        },
        inputs: ctx.inputs,
        outputs,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        exit_code: code,
    };
    let manifest_path = match (&cli.command, &cli.out) {
        (Command::Reproduce { example }, out) => Some(
            out.clone()
                .unwrap_or_else(|| PathBuf::from(format!("{}-report", example.name())))
                .join("manifest.json"),
        ),
        (_, Some(out)) => {
            let mut name = out.clone().into_os_string();
            name.push(".manifest.json");
            Some(PathBuf::from(name))
        }
        (_, None) => None,
    };
    match manifest_path {
        Some(path) => {
            if let Err(e) = write_file(&path, &manifest.to_json()) {
                eprintln!("error: {e}");
            }
        }
        None => eprint!("{}", manifest.to_json()),
    }
    code
}
