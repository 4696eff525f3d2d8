use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qabel::app::{
    run_cf, run_limit, run_qbracket, run_verify, Backend, CfConfig, FunctionSource, LimitConfig, OutputFormat,
    PathConfig, QBracketConfig, VerifyConfig,
};
use qabel::Outcome;
use qabel_core::accel::AccelMethod;
use qabel_core::stolz::StolzPath;

/// Abelian limits of q-series built from arithmetic functions.
#[derive(Parser, Debug)]
#[command(name = "qabel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check series identities coefficient by coefficient.
    Verify(VerifyArgs),
    /// Estimate the radial or Stolz-sector limit q -> 1 of a form.
    Limit(LimitArgs),
    /// Compute the q-bracket of a partition function.
    Qbracket(QBracketArgs),
    /// Compare Euler continued-fraction convergents with partial sums.
    Cf(CfArgs),
}

#[derive(Args, Debug)]
struct Shared {
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
    #[arg(long)]
    precision: Option<u32>,
    /// Record wall-clock milliseconds (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
#[group(id = "function_source", multiple = false)]
struct FunctionArgs {
    #[arg(long)]
    function: Option<String>,
    #[arg(long, value_name = "PATH")]
    function_file: Option<PathBuf>,
}

impl FunctionArgs {
    fn source(&self) -> Option<FunctionSource> {
        match (&self.function, &self.function_file) {
            (Some(n), _) => Some(FunctionSource::Name(n.clone())),
            (_, Some(p)) => Some(FunctionSource::File(p.clone())),
            _ => None,
        }
    }
}

#[derive(Args, Debug)]
struct PathArgs {
    #[arg(long = "stolz-m", default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = StolzPath::DEFAULT_DELTA0)]
    delta0: f64,
    #[arg(long, default_value_t = StolzPath::DEFAULT_RATIO)]
    ratio: f64,
    #[arg(long, default_value_t = StolzPath::DEFAULT_POINTS)]
    points: usize,
    #[arg(long, default_value = "wynn", value_parser = parse_accel)]
    accel: AccelMethod,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
}

impl PathArgs {
    fn config(&self) -> PathConfig {
        PathConfig {
            m: self.m,
            theta: self.theta,
            delta0: self.delta0,
            ratio: self.ratio,
            points: self.points,
        }
    }
}

fn parse_accel(s: &str) -> Result<AccelMethod, String> {
    s.parse().map_err(|e: qabel_core::Error| e.to_string())
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    shared: Shared,
    /// Identity to check; defaults to the full suite.
    #[arg(long, conflicts_with = "all")]
    identity: Option<String>,
    /// Run the full suite.
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    function: FunctionArgs,
    /// Partition function for the q-bracket identities.
    #[arg(long)]
    a: Option<String>,
    /// q-binomial parameter.
    #[arg(long)]
    n: Option<usize>,
    /// Factor omitted by the perturbed Euler check.
    #[arg(long, default_value_t = 2)]
    drop_k: usize,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[command(flatten)]
    shared: Shared,
    /// Form tag, or `lambert` for the Lambert ratio.
    #[arg(long)]
    form: String,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    path: PathArgs,
    #[arg(long)]
    cesaro_depth: Option<usize>,
}

#[derive(Args, Debug)]
struct QBracketArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    a: String,
    /// Also estimate the limit q -> 1, directly and through A_n.
    #[arg(long)]
    limit: bool,
    #[command(flatten)]
    path: PathArgs,
    #[arg(long, default_value_t = 20)]
    cesaro_depth: usize,
}

#[derive(Args, Debug)]
struct CfArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    form: String,
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
    q: f64,
    #[arg(long, default_value_t = 30)]
    depth: usize,
}

fn dispatch(cli: Cli) -> anyhow::Result<Outcome> {
    Ok(match cli.command {
        Command::Verify(a) => {
            let mut cfg = VerifyConfig {
                identity: a.identity.unwrap_or_else(|| "all".into()),
                function: a.function.source(),
                a: a.a,
                n: a.n,
                drop_k: a.drop_k,
                backend: a.shared.backend.unwrap_or(Backend::Exact),
                output: a.shared.output,
                timings: a.shared.timings,
                ..VerifyConfig::default()
            };
            if let Some(order) = a.shared.order {
                cfg.order = order;
            }
            run_verify(&cfg)?
        }
        Command::Limit(a) => {
            let source = a.function.source().ok_or_else(|| anyhow::anyhow!("--function or --function-file is required"))?;
            let cfg = LimitConfig {
                form: a.form,
                function: source,
                order: a.shared.order,
                path: a.path.config(),
                accel: a.path.accel,
                backend: a.shared.backend.unwrap_or(Backend::Float),
                precision: a.shared.precision,
                cesaro_depth: a.cesaro_depth,
                tolerance: a.path.tolerance,
                output: a.shared.output,
                timings: a.shared.timings,
            };
            run_limit(&cfg)?
        }
        Command::Qbracket(a) => {
            let mut cfg = QBracketConfig::new(&a.a);
            if let Some(order) = a.shared.order {
                cfg.order = order;
            }
            cfg.limit = a.limit;
            cfg.path = a.path.config();
            cfg.accel = a.path.accel;
            cfg.tolerance = a.path.tolerance;
            cfg.cesaro_depth = a.cesaro_depth;
            cfg.output = a.shared.output;
            run_qbracket(&cfg)?
        }
        Command::Cf(a) => {
            let source = a.function.source().ok_or_else(|| anyhow::anyhow!("--function or --function-file is required"))?;
            let cfg = CfConfig {
                form: a.form,
                function: source,
                q: a.q,
                depth: a.shared.order.unwrap_or(a.depth),
                backend: a.shared.backend.unwrap_or(Backend::Float),
                precision: a.shared.precision,
            };
            if a.shared.output != OutputFormat::Json {
                anyhow::bail!("cf writes JSON only");
            }
            run_cf(&cfg)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", out.output.trim_end()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
