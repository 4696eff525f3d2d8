//! Command implementations shared by the binary and the tests.

use std::path::PathBuf;
use std::time::Instant;

use qabel_core::accel::AccelMethod;
use qabel_core::cf::{euler_cf_transform, evaluate_convergents, single_sum_terms};
use qabel_core::identity::{
    default_functions, verify_all_timed, verify_chain, verify_euler_identity, verify_euler_identity_perturbed,
    verify_qbinomial, Chain, IdentityReport, SuiteConfig,
};
use qabel_core::limit::{cesaro_average, estimate_limit, lambert_ratio_limit, LimitEstimate, LimitSettings};
use qabel_core::qbracket::{
    self, qbracket_limit, qbracket_series, verify_thm3_distinct, verify_thm3_identity, verify_thm3_literal,
    PartitionFunction,
};
use qabel_core::stolz::StolzPath;
use qabel_core::{ArithmeticFunction, FormId, Rational, Scalar};

use crate::mp::{auto_precision, MpFloat};
use crate::report::{
    to_json, CfJson, EstimateJson, IdentityJson, LimitJson, PathJson, QBracketJson, QBracketLimitJson, SettingsJson,
};
use crate::table::{load_function_table, TableError};

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] qabel_core::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Config(String),
}

/// What a command prints and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSource {
    Name(String),
    File(PathBuf),
}

impl FunctionSource {
    pub fn resolve(&self) -> Result<ArithmeticFunction, AppError> {
        Ok(match self {
            FunctionSource::Name(n) => ArithmeticFunction::from_name(n)?,
            FunctionSource::File(p) => load_function_table(p)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathConfig {
    pub m: f64,
    pub theta: f64,
    pub delta0: f64,
    pub ratio: f64,
    pub points: usize,
}

impl Default for PathConfig {
    fn default() -> Self {
        Self {
            m: 1.0,
            theta: 0.0,
            delta0: StolzPath::DEFAULT_DELTA0,
            ratio: StolzPath::DEFAULT_RATIO,
            points: StolzPath::DEFAULT_POINTS,
        }
    }
}

impl PathConfig {
    pub fn build(&self) -> Result<StolzPath, AppError> {
        Ok(StolzPath::new(self.m, self.theta, self.points, self.delta0, self.ratio)?)
    }

    fn json(&self) -> PathJson {
        PathJson {
            m: self.m,
            theta: self.theta,
            delta0: self.delta0,
            ratio: self.ratio,
            points: self.points,
        }
    }
}

fn now_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub const IDENTITY_NAMES: [&str; 10] = [
    "all",
    "euler",
    "euler_perturbed",
    "qbinomial",
    "eq5",
    "eq8",
    "cor2_5",
    "thm3",
    "thm3_literal",
    "thm3_distinct",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub identity: String,
    pub order: usize,
    pub function: Option<FunctionSource>,
    pub a: Option<String>,
    pub n: Option<usize>,
    pub drop_k: usize,
    pub backend: Backend,
    pub output: OutputFormat,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            identity: "all".into(),
            order: 30,
            function: None,
            a: None,
            n: None,
            drop_k: 2,
            backend: Backend::Exact,
            output: OutputFormat::Json,
            timings: false,
        }
    }
}

/// Runs the selected identity checks; reports are sorted by name.
pub fn verify_reports(cfg: &VerifyConfig) -> Result<Vec<IdentityReport>, AppError> {
    if cfg.backend != Backend::Exact {
        return Err(AppError::Config(
            "identity verification runs over exact rationals only; use --backend exact".into(),
        ));
    }
    if !IDENTITY_NAMES.contains(&cfg.identity.as_str()) {
        return Err(qabel_core::Error::Unknown {
            kind: "identity",
            name: cfg.identity.clone(),
            valid: IDENTITY_NAMES.join(", "),
        }
        .into());
    }
    let functions = match &cfg.function {
        Some(src) => vec![src.resolve()?],
        None => default_functions(),
    };
    let partition_functions = match &cfg.a {
        Some(name) => vec![PartitionFunction::from_name(name)?],
        None => qbracket::registry(),
    };
    let qbin: Vec<usize> = match cfg.n {
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let start = Instant::now();
    let clock = || if cfg.timings { now_ms(start) } else { 0 };
    let n = cfg.order;
    let timed = |check: &dyn Fn() -> Result<IdentityReport, qabel_core::Error>| -> Result<IdentityReport, AppError> {
        let t0 = clock();
        let mut r = check()?;
        r.ms = clock().saturating_sub(t0);
        Ok(r)
    };
    let mut reports = Vec::new();
    match cfg.identity.as_str() {
        "all" => {
            let suite = SuiteConfig {
                order: n,
                functions,
                partition_functions,
                qbinomial: qbin,
            };
            return Ok(verify_all_timed(&suite, &clock)?);
        }
        "euler" => reports.push(timed(&|| Ok(verify_euler_identity(n)))?),
        "euler_perturbed" => reports.push(timed(&|| Ok(verify_euler_identity_perturbed(n, cfg.drop_k)))?),
        "qbinomial" => {
            for &k in &qbin {
                reports.push(timed(&|| verify_qbinomial(k, n))?);
            }
        }
        "thm3" | "thm3_literal" | "thm3_distinct" => {
            for a in &partition_functions {
                let check = match cfg.identity.as_str() {
                    "thm3" => verify_thm3_identity,
                    "thm3_literal" => verify_thm3_literal,
                    _ => {
                        if !a.vanishes_on_repeats() && cfg.a.is_none() {
                            continue;
                        }
                        verify_thm3_distinct
                    }
                };
                reports.push(timed(&|| check(a, n))?);
            }
        }
        chain => {
            let chain: Chain = chain.parse()?;
            for f in &functions {
                reports.push(timed(&|| verify_chain(chain, f, n))?);
            }
        }
    }
    reports.sort_by(|a, b| a.identity.cmp(&b.identity));
    Ok(reports)
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<Outcome, AppError> {
    if cfg.output != OutputFormat::Json {
        return Err(AppError::Config("verify writes JSON only".into()));
    }
    let reports = verify_reports(cfg)?;
    let json: Vec<IdentityJson> = reports.iter().map(IdentityJson::from).collect();
    let exit_code = if reports.iter().all(IdentityReport::passed) { 0 } else { 1 };
    Ok(Outcome {
        output: to_json(&json),
        exit_code,
    })
}

#[derive(Clone, Debug)]
pub struct LimitConfig {
    /// A form tag, or `lambert` for the Lambert ratio.
    pub form: String,
    pub function: FunctionSource,
    pub order: Option<usize>,
    pub path: PathConfig,
    pub accel: AccelMethod,
    pub backend: Backend,
    pub precision: Option<u32>,
    pub cesaro_depth: Option<usize>,
    pub tolerance: f64,
    pub output: OutputFormat,
    pub timings: bool,
}

impl LimitConfig {
    pub fn new(form: &str, function: &str) -> Self {
        Self {
            form: form.into(),
            function: FunctionSource::Name(function.into()),
            order: None,
            path: PathConfig::default(),
            accel: AccelMethod::Wynn,
            backend: Backend::Float,
            precision: None,
            cesaro_depth: None,
            tolerance: 1e-6,
            output: OutputFormat::Json,
            timings: false,
        }
    }
}

pub const LAMBERT_TAG: &str = "lambert";

fn estimate_with<C: Scalar>(
    form: &str,
    f: &ArithmeticFunction,
    settings: &LimitSettings,
    ctx: &C::Ctx,
) -> Result<LimitEstimate, AppError> {
    if form == LAMBERT_TAG {
        return Ok(lambert_ratio_limit::<C>(f, settings, ctx)?);
    }
    let form: FormId = form.parse().map_err(|_| qabel_core::Error::Unknown {
        kind: "form",
        name: form.to_string(),
        valid: format!("{}, {LAMBERT_TAG}", FormId::ALL.map(FormId::tag).join(", ")),
    })?;
    Ok(estimate_limit::<C>(form, f, settings, ctx)?)
}

/// Runs the limit estimate and returns it with its JSON record.
pub fn compute_limit(cfg: &LimitConfig) -> Result<(LimitEstimate, LimitJson), AppError> {
    let f = cfg.function.resolve()?;
    let settings = LimitSettings {
        path: cfg.path.build()?,
        order: cfg.order,
        accel: cfg.accel,
        tolerance: cfg.tolerance,
    };
    let order = settings.resolve_order()?;
    let start = Instant::now();
    let (est, precision) = match cfg.backend {
        Backend::Exact => (estimate_with::<Rational>(&cfg.form, &f, &settings, &())?, None),
        Backend::Float => {
            let prec = cfg.precision.unwrap_or_else(|| auto_precision(order));
            (estimate_with::<MpFloat>(&cfg.form, &f, &settings, &prec)?, Some(prec))
        }
    };
    let cesaro = match cfg.cesaro_depth {
        Some(d) => cesaro_average(&f, d)?.last().copied(),
        None => None,
    };
    let settings_json = SettingsJson {
        form: cfg.form.clone(),
        function: f.name(),
        order,
        accel: cfg.accel.tag(),
        backend: cfg.backend.as_str(),
        precision,
        path: cfg.path.json(),
    };
    let mut json = LimitJson::new(&est, settings_json, cesaro);
    if cfg.timings {
        json.ms = now_ms(start);
    }
    Ok((est, json))
}

pub fn run_limit(cfg: &LimitConfig) -> Result<Outcome, AppError> {
    let (est, json) = compute_limit(cfg)?;
    let output = match cfg.output {
        OutputFormat::Json => to_json(&json),
        OutputFormat::Csv => limit_csv(&est, &cfg.path.build()?)?,
    };
    Ok(Outcome { output, exit_code: 0 })
}

fn limit_csv(est: &LimitEstimate, path: &StolzPath) -> Result<String, AppError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| AppError::Config(format!("cannot write CSV: {e}"));
    w.write_record(["j", "delta", "q_re", "q_im", "raw_re", "raw_im", "accel_re", "accel_im", "tail"])
        .map_err(io)?;
    let fmt = |x: f64| format!("{x:.16e}");
    for j in 0..est.raw_values.len() {
        let (q, r, a) = (est.points[j], est.raw_values[j], est.accelerated_values[j]);
        w.write_record([
            j.to_string(),
            fmt(path.deltas()[j]),
            fmt(q.re),
            fmt(q.im),
            fmt(r.re),
            fmt(r.im),
            fmt(a.re),
            fmt(a.im),
            fmt(est.tail_bounds[j]),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| AppError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

#[derive(Clone, Debug)]
pub struct QBracketConfig {
    pub a: String,
    pub order: usize,
    pub limit: bool,
    pub path: PathConfig,
    pub accel: AccelMethod,
    pub cesaro_depth: usize,
    pub tolerance: f64,
    pub output: OutputFormat,
}

impl QBracketConfig {
    pub fn new(a: &str) -> Self {
        Self {
            a: a.into(),
            order: 10,
            limit: false,
            path: PathConfig::default(),
            accel: AccelMethod::Wynn,
            cesaro_depth: 20,
            tolerance: 1e-6,
            output: OutputFormat::Json,
        }
    }
}

pub fn compute_qbracket(cfg: &QBracketConfig) -> Result<QBracketJson, AppError> {
    if cfg.output != OutputFormat::Json {
        return Err(AppError::Config("qbracket writes JSON only".into()));
    }
    let a = PartitionFunction::from_name(&cfg.a)?;
    let coefficients = qbracket_series(&a, cfg.order)?.coeffs().iter().map(|c| c.to_string()).collect();
    let thm3 = IdentityJson::from(&verify_thm3_identity(&a, cfg.order)?);
    let thm3_literal = IdentityJson::from(&verify_thm3_literal(&a, cfg.order)?);
    let limit = if cfg.limit {
        let settings = LimitSettings {
            path: cfg.path.build()?,
            order: None,
            accel: cfg.accel,
            tolerance: cfg.tolerance,
        };
        let r = qbracket_limit(&a, &settings, cfg.cesaro_depth)?;
        Some(QBracketLimitJson {
            direct: EstimateJson::from(&r.direct),
            via_a: r.via_a.into(),
            disagreement: r.disagreement,
            a_k: r.a_k.iter().map(|e| e.value.into()).collect(),
            cesaro: r.cesaro.iter().map(|&c| c.into()).collect(),
            accel: cfg.accel.tag(),
            path: cfg.path.json(),
        })
    } else {
        None
    };
    Ok(QBracketJson {
        a: a.name().to_string(),
        vanishes_on_repeats: a.vanishes_on_repeats(),
        order: cfg.order,
        coefficients,
        thm3,
        thm3_literal,
        limit,
    })
}

pub fn run_qbracket(cfg: &QBracketConfig) -> Result<Outcome, AppError> {
    let json = compute_qbracket(cfg)?;
    let exit_code = if json.thm3.status == "pass" { 0 } else { 1 };
    Ok(Outcome {
        output: to_json(&json),
        exit_code,
    })
}

#[derive(Clone, Debug)]
pub struct CfConfig {
    pub form: String,
    pub function: FunctionSource,
    pub q: f64,
    pub depth: usize,
    pub backend: Backend,
    pub precision: Option<u32>,
}

impl CfConfig {
    pub const DEFAULT_PRECISION: u32 = 128;

    pub fn new(form: &str, function: &str, q: f64, depth: usize) -> Self {
        Self {
            form: form.into(),
            function: FunctionSource::Name(function.into()),
            q,
            depth,
            backend: Backend::Float,
            precision: None,
        }
    }
}

fn exact_f64(v: f64) -> Result<Rational, AppError> {
    Rational::from_float(v).ok_or_else(|| AppError::Config(format!("term {v} is not finite")))
}

/// Builds the Euler continued fraction of a form's outer-sum terms at `q` and
/// compares its convergents with the partial sums.
pub fn compute_cf(cfg: &CfConfig) -> Result<CfJson, AppError> {
    if !(cfg.q.abs() < 1.0) {
        return Err(AppError::Config(format!("q = {} must lie in (-1, 1)", cfg.q)));
    }
    if cfg.depth == 0 {
        return Err(AppError::Config("depth must be at least 1".into()));
    }
    let f = cfg.function.resolve()?;
    let form: FormId = cfg.form.parse()?;
    let terms = single_sum_terms(form, &f, cfg.q, cfg.depth + 1)?;
    let exact_terms = terms.iter().map(|&t| exact_f64(t)).collect::<Result<Vec<_>, _>>()?;
    let mut sum = Rational::from_integer(0.into());
    let exact_sums: Vec<Rational> = exact_terms
        .iter()
        .map(|t| {
            sum += t;
            sum.clone()
        })
        .collect();
    let partial_sums: Vec<f64> = exact_sums.iter().map(Scalar::to_f64).collect();
    let (convergents, truncated, exact_match, precision) = match cfg.backend {
        Backend::Exact => {
            let cf = euler_cf_transform(&exact_terms);
            let conv = evaluate_convergents(&cf, cfg.depth);
            let matched = conv.iter().zip(&exact_sums).all(|(c, s)| c == s);
            (conv.iter().map(Scalar::to_f64).collect::<Vec<_>>(), cf.truncated, Some(matched), None)
        }
        Backend::Float => {
            let prec = cfg.precision.unwrap_or(CfConfig::DEFAULT_PRECISION);
            let mp: Vec<MpFloat> = terms.iter().map(|&t| MpFloat::from_f64(t, prec)).collect();
            let cf = euler_cf_transform(&mp);
            let conv = evaluate_convergents(&cf, cfg.depth);
            (conv.iter().map(Scalar::to_f64).collect(), cf.truncated, None, Some(prec))
        }
    };
    let max_relative_deviation = convergents
        .iter()
        .zip(&partial_sums)
        .map(|(c, s)| if *s == 0.0 { (c - s).abs() } else { ((c - s) / s).abs() })
        .fold(0.0, f64::max);
    Ok(CfJson {
        form: form.tag().into(),
        function: f.name(),
        q: cfg.q,
        depth: cfg.depth,
        backend: cfg.backend.as_str(),
        precision,
        truncated,
        terms,
        partial_sums,
        convergents,
        exact_match,
        max_relative_deviation,
    })
}

pub fn run_cf(cfg: &CfConfig) -> Result<Outcome, AppError> {
    let json = compute_cf(cfg)?;
    Ok(Outcome {
        output: to_json(&json),
        exit_code: 0,
    })
}
