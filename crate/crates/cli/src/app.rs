use std::ffi::OsString;
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orlicz_core::domain::{check_submultiplicative, weight_dominates, Sampling};
use orlicz_core::grid::default_c_grid;
use orlicz_core::norms::{luxemburg_norm, weak_luxemburg_norm};
use orlicz_core::{Error, LogGrid, Outcome, QuadratureSpec, SimpleFunction, TheoremReport, Weight, YoungFunction};

use crate::config::ConfigFile;
use crate::expr::{parse_weight, parse_young};
use crate::fnfile::{parse_function, parse_piece};
use crate::json;
use crate::suites::{self, Suite, SuiteConfig};

pub mod exit {
    pub const PASS: i32 = 0;
    pub const REFUTED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const HYPOTHESIS: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "orlicz", version, about = "Weighted Orlicz norms and inclusion checks")]
struct Cli {
    /// key = value config file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Luxemburg norm (or weak norm) of a simple function
    Norm(NormArgs),
    /// Certificate searches
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
struct QuadArgs {
    /// Gauss-Legendre points per cell and axis
    #[arg(long)]
    points: Option<usize>,
    /// Refinement depth: 2^(depth-1) cells per axis
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args, Debug)]
struct NormArgs {
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    /// Function file
    #[arg(long = "fn")]
    function: Option<PathBuf>,
    /// Inline piece record, e.g. "value=1 region=box lo=0 hi=1"
    #[arg(long)]
    piece: Vec<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    weak: bool,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args, Debug, Default)]
struct SamplingArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Search C with phi1(t) <= phi2(C t)
    Precedes {
        #[arg(long)]
        phi1: Option<String>,
        #[arg(long)]
        phi2: Option<String>,
        #[arg(long)]
        t_lo: Option<f64>,
        #[arg(long)]
        t_hi: Option<f64>,
        #[arg(long)]
        t_points: Option<usize>,
    },
    /// Search K with phi(2t) <= K phi(t)
    Delta2 {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        grid_size: Option<usize>,
    },
    /// Search C with u1 <= C u2
    Dominates {
        #[arg(long)]
        u1: Option<String>,
        #[arg(long)]
        u2: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Sample u(x+y) <= u(x) u(y)
    Submult {
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// lemma11, lemma21, thm22, lemma24, thm25, holder, cor33, remark26, diagram or all
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Corpus size
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    /// Number of function pairs for the Hölder suite
    #[arg(long)]
    pairs: Option<usize>,
    /// Random samples for the inverse suite
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    phi1: Option<String>,
    #[arg(long)]
    phi2: Option<String>,
    #[arg(long)]
    u1: Option<String>,
    #[arg(long)]
    u2: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long = "fn")]
    function: Option<PathBuf>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug)]
enum AppError {
    Usage(String),
    Core(Error),
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Core(e)
    }
}

impl AppError {
    fn code(&self) -> i32 {
        match self {
            AppError::Usage(_) => exit::USAGE,
            AppError::Core(e) => match e {
                Error::HypothesisNotEstablished { .. } => exit::HYPOTHESIS,
                Error::Overflow(_) | Error::Domain { .. } | Error::NoWitness(_) => exit::NUMERIC,
                _ => exit::USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Usage(m) => m.clone(),
            AppError::Core(e) => e.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            AppError::Core(Error::HypothesisNotEstablished { hypothesis, counterexample }) => json!({
                "error": "hypothesis_not_established",
                "hypothesis": hypothesis,
                "counterexample": counterexample.as_deref().map(json::counterexample),
            }),
            other => json!({ "error": other.message() }),
        }
    }
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

/// Flag value, else config value, else `None`.
struct Resolver {
    config: ConfigFile,
}

impl Resolver {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, AppError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|e| usage(format!("config key `{key}`: {e}"))),
        }
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, AppError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn young(&self, flag: Option<String>, key: &str) -> Result<Option<YoungFunction>, AppError> {
        self.get(flag, key)?
            .map(|s: String| parse_young(&s).map_err(|e| usage(format!("--{key}: {e}"))))
            .transpose()
    }

    fn weight(&self, flag: Option<String>, key: &str) -> Result<Option<Weight>, AppError> {
        self.get(flag, key)?
            .map(|s: String| parse_weight(&s).map_err(|e| usage(format!("--{key}: {e}"))))
            .transpose()
    }

    fn require<T>(v: Option<T>, key: &str) -> Result<T, AppError> {
        v.ok_or_else(|| usage(format!("missing --{key}")))
    }

    fn quadrature(&self, q: QuadArgs) -> Result<QuadratureSpec, AppError> {
        let d = QuadratureSpec::default();
        Ok(QuadratureSpec {
            points_per_axis: self.or(q.points, "points", d.points_per_axis)?,
            depth: self.or(q.depth, "depth", d.depth)?,
        })
    }

    fn function(&self, path: Option<PathBuf>) -> Result<Option<SimpleFunction>, AppError> {
        match self.get(path, "fn")? {
            None => Ok(None),
            Some(p) => {
                let text = fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                parse_function(&text).map(Some).map_err(|e| usage(format!("{}: {e}", p.display())))
            }
        }
    }

    fn sampling(&self, s: SamplingArgs) -> Result<Sampling, AppError> {
        let d = Sampling::new(1);
        Ok(Sampling {
            dim: self.or(s.dim, "dim", d.dim)?,
            sample_count: self.or(s.samples, "samples", d.sample_count)?,
            radius: self.or(s.radius, "radius", d.radius)?,
            seed: self.or(s.seed, "seed", d.seed)?,
        })
    }
}

struct Output {
    path: Option<PathBuf>,
    format: Format,
}

impl Output {
    fn write(&self, text: &str) -> Result<(), AppError> {
        match &self.path {
            Some(p) => write_atomically(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| usage(e.to_string()))
            }
        }
    }

    fn object(&self, v: &Value) -> Result<(), AppError> {
        let text = match self.format {
            Format::Json => pretty(v),
            Format::Csv => json::object_csv(v).map_err(|e| usage(e.to_string()))?,
        };
        self.write(&text)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn write_atomically(path: &Path, text: &str) -> Result<(), AppError> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn cmd_norm(r: &Resolver, a: NormArgs, out: &Output) -> Result<i32, AppError> {
    let phi = Resolver::require(r.young(a.phi, "phi")?, "phi")?;
    let u = r.weight(a.weight, "weight")?.unwrap_or(Weight::ONE);
    let f = match r.function(a.function)? {
        Some(f) if a.piece.is_empty() => f,
        Some(_) => return Err(usage("give either --fn or --piece, not both")),
        None => {
            if a.piece.is_empty() {
                return Err(usage("missing --fn or --piece"));
            }
            let pieces = a
                .piece
                .iter()
                .enumerate()
                .map(|(i, s)| parse_piece(i + 1, s).map_err(|e| usage(format!("--piece {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let dim = match r.get(a.dim, "dim")? {
                Some(d) => d,
                None => pieces[0].region.dim(),
            };
            SimpleFunction::new(dim, pieces)?
        }
    };
    let q = r.quadrature(a.quad)?;
    let result = if a.weak { weak_luxemburg_norm(&f, &phi, &u)? } else { luxemburg_norm(&f, &phi, &u, q)? };
    let mut v = json::norm(&result);
    v["norm"] = Value::from(if a.weak { "weak" } else { "strong" });
    v["phi"] = Value::from(phi.to_string());
    v["weight"] = Value::from(u.to_string());
    out.object(&v)?;
    Ok(exit::PASS)
}

fn outcome<C>(o: &Outcome<C>, cert: impl Fn(&C) -> Value) -> (Value, i32) {
    match o {
        Outcome::Certified(c) => (json!({ "outcome": "certified", "certificate": cert(c) }), exit::PASS),
        Outcome::Refuted(ce) => (json!({ "outcome": "refuted", "counterexample": json::counterexample(ce) }), exit::REFUTED),
    }
}

fn cmd_check(r: &Resolver, which: CheckCommand, out: &Output) -> Result<i32, AppError> {
    let (mut v, code, name) = match which {
        CheckCommand::Precedes { phi1, phi2, t_lo, t_hi, t_points } => {
            let p1 = Resolver::require(r.young(phi1, "phi1")?, "phi1")?;
            let p2 = Resolver::require(r.young(phi2, "phi2")?, "phi2")?;
            let d = LogGrid::default_t();
            let g = LogGrid::new(
                r.or(t_lo, "t-lo", d.lo)?,
                r.or(t_hi, "t-hi", d.hi)?,
                r.or(t_points, "t-points", d.points)?,
            );
            let (mut v, code) = outcome(&p1.precedes(&p2, g, &default_c_grid())?, json::precedence);
            v["phi1"] = Value::from(p1.to_string());
            v["phi2"] = Value::from(p2.to_string());
            (v, code, "precedes")
        }
        CheckCommand::Delta2 { phi, t_max, grid_size } => {
            let p = Resolver::require(r.young(phi, "phi")?, "phi")?;
            let o = p.check_delta2(r.or(t_max, "t-max", 50.0)?, r.or(grid_size, "grid-size", 400)?)?;
            let (mut v, code) = outcome(&o, json::delta2);
            v["phi"] = Value::from(p.to_string());
            (v, code, "delta2")
        }
        CheckCommand::Dominates { u1, u2, sampling } => {
            let w1 = Resolver::require(r.weight(u1, "u1")?, "u1")?;
            let w2 = Resolver::require(r.weight(u2, "u2")?, "u2")?;
            let o = weight_dominates(&w1, &w2, r.sampling(sampling)?, &default_c_grid())?;
            let (mut v, code) = outcome(&o, json::domination);
            v["u1"] = Value::from(w1.to_string());
            v["u2"] = Value::from(w2.to_string());
            (v, code, "dominates")
        }
        CheckCommand::Submult { u, sampling } => {
            let w = Resolver::require(r.weight(u, "u")?, "u")?;
            let rep = check_submultiplicative(&w, r.sampling(sampling)?)?;
            let code = if rep.passed() { exit::PASS } else { exit::REFUTED };
            let mut v = json::submultiplicative(&rep);
            v["outcome"] = Value::from(if rep.passed() { "certified" } else { "refuted" });
            v["u"] = Value::from(w.to_string());
            (v, code, "submult")
        }
    };
    v["check"] = Value::from(name);
    out.object(&v)?;
    Ok(code)
}

fn verify_document(suite: Suite, seed: u64, reports: &[TheoremReport], complete: bool) -> Value {
    let verdict = if reports.iter().all(TheoremReport::passed) { "pass" } else { "fail" };
    json!({
        "command": "verify",
        "suite": suite.name(),
        "seed": seed,
        "timestamp": timestamp(),
        "complete": complete,
        "verdict": verdict,
        "reports": reports.iter().map(json::report).collect::<Vec<_>>(),
    })
}

fn cmd_verify(r: &Resolver, a: VerifyArgs, out: &Output) -> Result<i32, AppError> {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        seed: r.or(a.seed, "seed", d.seed)?,
        size: r.or(a.size, "size", d.size)?,
        dim: r.or(a.dim, "dim", d.dim)?,
        pairs: r.or(a.pairs, "pairs", d.pairs)?,
        samples: r.or(a.samples, "samples", d.samples)?,
        quadrature: r.quadrature(a.quad)?,
        phi1: r.young(a.phi1, "phi1")?,
        phi2: r.young(a.phi2, "phi2")?,
        u1: r.weight(a.u1, "u1")?,
        u2: r.weight(a.u2, "u2")?,
        phi: r.young(a.phi, "phi")?,
        weight: r.weight(a.weight, "weight")?,
        function: r.function(a.function)?,
    };
    let mut reports = Vec::new();
    for member in suite.members() {
        if out.path.is_some() && out.format == Format::Json {
            out.write(&pretty(&verify_document(suite, cfg.seed, &reports, false)))?;
        }
        match suites::run(member, &cfg) {
            Ok(rs) => reports.extend(rs),
            Err(e) => {
                let e = AppError::from(e);
                if out.format == Format::Json {
                    let mut doc = verify_document(suite, cfg.seed, &reports, false);
                    doc["verdict"] = Value::from("error");
                    doc["failed_suite"] = Value::from(member.name());
                    doc["error"] = e.to_json();
                    out.write(&pretty(&doc))?;
                }
                return Err(e);
            }
        }
    }
    match out.format {
        Format::Json => out.write(&pretty(&verify_document(suite, cfg.seed, &reports, true)))?,
        Format::Csv => out.write(&json::reports_csv(&reports).map_err(|e| usage(e.to_string()))?)?,
    }
    Ok(if reports.iter().all(TheoremReport::passed) { exit::PASS } else { exit::REFUTED })
}

fn report_error(e: &AppError) {
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stderr().is_terminal();
    let prefix = if color { "\x1b[1;31merror\x1b[0m" } else { "error" };
    eprintln!("{prefix}: {}", e.message());
}

fn execute(cli: Cli) -> Result<i32, AppError> {
    let config = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            ConfigFile::parse(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        None => ConfigFile::default(),
    };
    let r = Resolver { config };
    let out = Output { path: r.get(cli.out, "out")?, format: r.or(cli.format, "format", Format::Json)? };
    let res = match cli.command {
        Command::Norm(a) => cmd_norm(&r, a, &out),
        Command::Check { which } => cmd_check(&r, which, &out),
        Command::Verify(a) => return cmd_verify(&r, a, &out),
    };
    if let Err(e) = &res {
        if e.code() == exit::HYPOTHESIS {
            let _ = out.object(&e.to_json());
        }
    }
    res
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e);
            e.code()
        }
    }
}
