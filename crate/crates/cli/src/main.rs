use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multicox::basis::{build_basis_report, BaseSource, BasisRequest};
use multicox::certify::ziegler_certify;
use multicox::connection::CoxeterSystem;
use multicox::derivation::Derivation;
use multicox::group::{CoxeterType, Multiplicity, DEFAULT_ORDER_BOUND};
use multicox::invariants::InvariantCache;
use multicox::report::{BasisReport, CertifyReport, InfoReport, MultiplicityFile};
use multicox::suites::{run_suite, Suite};
use multicox::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_NOT_A_BASIS: u8 = 2;
const EXIT_CERTIFICATE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "multicox",
    version,
    about = "Free bases for multi-Coxeter arrangements, built and certified exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, hyperplanes, invariants and structural checks.
    Info {
        /// Type such as A2, B3, G2, I2(5), or a bare letter followed by RANK.
        #[arg(value_name = "TYPE")]
        kind: String,
        rank: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Build and certify the basis of D(A, m~ + 2k).
    Basis(BasisArgs),
    /// Run property suites.
    Verify {
        #[arg(long = "type", value_name = "TYPE")]
        kind: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Certify a list of fields, or the members of a basis report, for any multiplicity.
    Certify {
        #[arg(long = "type", value_name = "TYPE")]
        kind: String,
        #[arg(long)]
        rank: Option<usize>,
        /// Basis report or JSON list of fields.
        #[arg(long, value_name = "FILE")]
        members: PathBuf,
        #[command(flatten)]
        mult: MultArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Invariant cache directory; overrides MULTICOX_CACHE_DIR.
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
    max_order: usize,
}

#[derive(Args)]
struct MultArgs {
    /// Constant multiplicity.
    #[arg(long, group = "mult")]
    m: Option<u32>,
    /// One value per orbit, comma separated.
    #[arg(long, group = "mult", value_delimiter = ',')]
    orbit_m: Option<Vec<u32>>,
    /// JSON file {"orbits": [...]} with a value or list per orbit.
    #[arg(long, group = "mult", value_name = "FILE")]
    mfile: Option<PathBuf>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long = "type", value_name = "TYPE")]
    kind: String,
    #[arg(long)]
    rank: Option<usize>,
    #[command(flatten)]
    mult: MultArgs,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Base basis to use instead of the built-in choice: a basis report or a JSON list of fields.
    #[arg(long, value_name = "FILE")]
    base_file: Option<PathBuf>,
    /// Accepted for interface uniformity; construction is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, value_name = "SECS")]
    time_budget: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Shift,
    Euler,
    Jacobian,
    Hodge,
    Rel,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Shift => vec![Suite::Shift],
            SuiteArg::Euler => vec![Suite::Euler],
            SuiteArg::Jacobian => vec![Suite::Jacobian],
            SuiteArg::Hodge => vec![Suite::Hodge],
            SuiteArg::Rel => vec![Suite::Rel],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotABasis(_) => EXIT_NOT_A_BASIS,
            Error::CertificateFailed(_) => EXIT_CERTIFICATE,
            Error::Unsupported(_) | Error::OrderBoundExceeded(_) | Error::Budget(_) => EXIT_UNSUPPORTED,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn parse_type(kind: &str, rank: Option<usize>) -> Result<CoxeterType, Error> {
    match rank {
        Some(r) if kind.trim().chars().all(|c| c.is_ascii_alphabetic()) => format!("{}{r}", kind.trim()).parse(),
        Some(r) => {
            let t: CoxeterType = kind.parse()?;
            if t.rank() != r {
                return Err(Error::Unsupported(format!("{kind} has rank {}, not {r}", t.rank())));
            }
            Ok(t)
        }
        None => kind.parse(),
    }
}

fn load_system(kind: CoxeterType, common: &Common) -> Result<CoxeterSystem, Error> {
    let cache = match &common.cache_dir {
        Some(d) => Some(InvariantCache::new(d)),
        None => InvariantCache::from_env(),
    };
    CoxeterSystem::build(kind, cache.as_ref(), common.max_order)
}

fn resolve_multiplicity(sys: &CoxeterSystem, args: &MultArgs) -> Result<Multiplicity, Error> {
    if let Some(m) = args.m {
        return Ok(Multiplicity::constant(&sys.arrangement, m));
    }
    if let Some(v) = &args.orbit_m {
        return Multiplicity::per_orbit(&sys.arrangement, v);
    }
    if let Some(path) = &args.mfile {
        let text = std::fs::read_to_string(path)?;
        let file: MultiplicityFile = serde_json::from_str(&text)?;
        return file.resolve(sys);
    }
    Err(Error::Multiplicity("one of --m, --orbit-m, --mfile is required".into()))
}

/// Fields from a basis report (its members) or from a bare JSON list.
fn read_fields(path: &PathBuf) -> Result<Vec<Derivation>, Error> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("members").is_some() {
        let report: BasisReport = serde_json::from_value(value)?;
        return Ok(report.member_fields());
    }
    Ok(serde_json::from_value(value)?)
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
        Format::Text => print!("{}", text()),
    }
}

fn cmd_info(kind: &str, rank: Option<usize>, common: &Common) -> Outcome {
    let sys = load_system(parse_type(kind, rank)?, common)?;
    let report = InfoReport::new(&sys);
    emit(common.format, &report, || report.render_text());
    Ok(if report.checks.all() { 0 } else { EXIT_FAILURE })
}

fn cmd_basis(args: BasisArgs) -> Outcome {
    let kind = parse_type(&args.kind, args.rank)?;
    let Some(secs) = args.time_budget else {
        return run_basis(kind, &args);
    };
    if secs.is_nan() || secs <= 0.0 {
        return Err(Error::Budget("time budget must be positive".into()).into());
    }
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|s| {
        s.spawn(|| {
            let _ = tx.send(run_basis(kind, &args));
        });
        match rx.recv_timeout(Duration::from_secs_f64(secs)) {
            Ok(out) => out,
            Err(_) => {
                eprintln!("error: {}", Error::Budget(format!("exceeded {secs} s")));
                std::process::exit(i32::from(EXIT_UNSUPPORTED));
            }
        }
    })
}

fn run_basis(kind: CoxeterType, args: &BasisArgs) -> Outcome {
    let sys = load_system(kind, &args.common)?;
    let m = resolve_multiplicity(&sys, &args.mult)?;
    let req = match &args.base_file {
        Some(path) => BasisRequest::new(&sys, m, args.k, BaseSource::User(read_fields(path)?))?,
        None => BasisRequest::automatic(&sys, m, args.k)?,
    };
    let res = build_basis_report(&sys, &req)?;
    let report = BasisReport::new(&sys, &req, &res);
    emit(args.common.format, &report, || report.render_text());
    Ok(if res.is_free() { 0 } else { EXIT_CERTIFICATE })
}

fn cmd_verify(kind: &str, rank: Option<usize>, suite: SuiteArg, samples: usize, seed: u64, common: &Common) -> Outcome {
    let sys = load_system(parse_type(kind, rank)?, common)?;
    let mut reports = Vec::new();
    for s in suite.suites() {
        reports.push(run_suite(s, &sys, samples, seed)?);
    }
    emit(common.format, &reports, || {
        reports
            .iter()
            .map(|r| {
                let status = if r.ok() { "pass" } else { "FAIL" };
                format!("{} {} {}/{} {status}\n", r.kind, r.suite, r.passed, r.passed + r.failed)
            })
            .collect()
    });
    Ok(if reports.iter().all(|r| r.ok()) {
        0
    } else {
        EXIT_FAILURE
    })
}

fn cmd_certify(kind: &str, rank: Option<usize>, members: &PathBuf, mult: &MultArgs, common: &Common) -> Outcome {
    let sys = load_system(parse_type(kind, rank)?, common)?;
    let m = resolve_multiplicity(&sys, mult)?;
    let fields = read_fields(members)?;
    let cert = ziegler_certify(&fields, &m, &sys.arrangement)?;
    let report = CertifyReport::new(&sys, &fields, &cert);
    emit(common.format, &report, || {
        let mut out = String::new();
        for (i, f) in report.members.iter().enumerate() {
            out.push_str(&format!("member {i}: {}\n", f.text));
        }
        out.push_str(&format!("verdict: {}\n", report.certificate.verdict));
        out
    });
    Ok(if cert.verdict.is_free() { 0 } else { EXIT_CERTIFICATE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_FAILURE } else { 0 });
        }
    };
    let out = match cli.command {
        Command::Info { kind, rank, common } => cmd_info(&kind, rank, &common),
        Command::Basis(args) => cmd_basis(args),
        Command::Verify {
            kind,
            rank,
            suite,
            samples,
            seed,
            common,
        } => cmd_verify(&kind, rank, suite, samples, seed, &common),
        Command::Certify {
            kind,
            rank,
            members,
            mult,
            common,
        } => cmd_certify(&kind, rank, &members, &mult, &common),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
