//! Command-line front end. Exit codes: 0 satisfied, 2 not established, 1 error.

mod output;
mod series_cmd;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::is_squarefree_i64;
use crate::criteria::{
    euler_char_check, h10_check, isogeny3_density, kriz_li_density, kriz_li_density_formula, kriz_li_preconditions,
    s_primes, scan, tzero_report, EulerOutcome,
};
use crate::curves::{bad_primes_data, conductor, Mod2Image};
use crate::ingest::{
    fetch_remote, load_record, Cache, HttpTransport, RecordStore, Transport, BASE_URL_ENV, CACHE_DIR_ENV,
};
use crate::padic::DEFAULT_PRECISION;
use crate::quad::ImagQuadField;
use crate::series::{BivariateSeries, DEFAULT_CAP};

use output::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_ESTABLISHED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "h10",
    version,
    about = "Checks Iwasawa-theoretic criteria for Hilbert's tenth problem in Z_p-extensions"
)]
pub struct Cli {
    /// p-adic precision N (digits)
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Total degree cap D for power series
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Record cache directory
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Never touch the network
    #[arg(long, global = true)]
    pub offline: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads for scans
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Base URL for remote records
    #[arg(long, global = true, env = BASE_URL_ENV)]
    pub base_url: Option<String>,
    /// Extra record files to load before resolving labels
    #[arg(long = "record", global = true)]
    pub records: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the hypotheses for (E, p, Q(sqrt(d)))
    Check {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Two-variable characteristic series used to identify the excluded line
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// Truncated Euler characteristic factors over Q_cyc
    Euler {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// Primes of the set S below an exclusive bound
    Sprimes {
        #[arg(long)]
        curve: String,
        /// Discriminant of K0
        #[arg(long, allow_negative_numbers = true)]
        k0: i64,
        #[arg(long)]
        p: u64,
        /// Exclusive upper bound: only primes ell < bound are listed
        #[arg(long)]
        bound: u64,
    },
    /// Density formulas
    Density {
        #[command(subcommand)]
        mode: DensityMode,
    },
    /// Power series utilities
    Series {
        #[command(subcommand)]
        cmd: series_cmd::SeriesCommand,
    },
    /// Run the check over many twists
    Scan {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        /// Comma-separated twist parameters
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        d: Vec<i64>,
        /// Lower end of a range of d (inclusive)
        #[arg(long, allow_negative_numbers = true)]
        from: Option<i64>,
        /// Upper end of a range of d (inclusive)
        #[arg(long, allow_negative_numbers = true)]
        to: Option<i64>,
    },
    /// Selmer ratios of the twisted 3-isogeny and membership in T_0'
    Tzero {
        #[arg(long)]
        curve: String,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Local data at the bad primes
    Local {
        #[arg(long)]
        curve: String,
    },
    /// Fetch a record into the cache
    Fetch {
        #[arg(long)]
        label: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum DensityMode {
    /// Density of the prime set S
    KrizLi(KrizLiArgs),
    /// Lower bound from a rational 3-isogeny
    Isogeny3 {
        /// Conductor N
        #[arg(long, conflicts_with = "curve")]
        conductor: Option<BigUint>,
        #[arg(long)]
        curve: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct KrizLiArgs {
    #[arg(long, requires = "k0")]
    curve: Option<String>,
    /// Discriminant of K0
    #[arg(long, allow_negative_numbers = true)]
    k0: Option<i64>,
    /// Image of Galois on E[2]: Z/3 or S3
    #[arg(long, conflicts_with = "curve")]
    image: Option<Mod2Image>,
    /// Number of primes dividing N
    #[arg(long, requires = "image")]
    k: Option<u32>,
    /// K0 = Q(i)
    #[arg(long)]
    gaussian: bool,
}

struct Ctx {
    store: RecordStore,
    cache: Option<Cache>,
    transport: Option<Box<dyn Transport>>,
    offline: bool,
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|d| d.join("h10"))
}

fn transport(cli: &Cli) -> Option<Box<dyn Transport>> {
    if cli.offline {
        return None;
    }
    cli.base_url.as_deref().map(|u| Box::new(HttpTransport::new(u, Duration::from_secs(20))) as Box<dyn Transport>)
}

fn build_ctx(cli: &Cli) -> Result<Ctx, String> {
    let mut store = RecordStore::bundled().offline(cli.offline);
    for path in &cli.records {
        store.insert(load_record(path).map_err(|e| e.to_string())?);
    }
    let cache = cli.cache_dir.clone().or_else(default_cache_dir).map(Cache::new);
    if let Some(c) = &cache {
        store = store.with_cache(c.clone());
    }
    if let Some(t) = transport(cli) {
        store = store.with_transport(t);
    }
    Ok(Ctx { store, cache, transport: transport(cli), offline: cli.offline })
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let text = match cli.format {
                Format::Table => report.table,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            for w in report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn ranged(from: Option<i64>, to: Option<i64>) -> Result<Vec<i64>, String> {
    match (from, to) {
        (None, None) => Ok(Vec::new()),
        (Some(a), Some(b)) if a <= b => Ok((a..=b).filter(|&d| d < 0 && is_squarefree_i64(d)).collect()),
        (Some(a), Some(b)) => Err(format!("empty range {a}..{b}")),
        _ => Err("--from and --to must be given together".into()),
    }
}

fn execute(cli: &Cli) -> Result<(Report, i32), String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    match &cli.command {
        Command::Check { curve, p, d, series } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let mut v = h10_check(&ctx.store, &record, *p, *d).map_err(|x| e(&x))?;
            if let Some(path) = series {
                let f = read_bivariate(path)?;
                v.attach_series(&f).map_err(|x| e(&x))?;
            }
            let code = if v.is_satisfied() { EXIT_OK } else { EXIT_NOT_ESTABLISHED };
            Ok((output::verdict(&v), code))
        }
        Command::Euler { curve, p } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let r = euler_char_check(&record, *p).map_err(|x| e(&x))?;
            let code = if r.outcome == EulerOutcome::Unit { EXIT_OK } else { EXIT_NOT_ESTABLISHED };
            Ok((output::euler(&r), code))
        }
        Command::Sprimes { curve, k0, p, bound } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let field = ImagQuadField::from_discriminant(*k0).map_err(|x| e(&x))?;
            let pre = kriz_li_preconditions(&record, &field, *p).map_err(|x| e(&x))?;
            let primes = s_primes(&record, &field, *p, *bound).map_err(|x| e(&x))?;
            let ok = pre.iter().all(|h| h.status.is_pass());
            let mut report = output::sprimes(&record.label, *k0, *p, *bound, &primes, &pre);
            if !ok {
                report.warnings.push("preconditions on (E, K0, p) are not all attested".into());
            }
            Ok((report, if ok { EXIT_OK } else { EXIT_NOT_ESTABLISHED }))
        }
        Command::Density { mode } => density(cli, mode),
        Command::Series { cmd } => series_cmd::run(cmd, cli.precision, cli.cap),
        Command::Scan { curve, p, d, from, to } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let mut ds = d.clone();
            ds.extend(ranged(*from, *to)?);
            let report = scan(&ctx.store, &record, *p, &ds, cli.jobs).map_err(|x| e(&x))?;
            let code = if report.satisfied == report.rows.len() { EXIT_OK } else { EXIT_NOT_ESTABLISHED };
            Ok((output::scan(&report), code))
        }
        Command::Tzero { curve, d } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let r = tzero_report(&ctx.store, &record, *d).map_err(|x| e(&x))?;
            let code = if r.in_t0prime == Some(true) { EXIT_OK } else { EXIT_NOT_ESTABLISHED };
            Ok((output::tzero(&r), code))
        }
        Command::Local { curve } => {
            let ctx = build_ctx(cli)?;
            let record = ctx.store.resolve(curve).map_err(|x| e(&x))?;
            let m = record.minimal_curve();
            Ok((output::local(&record.label, &m, &bad_primes_data(&m), &conductor(&m)), EXIT_OK))
        }
        Command::Fetch { label } => {
            let ctx = build_ctx(cli)?;
            let cache = ctx.cache.as_ref().ok_or("no cache directory configured")?;
            let record = fetch_remote(label, ctx.transport.as_deref(), cache, ctx.offline).map_err(|x| e(&x))?;
            Ok((output::fetched(&record, &cache.path_for(&record.label)), EXIT_OK))
        }
    }
}

fn density(cli: &Cli, mode: &DensityMode) -> Result<(Report, i32), String> {
    match mode {
        DensityMode::KrizLi(a) => {
            let value = match (&a.curve, a.image, a.k) {
                (Some(c), _, _) => {
                    let ctx = build_ctx(cli)?;
                    let record = ctx.store.resolve(c).map_err(|x| x.to_string())?;
                    let disc = a.k0.ok_or("--k0 is required with --curve")?;
                    let field = ImagQuadField::from_discriminant(disc).map_err(|x| x.to_string())?;
                    kriz_li_density(&record, &field)
                }
                (None, Some(image), Some(k)) => {
                    let gaussian = a.gaussian || a.k0 == Some(-4);
                    kriz_li_density_formula(image, k, gaussian)
                }
                _ => return Err("give --curve and --k0, or --image and --k".into()),
            }
            .map_err(|x| x.to_string())?;
            Ok((output::density("kriz-li", "Dirichlet density of the prime set S", &value), EXIT_OK))
        }
        DensityMode::Isogeny3 { conductor: n, curve } => {
            let (n, has) = match (n, curve) {
                (Some(n), None) => (n.clone(), true),
                (None, Some(c)) => {
                    let ctx = build_ctx(cli)?;
                    let record = ctx.store.resolve(c).map_err(|x| x.to_string())?;
                    (conductor(&record.minimal_curve()), record.isogeny.is_some())
                }
                _ => return Err("give --conductor or --curve".into()),
            };
            if n.is_zero() {
                return Err("conductor must be positive".into());
            }
            let value = isogeny3_density(&n, has).map_err(|x| x.to_string())?;
            Ok((output::density("isogeny3", "lower bound on the density of discriminants", &value), EXIT_OK))
        }
    }
}

fn read_bivariate(path: &PathBuf) -> Result<BivariateSeries, String> {
    let s = std::fs::read_to_string(path).map_err(|x| format!("{}: {x}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&s).map_err(|x| format!("{}: {x}", path.display()))?;
    BivariateSeries::from_json(&v).map_err(|x| format!("{}: {x}", path.display()))
}
