//! Command-line interface.
//!
//! Exit codes: `0` success, `1` invalid input or unreadable file, `2` a
//! negative result (search exhausted or rejected, verification violations).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lqn_core::algebra::AtomStructure;
use lqn_core::bounds::{self, DEFAULT_EPSILON_CAP};
use lqn_core::coloring::{represent, Outcome};
use lqn_core::primes::is_prime_power;
use lqn_core::verify::Report;

use crate::format::{read_representation, write_representation};
use crate::parallel::{monte_carlo, verify_parallel, with_threads, MonteCarloSummary};
use crate::report::{atom_table_json, bounds_json, verify_json, RunReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lqn",
    version,
    about = "Representations of the relation algebras L(q,n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a representation of L(q,n) by resampling t-edge colors
    Represent(RepresentArgs),
    /// Check a representation file against L(q,n)
    Verify(VerifyArgs),
    /// Monte Carlo estimate of edge failure frequencies
    Mc(McArgs),
    /// Union bound and local lemma values for one (q,n)
    Bounds(QnArgs),
    /// Smallest prime powers meeting each bound, per n
    Table(TableArgs),
    /// CSV data: smallest prime power q as a function of n
    Fig1(Fig1Args),
    /// CSV data: smallest n for which q = n (ln n)^(1+eps) meets the local lemma
    Fig2(Fig2Args),
    /// JSON composition table of L(q,n)
    Atoms(AtomsArgs),
}

#[derive(Debug, Args)]
pub struct QnArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Resampling steps before giving up [default: 1000 * 2q^2]
    #[arg(long)]
    pub max_rounds: Option<u64>,
    /// Representation file [default: L<q>_<n>_seed<seed>.lqn]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the JSON run report here
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Report every violation instead of the first
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum McFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = McFormat::Json)]
    pub format: McFormat,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub nmin: u64,
    #[arg(long, default_value_t = 20)]
    pub nmax: u64,
    /// CSV instead of an aligned table
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct Fig1Args {
    #[arg(long, default_value_t = 2)]
    pub nmin: u64,
    #[arg(long, default_value_t = 20)]
    pub nmax: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    /// Comma-separated epsilon values
    #[arg(long, default_value = "0.5,1,1.5,2")]
    pub eps_grid: String,
    /// A single epsilon; overrides --eps-grid
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest n searched
    #[arg(long, default_value_t = DEFAULT_EPSILON_CAP)]
    pub cap: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AtomsArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u32,
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    match cmd {
        Command::Represent(a) => cmd_represent(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Mc(a) => cmd_mc(&a, out),
        Command::Bounds(a) => cmd_bounds(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Fig1(a) => cmd_fig1(&a, out),
        Command::Fig2(a) => cmd_fig2(&a, out),
        Command::Atoms(a) => cmd_atoms(&a, out),
    }
}

fn require_prime_power(q: u64) -> anyhow::Result<()> {
    if !is_prime_power(q) {
        bail!("{q} is not a prime power");
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, value: &impl serde::Serialize) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

/// Writes `text` to `path` if given, else to `out`.
fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn cmd_represent(
    a: &RepresentArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<u8> {
    require_prime_power(a.q)?;
    if a.n == 0 {
        bail!("n must be at least 1");
    }
    if a.max_rounds == Some(0) {
        bail!("--max-rounds must be positive");
    }
    if 2 * u64::from(a.n) > a.q {
        writeln!(
            err,
            "warning: 2n > q, so L({},{}) is not representable; expect the search to be exhausted",
            a.q, a.n
        )?;
    }
    let (m, run) = represent(a.q, a.n, a.seed, a.max_rounds)?;
    let report = RunReport::from(&run);
    if run.outcome == Outcome::Success {
        let path = a
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("L{}_{}_seed{}.lqn", a.q, a.n, a.seed)));
        let mut w = create(&path)?;
        write_representation(&m, &mut w)?;
        writeln!(err, "wrote {}", path.display())?;
    }
    if let Some(p) = &a.report {
        let mut w = create(p)?;
        write_json(&mut w, &report)?;
        w.flush()?;
    }
    write_json(out, &report)?;
    Ok(match run.outcome {
        Outcome::Success => EXIT_OK,
        Outcome::Exhausted | Outcome::Rejected => EXIT_NEGATIVE,
    })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let f = File::open(&a.file).with_context(|| format!("cannot open {}", a.file.display()))?;
    let m = read_representation(BufReader::new(f))
        .with_context(|| format!("cannot parse {}", a.file.display()))?;
    let s = AtomStructure::new(m.q(), m.n())?;
    let report = if a.all { Report::All } else { Report::First };
    let result = with_threads(a.threads, || verify_parallel(&m, &s, report))?;
    write_json(out, &verify_json(&m, &result))?;
    Ok(if result.valid { EXIT_OK } else { EXIT_NEGATIVE })
}

fn mc_json(s: &MonteCarloSummary) -> serde_json::Value {
    let est = |e: &crate::parallel::Estimate| {
        serde_json::json!({
            "hits": e.hits,
            "samples": e.samples,
            "empirical": e.empirical,
            "analytic": e.analytic,
            "sigma": e.sigma,
            "within_3_sigma": e.within_sigmas(3.0),
        })
    };
    serde_json::json!({
        "q": s.q,
        "n": s.n,
        "seed": s.seed,
        "trials": s.trials,
        "att": est(&s.att),
        "tatta": est(&s.tatta),
        "att_pooled": est(&s.att_pooled),
        "tatta_pooled": est(&s.tatta_pooled),
        "any_failure": s.any_failure,
        "any_failure_sigma": s.any_failure_sigma,
        "union_bound": s.union_bound,
        "union_bound_respected": s.union_bound_respected(3.0),
    })
}

fn mc_csv(s: &MonteCarloSummary) -> String {
    let mut text = String::from("quantity,empirical,analytic,sigma\n");
    for (name, e) in [
        ("att", &s.att),
        ("tatta", &s.tatta),
        ("att_pooled", &s.att_pooled),
        ("tatta_pooled", &s.tatta_pooled),
    ] {
        text.push_str(&format!(
            "{name},{},{},{}\n",
            e.empirical, e.analytic, e.sigma
        ));
    }
    text.push_str(&format!(
        "any_failure,{},{},{}\n",
        s.any_failure, s.union_bound, s.any_failure_sigma
    ));
    text
}

pub fn cmd_mc(a: &McArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    require_prime_power(a.q)?;
    if a.n < 2 {
        bail!("n must be at least 2");
    }
    if a.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let summary = with_threads(a.threads, || monte_carlo(a.q, a.n, a.trials, a.seed))?;
    let text = match a.format {
        McFormat::Json => serde_json::to_string_pretty(&mc_json(&summary))? + "\n",
        McFormat::Csv => mc_csv(&summary),
    };
    emit(&text, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_bounds(a: &QnArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let r = bounds::bounds_report(a.q, a.n)?;
    write_json(out, &bounds_json(&r))?;
    Ok(EXIT_OK)
}

fn check_range(nmin: u64, nmax: u64) -> anyhow::Result<()> {
    if nmin < 2 {
        bail!("--nmin must be at least 2");
    }
    if nmax > 100_000 {
        bail!("--nmax above 100000 is not supported");
    }
    Ok(())
}

pub fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    check_range(a.nmin, a.nmax)?;
    if a.csv {
        out.write_all(bounds::figure1_csv(a.nmin, a.nmax)?.as_bytes())?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "{:>4}  {:>11}  {:>11}",
        "n", "union bound", "local lemma"
    )?;
    for row in bounds::threshold_table(a.nmin, a.nmax)? {
        writeln!(out, "{:>4}  {:>11}  {:>11}", row.n, row.q_union, row.q_lll)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_fig1(a: &Fig1Args, out: &mut dyn Write) -> anyhow::Result<u8> {
    check_range(a.nmin, a.nmax)?;
    emit(&bounds::figure1_csv(a.nmin, a.nmax)?, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn parse_grid(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let v: f64 = t
                .trim()
                .parse()
                .with_context(|| format!("bad epsilon {t:?}"))?;
            if !(v > 0.0 && v.is_finite()) {
                bail!("epsilon must be positive, got {v}");
            }
            Ok(v)
        })
        .collect()
}

pub fn cmd_fig2(a: &Fig2Args, out: &mut dyn Write) -> anyhow::Result<u8> {
    let grid = match a.eps {
        Some(e) => parse_grid(&e.to_string())?,
        None => parse_grid(&a.eps_grid)?,
    };
    emit(&bounds::figure2_csv(&grid, a.cap)?, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_atoms(a: &AtomsArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let s = AtomStructure::new(a.q, a.n)?;
    write_json(out, &atom_table_json(&s))?;
    Ok(EXIT_OK)
}
