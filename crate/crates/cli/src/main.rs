//! chazylab: enumerate the Chazy XII triangle-function cases, evaluate the
//! solutions, and run the verification suites.
//!
//! Exit codes: 0 pass, 1 tolerance failure, 2 structural mismatch or unknown
//! input, 3 evaluation-domain error.

mod config;
mod emit;
mod eval;
mod table;
mod verify;

use clap::{Args, Parser, Subcommand};
use config::{parse_k_list, Format, GridSpec, RunConfig};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownCase(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    chazylab::classifier::ClassifierError,
    chazylab::conformal::ConformalError,
    chazylab::evaluator::EvaluatorError,
    chazylab::maps::MapsError,
    chazylab::specfun::SpecfunError
);

#[derive(Parser, Debug)]
#[command(name = "chazylab", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// k values: comma list, a..b ranges allowed
    #[arg(long, global = true, value_parser = parse_k_arg)]
    k: Option<KList>,
    /// Relative tolerance for residual checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Series truncation order
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
    /// Largest denominator searched by the classifier
    #[arg(long = "denom-bound", global = true, default_value_t = 60)]
    denom_bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Sample grid n,lo,hi on (0,1)
    #[arg(long, global = true, default_value_t = GridSpec::default())]
    grid: GridSpec,
    /// Write records here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct KList(Vec<i64>);

fn parse_k_arg(v: &str) -> Result<KList, String> {
    parse_k_list(v).map(KList)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the admissible parameters and compare with the golden table
    Enumerate,
    /// Run a residual or identity suite
    Verify {
        #[arg(value_enum)]
        suite_arg: Option<verify::Suite>,
        #[arg(long, value_enum)]
        suite: Option<verify::Suite>,
    },
    /// Emit per-point data for one case
    Eval {
        case: String,
        #[arg(long, value_enum, default_value = "y")]
        what: eval::What,
    },
}

fn config(c: &Common) -> RunConfig {
    RunConfig {
        tolerance: c.tol,
        series_order: c.order,
        denom_bound: c.denom_bound,
        k_list: c.k.clone().map_or_else(|| RunConfig::default().k_list, |k| k.0),
        grid: c.grid,
        output_format: c.format,
    }
}

fn writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_enumerate(cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    let (lo, hi) = (
        *cfg.k_list.iter().min().expect("nonempty"),
        *cfg.k_list.iter().max().expect("nonempty"),
    );
    let e = chazylab::classifier::enumerate(lo, hi, cfg.denom_bound);
    let recs = table::records(&e, &cfg.k_list);
    table::table(&recs, cfg.output_format).write(cfg.output_format, out)?;
    out.flush()?;
    let mut diff = table::diff(&recs, &cfg.k_list, cfg.denom_bound);
    for u in &e.unmatched {
        diff.push(format!("+ family not in the table: {}", u.label));
    }
    for o in &e.off_family {
        diff.push(format!("+ off-family solution {} {} J={}: {}", o.triangle, o.weights, o.j, o.reason));
    }
    let families = recs
        .iter()
        .map(|r| r.label.as_str())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    eprintln!(
        "{families} families, {} records at denominator bound {}",
        recs.len(),
        cfg.denom_bound
    );
    if diff.is_empty() {
        eprintln!("matches golden table");
        Ok(0)
    } else {
        eprintln!("mismatch against golden table:");
        for d in diff {
            eprintln!("{d}");
        }
        Ok(2)
    }
}

fn cmd_verify(cfg: &RunConfig, suite: verify::Suite, out: &mut dyn Write) -> Result<u8, CliError> {
    let checks = verify::run(cfg, suite)?;
    verify::table(&checks).write(cfg.output_format, out)?;
    out.flush()?;
    let failed: Vec<&verify::Check> = checks.iter().filter(|c| !c.passed).collect();
    eprintln!("{} checks, {} failed", checks.len(), failed.len());
    for c in &failed {
        eprintln!(
            "FAIL {} {} k={} max_defect={} {}",
            c.suite,
            c.case,
            c.k.map_or(String::from("-"), |k| k.to_string()),
            emit::fmt_f64(c.max_defect),
            c.detail
        );
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = config(&cli.common);
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return Ok(2);
    }
    match cli.command {
        Command::Enumerate => cmd_enumerate(&cfg, &mut *writer(&cli.common.out)?),
        Command::Verify { suite_arg, suite } => {
            let suite = suite.or(suite_arg).unwrap_or(verify::Suite::All);
            cmd_verify(&cfg, suite, &mut *writer(&cli.common.out)?)
        }
        Command::Eval { case, what } => {
            let &[k] = &cfg.k_list[..] else {
                eprintln!("error: eval takes a single --k");
                return Ok(2);
            };
            let t = eval::run(&cfg, &case, k, what)?;
            let mut out = writer(&cli.common.out)?;
            t.write(cfg.output_format, &mut *out)?;
            out.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
