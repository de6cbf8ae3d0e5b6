//! `siegel-verify`: runs the residual checks and writes a JSON-lines report.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use siegel_core::verify::{self, parse_tol_override, RunConfig, Status, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Geometry,
    Autgroup,
    Jets,
    Examples,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "siegel-verify", version)]
#[command(about = "Check Cayley, automorphism, jet and example-map identities numerically")]
struct Cli {
    /// Ambient dimension n ≥ 2; repeat to sweep. Defaults to 2, 4 and 8.
    #[arg(long = "dim")]
    dims: Vec<usize>,

    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Samples per check (expensive checks are capped lower).
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// Suite to run; repeatable. Defaults to all.
    #[arg(long = "suite", value_enum)]
    suites: Vec<SuiteArg>,

    /// Tolerance override `<check>=<value>`; repeatable.
    #[arg(long = "tol", value_parser = parse_tol)]
    tols: Vec<(String, f64)>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,

    /// List check names and default tolerances, then exit.
    #[arg(long)]
    list: bool,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    parse_tol_override(s).map_err(|e| e.to_string())
}

fn config_from(cli: &Cli) -> RunConfig {
    let mut cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        tol_overrides: cli.tols.iter().cloned().collect::<BTreeMap<_, _>>(),
        ..RunConfig::default()
    };
    if !cli.dims.is_empty() {
        cfg.dims = cli.dims.clone();
    }
    if !cli.suites.is_empty() && !cli.suites.contains(&SuiteArg::All) {
        cfg.suites = cli
            .suites
            .iter()
            .map(|s| match s {
                SuiteArg::Geometry => Suite::Geometry,
                SuiteArg::Autgroup => Suite::Autgroup,
                SuiteArg::Jets => Suite::Jets,
                SuiteArg::Examples => Suite::Examples,
                SuiteArg::All => unreachable!(),
            })
            .collect();
    }
    cfg
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();

    if cli.list {
        for check in verify::CHECKS {
            println!("{:<40} {:<9} {:e}", check.name, check.suite, check.tol);
        }
        return ExitCode::SUCCESS;
    }

    let cfg = config_from(&cli);
    let outcome = match verify::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    for r in &outcome.results {
        let mark = if r.status == Status::Pass { "pass" } else { "FAIL" };
        let residual = r
            .residual
            .map_or_else(|| r.error.clone().unwrap_or_default(), |x| format!("{x:.3e}"));
        eprintln!("{mark}  {:<48} residual {residual:<12} tol {:.0e}", r.name, r.tol);
    }
    let summary = verify::summarize(&outcome.results);
    eprintln!("{} checks, {} failed", summary.checks, summary.failed);

    let text = verify::report(&outcome.results);
    match &cli.report {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}
