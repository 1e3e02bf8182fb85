//! `cbounds`: run bound analyses on a scenario file and emit CSV.
//!
//! Exit status: 0 when every check passes, 2 on a containment violation,
//! 3 on bad input (unreadable or invalid scenario, bad flags, domain errors).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use compound_bounds::harness::{run, RunOptions};
use compound_bounds::{parse_scenario, Analysis, Error};

const EXIT_VIOLATION: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AnalysisArg {
    Bounds,
    Sweep,
    Verify,
    Resonance,
}

impl From<AnalysisArg> for Analysis {
    fn from(a: AnalysisArg) -> Self {
        match a {
            AnalysisArg::Bounds => Analysis::Bounds,
            AnalysisArg::Sweep => Analysis::Sweep,
            AnalysisArg::Verify => Analysis::Verify,
            AnalysisArg::Resonance => Analysis::Resonance,
        }
    }
}

/// Phase-independent bounds for compound barriers.
#[derive(Debug, Parser)]
#[command(name = "cbounds", version)]
struct Cli {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: PathBuf,

    /// Analysis to run. Defaults to every analysis listed in the scenario.
    #[arg(long, value_enum)]
    analysis: Option<AnalysisArg>,

    /// Seed for random phase sampling.
    #[arg(long, env = "CB_SEED", default_value_t = 0)]
    seed: u64,

    /// Random phase assignments per sequence.
    #[arg(long, env = "CB_SAMPLES", default_value_t = 4096)]
    samples: usize,

    /// Output file, or `stdout`/`-`.
    #[arg(long, default_value = "stdout")]
    out: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundViolation { .. } => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    let text = fs::read_to_string(&cli.scenario)
        .map_err(|e| Error::Io(format!("{}: {e}", cli.scenario.display())))?;
    let scenario = parse_scenario(&text)?;
    if cli.samples == 0 {
        return Err(Error::Domain("--samples must be at least 1".into()));
    }
    let opts = RunOptions {
        seed: cli.seed,
        samples: cli.samples,
    };
    let analyses: Vec<Analysis> = match cli.analysis {
        Some(a) => vec![a.into()],
        None => scenario.analyses.iter().copied().collect(),
    };

    let mut buf = Vec::new();
    let mut passed = true;
    for (i, analysis) in analyses.into_iter().enumerate() {
        let report = run(&scenario, analysis, &opts)?;
        if !report.passed {
            eprintln!("cbounds: {analysis}: containment violated");
        }
        passed &= report.passed;
        if i > 0 {
            buf.push(b'\n');
        }
        report.table.write_csv(&mut buf)?;
    }

    let io_err = |e: io::Error| Error::Io(format!("{}: {e}", cli.out));
    if cli.out == "stdout" || cli.out == "-" {
        io::stdout().lock().write_all(&buf).map_err(io_err)?;
    } else {
        fs::write(&cli.out, &buf).map_err(io_err)?;
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("cbounds: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
