use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use brillsq_cli::check::reference_checks;
use brillsq_cli::report::{run_csv, sweep_csv};
use brillsq_cli::{pipeline, RunError, RunOptions, Scenario};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Brillouin photon-phonon squeezing: phase matching, pump linearization,
/// Bogoliubov diagonalization and squeezed-state statistics, cross-checked
/// in a truncated Fock space.
#[derive(Parser)]
#[command(name = "brillsq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        /// Write the oracle's two-mode state as a text table.
        #[arg(long, value_name = "PATH")]
        dump_state: Option<PathBuf>,
    },
    /// Run the scenario's parameter sweep.
    Sweep {
        scenario: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the built-in 10 GHz reference example and compare with expected values.
    Check,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override the scenario's oracle setting.
    #[arg(long, value_enum)]
    oracle: Option<Switch>,
    /// Also report squeezing in dB.
    #[arg(long)]
    db: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

const EXIT_ORACLE: u8 = 4;

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let code = e.downcast_ref::<RunError>().map_or(1, RunError::exit_code);
            eprintln!("error: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}

fn load(path: &Path, output: &OutputArgs) -> anyhow::Result<Scenario> {
    let mut scenario = Scenario::load(path).map_err(RunError::from)?;
    if let Some(switch) = output.oracle {
        scenario.oracle.enabled = matches!(switch, Switch::On);
    }
    Ok(scenario)
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run {
            scenario,
            output,
            dump_state,
        } => {
            let scenario = load(&scenario, &output)?;
            let (report, state) =
                pipeline::run_with_state(&scenario, RunOptions { db: output.db })?;
            if let Some(path) = dump_state {
                let state = state.context("--dump-state needs the oracle enabled")?;
                let file =
                    File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                state.write_table(BufWriter::new(file))?;
            }
            let text = match output.format {
                Format::Json => report.to_json(),
                Format::Csv => run_csv(&report),
            };
            emit(&text, output.out.as_deref())?;
            if let Some(o) = report.oracle.as_ref().filter(|o| !o.passed) {
                eprintln!(
                    "oracle disagreement: {} deviates by {:e} (tolerance {:e})",
                    o.worst_entry, o.max_deviation, o.tolerance
                );
                return Ok(ExitCode::from(EXIT_ORACLE));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { scenario, output } => {
            let scenario = load(&scenario, &output)?;
            let report = pipeline::sweep(&scenario, RunOptions { db: output.db })?;
            let text = match output.format {
                Format::Json => report.to_json(),
                Format::Csv => sweep_csv(&report),
            };
            emit(&text, output.out.as_deref())?;
            let failed = report.rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!(
                    "{failed} of {} grid points failed; see the error column",
                    report.rows.len()
                );
            }
            let oracle_failures = report
                .rows
                .iter()
                .filter(|r| r.report.as_ref().is_some_and(|rep| !rep.oracle_passed()))
                .count();
            if oracle_failures > 0 {
                eprintln!("oracle disagreement at {oracle_failures} grid points");
                return Ok(ExitCode::from(EXIT_ORACLE));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check => {
            let lines = reference_checks()?;
            for line in &lines {
                println!("{line}");
            }
            let failed = lines.iter().filter(|l| !l.passed()).count();
            if failed == 0 {
                println!("all {} checks passed", lines.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{failed} of {} checks failed", lines.len());
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
