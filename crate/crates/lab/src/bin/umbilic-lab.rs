use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use umbilic_lab::{compare_reports, init_threads_from_env, load_report, run_file, DiffTolerances, SCENARIO_KINDS};

/// Curvature-diagram and umbilic-index laboratory.
#[derive(Parser)]
#[command(name = "umbilic-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file. Exits 0 if every certificate holds, 2 if one fails.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Compare two report.json files. Exits 2 on drift.
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        rel_tol: f64,
        #[arg(long, default_value_t = 0.0)]
        abs_tol: f64,
    },
    /// List the scenario kinds.
    ListScenarios,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("umbilic-lab: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> umbilic_lab::Result<u8> {
    match cli.command {
        Command::Run { config, output_dir } => {
            init_threads_from_env()?;
            let out = run_file(&config, output_dir.as_deref())?;
            let r = &out.report;
            let held = r.certificates.len() - r.failing.len();
            println!("{}: {held}/{} certificates hold", r.config.scenario.kind(), r.certificates.len());
            for claim in &r.failing {
                println!("FAILS {claim}");
            }
            println!("wrote {}", out.output_dir.join("report.json").display());
            Ok(r.exit_code())
        }
        Command::Diff { a, b, rel_tol, abs_tol } => {
            let diff = compare_reports(&load_report(&a)?, &load_report(&b)?, DiffTolerances { rel: rel_tol, abs: abs_tol })?;
            let json = umbilic_lab::output::to_stable_json(&diff)
                .map_err(|source| umbilic_lab::LabError::Json { path: a.clone(), source })?;
            print!("{}", String::from_utf8_lossy(&json));
            Ok(if diff.is_empty() { 0 } else { 2 })
        }
        Command::ListScenarios => {
            for (kind, about) in SCENARIO_KINDS {
                println!("{kind:<18} {about}");
            }
            Ok(0)
        }
    }
}
