//! Scenario runner for the `umbilic-lab` command-line tool.
//!
//! A scenario file names one construction and its parameters; running it
//! produces `report.json` with every certificate and numeric artifact, and
//! CSV tables for plotting.

pub mod config;
pub mod diff;
pub mod error;
pub mod output;
pub mod report;
pub mod scenarios;

pub use config::{load_config, parse_config, Config, Scenario, SCENARIO_KINDS};
pub use diff::{compare_reports, load_report, DiffTolerances, ReportDiff};
pub use error::{LabError, Result};
pub use report::{build_report, run_file, run_to_dir, Report, RunOutput};

/// Sizes the global rayon pool from `UMBILIC_LAB_THREADS` when it is set.
pub fn init_threads_from_env() -> Result<()> {
    let Ok(raw) = std::env::var("UMBILIC_LAB_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| LabError::Threads(raw.clone()))?;
    if n == 0 {
        return Err(LabError::Threads(raw));
    }
    // A pool that already exists keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
