//! Batch front end: scenario files in, CSV tables and optional SVG plots out.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{describe_schema, parse_config, Scenario, ScenarioConfig};
pub use error::CliError;
pub use output::write_outputs;
pub use run::{run_scenario, run_scenario_in, ResultTable};

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "COHERENCE_LAB_THREADS";

/// Parses a thread-count setting; must be a positive integer.
pub fn parse_thread_count(raw: &str) -> Result<usize, CliError> {
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Validation(vec![format!(
            "{THREADS_ENV} must be a positive integer, got `{raw}`"
        )])),
    }
}
