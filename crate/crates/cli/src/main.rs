use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coherence_cli::{
    describe_schema, parse_config, parse_thread_count, run_scenario_in, write_outputs, CliError,
    Scenario, THREADS_ENV,
};

#[derive(Parser)]
#[command(name = "coherence-lab", version, about = "Correlation-induced spectral effects, batch runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its tables.
    Run {
        config: PathBuf,
        /// Output directory; overrides `output_dir` in the file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one SVG line chart per table.
        #[arg(long)]
        plot: bool,
    },
    /// Print the keys accepted by a scenario.
    Schema { scenario: String },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n = parse_thread_count(&raw)?;
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(config: &Path, out: Option<PathBuf>, plot: bool) -> Result<(), CliError> {
    configure_threads()?;
    let text = std::fs::read_to_string(config).map_err(|source| CliError::Io {
        path: config.to_path_buf(),
        source,
    })?;
    let cfg = parse_config(&text)?;
    let base = config.parent().unwrap_or(Path::new("."));
    let tables = run_scenario_in(&cfg, base)?;
    let dir = out
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    for path in write_outputs(cfg.scenario.name(), &tables, &dir, plot)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, plot } => run(&config, out, plot),
        Command::Schema { scenario } => scenario
            .parse::<Scenario>()
            .map(|s| print!("{}", describe_schema(s)))
            .map_err(|e| CliError::Validation(vec![e])),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
