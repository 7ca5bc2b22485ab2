use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_brauer_cli::{compute, golden, verify, CliError, JobConfig, EXIT_ERROR, EXIT_OK};

#[derive(Parser)]
#[command(name = "cubic-brauer", version, about = "Relative Brauer groups of diagonal and general cubic curves")]
struct Cli {
    /// Check every `<name>.config.json` in DIR against its `<name>.report.json`.
    #[arg(long, value_name = "DIR")]
    golden: Option<PathBuf>,
    /// Rewrite golden reports that are missing or differ.
    #[arg(long, requires = "golden")]
    bless: bool,
    /// Seed for the randomized Clifford trials.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the report for a job config and print it as JSON.
    Compute { config: PathBuf },
    /// Run only the randomized Clifford-identity trials.
    Verify {
        config: PathBuf,
        #[arg(long)]
        trials: Option<u32>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(dir) = cli.golden {
        if cli.command.is_some() {
            return Err(CliError::Config("--golden cannot be combined with a subcommand".into()));
        }
        let outcomes = golden::check_dir(&dir, cli.seed, cli.bless)?;
        println!("{}", serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"));
        return Ok(if outcomes.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_ERROR });
    }
    match cli.command {
        Some(Command::Compute { config }) => {
            let doc = compute(&JobConfig::load(&config)?, cli.seed)?;
            print!("{}", doc.to_json());
            Ok(doc.exit_code())
        }
        Some(Command::Verify { config, trials }) => {
            let cfg = JobConfig::load(&config)?;
            let opts = cfg.verify_clifford.as_ref();
            let trials = trials.or(opts.map(|c| c.trials)).unwrap_or(verify::DEFAULT_TRIALS);
            let seed = cli.seed.or(opts.and_then(|c| c.seed)).unwrap_or(verify::DEFAULT_SEED);
            let summary = verify::run_trials(trials, seed)?;
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            Ok(if summary.all_passed { EXIT_OK } else { EXIT_ERROR })
        }
        None => Err(CliError::Config("expected a subcommand or --golden <dir>".into())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // usage errors exit 1, since 2 means a partial result
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
