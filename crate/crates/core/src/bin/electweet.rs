use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use electweet::cli::{self, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(name = "electweet", version, about = "Election tweet analytics with CSV output")]
struct Args {
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Extra `key=value` config entries, applied after the file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Write a seeded synthetic corpus.
    Synth,
    /// Top hashtags/mentions and party mention shares.
    Mentions,
    /// Per-party sentiment over the whole corpus and trailing windows.
    Sentiment,
    /// Candidate availability, daily activeness and frame participation.
    Activity,
    /// Winner/loser and party profile comparisons.
    Profiles,
    /// Benchmark classifiers and save the tuned models.
    Train,
    /// Benchmark classifiers and write only the report.
    Report,
}

fn config(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_file(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => RunConfig::default(),
    };
    cfg.apply_overrides(&args.overrides)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    if let Some(dir) = &args.out_dir {
        cfg.out_dir = dir.clone();
    }
    if let Some(n) = args.threads {
        cfg.threads = Some(n);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = match args.command {
        Sub::Synth => Command::Synth,
        Sub::Mentions => Command::Mentions,
        Sub::Sentiment => Command::Sentiment,
        Sub::Activity => Command::Activity,
        Sub::Profiles => Command::Profiles,
        Sub::Train => Command::Train,
        Sub::Report => Command::Report,
    };
    let result = config(&args).and_then(|cfg| {
        if let Some(n) = cfg.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        cli::run(command, &cfg)
    });
    match result {
        Ok(out) => {
            for note in &out.notes {
                eprintln!("{note}");
            }
            for f in &out.files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("electweet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
