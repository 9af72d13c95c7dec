use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordtopia_cli::config::RunConfig;
use ordtopia_cli::{doc, run_repro, run_verify, ExampleId, SuiteId};

/// Exit 0 when every check passes, 1 when any fails, 2 on usage or
/// configuration errors.
#[derive(Parser)]
#[command(name = "ordtopia", version, about = "Order, topology, and stream-distance checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one worked example.
    Repro {
        #[arg(value_enum)]
        example: ExampleId,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteId,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Combine previously written JSON reports into one document.
    Merge {
        /// Report files to combine.
        paths: Vec<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Seed for randomized rows; falls back to ORDTOPIA_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per randomized row.
    #[arg(long)]
    trials: Option<usize>,
    /// Largest carrier the sweeps touch (suites clamp it further).
    #[arg(long)]
    max_carrier: Option<usize>,
    /// Exponent for the power-mean stream distance.
    #[arg(long)]
    p: Option<f64>,
    /// Exponent for the capped snap distance.
    #[arg(long)]
    q: Option<f64>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn build_config(opts: &CommonOpts) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    match opts.seed {
        Some(seed) => cfg.seed = seed,
        None => {
            if let Ok(raw) = std::env::var("ORDTOPIA_SEED") {
                cfg.seed = raw
                    .trim()
                    .parse()
                    .map_err(|_| format!("ORDTOPIA_SEED is not an unsigned integer: {raw:?}"))?;
            }
        }
    }
    if let Some(trials) = opts.trials {
        cfg.trials = trials;
    }
    if let Some(max_carrier) = opts.max_carrier {
        cfg.max_carrier = max_carrier;
    }
    cfg.p = opts.p;
    cfg.q = opts.q;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn timed(label: &str, checks: Vec<ordtopia_core::report::CheckReport>, started: Instant) -> Result<doc::Document, String> {
    let elapsed = started.elapsed().as_millis() as u64;
    let timing = BTreeMap::from([(label.to_string(), elapsed)]);
    doc::assemble(checks, timing).map_err(|e| e.to_string())
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let (document, opts) = match &cli.command {
        Command::Repro { example, opts } => {
            let cfg = build_config(opts)?;
            let started = Instant::now();
            let checks = run_repro(*example, &cfg);
            (timed(example.as_str(), checks, started)?, opts)
        }
        Command::Verify { suite, opts } => {
            let cfg = build_config(opts)?;
            let started = Instant::now();
            let checks = run_verify(*suite, &cfg);
            (timed(suite.as_str(), checks, started)?, opts)
        }
        Command::Merge { paths, opts } => {
            let mut docs = Vec::new();
            for path in paths {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                let parsed: doc::Document = serde_json::from_str(&raw)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                docs.push(parsed);
            }
            (doc::merge(docs).map_err(|e| e.to_string())?, opts)
        }
    };

    let body = match opts.format {
        Format::Json => {
            let mut rendered =
                serde_json::to_string_pretty(&document).map_err(|e| e.to_string())?;
            rendered.push('\n');
            rendered
        }
        Format::Text => doc::render_text(&document),
    };
    match &opts.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => print!("{body}"),
    }

    Ok(ExitCode::from(document.exit_code() as u8))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("ordtopia: {message}");
            ExitCode::from(2)
        }
    }
}
