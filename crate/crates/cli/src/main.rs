use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use torus_chaos::entropy::Engine;
use torus_chaos_cli::config::{parse_alpha_list, Settings};
use torus_chaos_cli::output::ManifestEntry;
use torus_chaos_cli::runner::{
    classify_line, run_density_maps, run_entropy_sweep, run_lyapunov_fit,
};
use torus_chaos_cli::{ExperimentConfig, PartitionSpec, Task};

#[derive(Parser)]
#[command(
    name = "torus-chaos",
    version,
    about = "Entropy production of discretized torus maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the regime, leading eigenvalue and breaking time of each alpha.
    Classify(CommonArgs),
    /// Write H(n) and h(n) = H(n)/n for each alpha.
    Entropy(CommonArgs),
    /// Write frequency density maps (PGM plus raw CSV) for each alpha and n.
    Density(CommonArgs),
    /// Extrapolate h(n) to n -> infinity and compare with ln(lambda).
    Lyapunov(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Comma-separated list of alpha values.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Inclusive sweep a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    alpha_range: Option<String>,
    /// Lattice size N.
    #[arg(long)]
    n_grid: Option<u32>,
    /// random:D | cluster:D:cx,cy | file:<path>
    #[arg(long, allow_hyphen_values = true)]
    partition: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest n.
    #[arg(long)]
    steps: Option<usize>,
    /// frequency | gram | auto
    #[arg(long)]
    engine: Option<Engine>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn settings(&self) -> anyhow::Result<Settings> {
        let flags = Settings {
            alpha: self.alpha.as_deref().map(parse_alpha_list).transpose()?,
            alpha_range: self.alpha_range.clone(),
            grid: self.n_grid,
            partition: self
                .partition
                .as_deref()
                .map(str::parse::<PartitionSpec>)
                .transpose()?,
            seed: self.seed,
            steps: self.steps,
            engine: self.engine,
            out: self.out.clone(),
        };
        let file = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        Ok(file.overlay(flags))
    }
}

fn report(entries: &[ManifestEntry]) -> ExitCode {
    let mut failed = false;
    for e in entries {
        if !e.is_ok() {
            failed = true;
            eprintln!("{}", e.line());
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let (args, task) = match &cli.command {
        Command::Classify(args) => {
            let settings = args.settings()?;
            for alpha in settings.alphas()? {
                println!("{}", classify_line(alpha, settings.grid));
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Entropy(args) => (args, Task::Entropy),
        Command::Density(args) => (args, Task::Density),
        Command::Lyapunov(args) => (args, Task::Lyapunov),
    };
    let cfg =
        ExperimentConfig::validate(&args.settings()?, task).context("invalid configuration")?;
    let entries = match task {
        Task::Entropy => run_entropy_sweep(&cfg)?,
        Task::Density => run_density_maps(&cfg)?,
        Task::Lyapunov => run_lyapunov_fit(&cfg)?,
    };
    Ok(report(&entries))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
