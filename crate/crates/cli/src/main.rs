use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qpt_sim::commands;
use qpt_sim::ExperimentConfig;

/// Adiabatic sweep through the quantum phase transition of two coupled spins.
#[derive(Parser, Debug)]
#[command(name = "qpt-sim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat TOML configuration; built-in defaults when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding `output_dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Keep every n-th trajectory record (simulate only).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    stride: u64,
    /// Switch decoherence off.
    #[arg(long, global = true)]
    no_decoherence: bool,
    /// Optimizer seed, overriding `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Triplet levels and ground-state amplitudes against g_z.
    EigenScan,
    /// Continuous and discretized sweep schedules plus the compiled pulse timings.
    SweepDesign,
    /// Stepwise scan with per-step fidelity, concurrence and correlator.
    Simulate,
    /// Minimum fidelity against the number of steps, with and without decoherence.
    StepStudy,
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.no_decoherence {
        cfg.decoherence_enabled = false;
    }
    let out = cli.out.clone().unwrap_or_else(|| cfg.output_dir.clone());
    let (paths, notes) = match cli.command {
        Command::EigenScan => commands::run_eigen_scan(&cfg, &out)?,
        Command::SweepDesign => commands::run_sweep_design(&cfg, &out)?,
        Command::Simulate => commands::run_simulate(&cfg, &out, cli.stride as usize)?,
        Command::StepStudy => commands::run_step_study(&cfg, &out)?,
    };
    for n in &notes.0 {
        eprintln!("qpt-sim: warning: {n}");
    }
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!("qpt-sim: {}", msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = format!("{e:#}").replace('\n', " ");
            eprintln!("qpt-sim: error: {line}");
            ExitCode::FAILURE
        }
    }
}
