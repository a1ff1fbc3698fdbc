//! Command-line front end for the beamforming experiment harness.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure,
//! 4 i/o error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use isacbeam::harness::{
    monte_carlo, run_single, sweep, write_aggregates_csv, write_beampattern_csv, write_records_csv,
    write_report_json, ExperimentConfig, Method,
};
use isacbeam::problem::ProblemSpec;
use isacbeam::Error;

#[derive(Parser)]
#[command(
    name = "isacbeam",
    about = "Constrained ISAC transmit-beamforming design by Riemannian manifold optimization",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON experiment configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for data files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the number of Monte Carlo trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated subset of IMBO, ZF, MMSE.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    /// Worker threads for Monte Carlo trials.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single scenario and export records plus the solver report.
    Run(CommonArgs),
    /// Run seeded Monte Carlo trials and export per-trial and summary tables.
    Montecarlo(CommonArgs),
    /// Repeat the Monte Carlo campaign along the configured sweep axis.
    Sweep(CommonArgs),
    /// Solve one scenario and export directional gain profiles.
    Beampattern(CommonArgs),
}

fn load_config(args: &CommonArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(methods) = &args.methods {
        cfg.methods = methods.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_run(args: &CommonArgs) -> Result<(), Error> {
    let cfg = load_config(args)?;
    let out = run_single(&cfg)?;
    write_records_csv(&args.out.join("records.csv"), &cfg, &out.records)?;
    write_report_json(
        &args.out.join("report.json"),
        &cfg,
        out.imbo_report.as_ref(),
    )?;
    for r in &out.records {
        eprintln!(
            "{}: sum rate {:.3} bits/s/Hz, min margin {:.2} dB, sensing {} ({:.2}s)",
            r.method,
            r.sum_rate_bps_hz,
            r.min_beampattern_margin_db,
            if r.sensing_feasible { "ok" } else { "violated" },
            r.wall_time_s,
        );
    }
    eprintln!("wrote {}", args.out.join("records.csv").display());
    Ok(())
}

fn cmd_campaign(args: &CommonArgs, sweeping: bool) -> Result<(), Error> {
    let cfg = load_config(args)?;
    let out = if sweeping {
        sweep(&cfg, args.threads)?
    } else {
        monte_carlo(&cfg, args.threads)?
    };
    write_records_csv(&args.out.join("trials.csv"), &cfg, &out.records)?;
    write_aggregates_csv(&args.out.join("summary.csv"), &cfg, &out.aggregates)?;
    for a in &out.aggregates {
        eprintln!(
            "point {} ({}={}) {}: mean rate {:.3} +/- {:.3}, feasibility {:.0}%",
            a.sweep_index,
            a.sweep_param,
            a.sweep_value,
            a.method,
            a.mean_sum_rate_bps_hz,
            a.stderr_sum_rate_bps_hz,
            100.0 * a.sensing_feasibility_rate,
        );
    }
    if !out.failures.is_empty() {
        eprintln!("{} trial(s) failed:", out.failures.len());
        for f in &out.failures {
            eprintln!("  point {} trial {}: {}", f.sweep_index, f.trial, f.message);
        }
    }
    eprintln!("wrote {}", args.out.join("summary.csv").display());
    Ok(())
}

fn cmd_beampattern(args: &CommonArgs) -> Result<(), Error> {
    let cfg = load_config(args)?;
    let out = run_single(&cfg)?;
    let spec = ProblemSpec::from_scenario(&out.scenario)?;
    let grid = cfg.theta_grid_deg.values();
    let mut profiles = Vec::new();
    for (method, w) in &out.beamformers {
        profiles.push((
            *method,
            isacbeam::harness::beampattern_profile_dbm(&spec, w, &grid)?,
        ));
    }
    write_beampattern_csv(&args.out.join("beampattern.csv"), &cfg, &grid, &profiles)?;
    eprintln!("wrote {}", args.out.join("beampattern.csv").display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Montecarlo(args) => cmd_campaign(args, false),
        Command::Sweep(args) => cmd_campaign(args, true),
        Command::Beampattern(args) => cmd_beampattern(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
