//! swarmsim: run, replay, render and export swarm simulations.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 runtime error,
//! 3 replay divergence.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use swarmsim_cli::{
    parse_config, read_trace, render_frames, replay_verify, write_metrics_csv, write_trace,
    ReplayReport, Tolerance,
};
use swarmsim_core::metrics::{milling_onset, MillingCriteria};
use swarmsim_core::{detect_milling, run, SimConfig, Trace};

#[derive(Parser)]
#[command(name = "swarmsim", version, about = "Deterministic swarm milling simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation and write its trace
    Run {
        /// INI config file; defaults are used for absent keys or no file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides world.seed
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides world.num_ticks
        #[arg(long)]
        ticks: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for per-agent evaluation
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Recompute a trace and report the first divergence
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Accept 1e-9 relative differences (traces from another build)
        #[arg(long)]
        cross_build: bool,
    },
    /// Write SVG frames for every n-th tick
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        every: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Export the metrics rows as CSV
    Metrics {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    Divergence(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Usage(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
            Failure::Runtime(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
            Failure::Divergence(msg) => {
                eprintln!("{msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn runtime<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Runtime(e.into())
}

fn load_config(path: Option<&Path>) -> Result<SimConfig, Failure> {
    match path {
        None => Ok(SimConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))
                .map_err(Failure::Usage)?;
            parse_config(&text)
                .with_context(|| format!("in {}", p.display()))
                .map_err(Failure::Usage)
        }
    }
}

fn load_trace(path: &Path) -> Result<Trace, Failure> {
    let file = File::open(path)
        .with_context(|| format!("opening trace {}", path.display()))
        .map_err(runtime)?;
    read_trace(BufReader::new(file))
        .with_context(|| format!("reading trace {}", path.display()))
        .map_err(runtime)
}

fn cmd_run(
    config: Option<PathBuf>,
    seed: Option<u64>,
    ticks: Option<u64>,
    out: PathBuf,
    threads: usize,
) -> Result<(), Failure> {
    let mut cfg = load_config(config.as_deref())?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(ticks) = ticks {
        cfg.num_ticks = ticks;
    }
    if threads == 0 {
        return Err(Failure::Usage(anyhow::anyhow!("--threads must be >= 1")));
    }
    let trace = run(&cfg, threads).map_err(runtime)?;
    let file = File::create(&out)
        .with_context(|| format!("creating {}", out.display()))
        .map_err(runtime)?;
    write_trace(&trace, file).map_err(runtime)?;

    let history = trace.metrics_history();
    let criteria = MillingCriteria::default();
    let milling = detect_milling(&history, &criteria).map_err(runtime)?;
    let last = history.last().copied().unwrap_or_default();
    println!(
        "wrote {} records to {}; final L = {:+.4}, mean radius = {:.4} m, milling = {}{}",
        trace.records.len(),
        out.display(),
        last.angular_momentum,
        last.mean_radius,
        milling,
        milling_onset(&history, &criteria)
            .map(|i| format!(" (window first satisfied at tick {i})"))
            .unwrap_or_default()
    );
    Ok(())
}

fn cmd_replay(trace: PathBuf, threads: usize, cross_build: bool) -> Result<(), Failure> {
    let t = load_trace(&trace)?;
    let tol = if cross_build {
        Tolerance::CROSS_BUILD
    } else {
        Tolerance::Exact
    };
    match replay_verify(&t, threads, tol).map_err(runtime)? {
        ReplayReport::Success { records } => {
            println!("replay ok: {records} records verified");
            Ok(())
        }
        ReplayReport::Divergence(d) => Err(Failure::Divergence(d.to_string())),
    }
}

fn cmd_render(trace: PathBuf, every: u64, out_dir: PathBuf) -> Result<(), Failure> {
    if every == 0 {
        return Err(Failure::Usage(anyhow::anyhow!("--every must be >= 1")));
    }
    let t = load_trace(&trace)?;
    let written = render_frames(&t, every, &out_dir)
        .with_context(|| format!("writing frames to {}", out_dir.display()))
        .map_err(runtime)?;
    println!("wrote {} frames to {}", written.len(), out_dir.display());
    Ok(())
}

fn cmd_metrics(trace: PathBuf, csv: PathBuf) -> Result<(), Failure> {
    let t = load_trace(&trace)?;
    let file = File::create(&csv)
        .with_context(|| format!("creating {}", csv.display()))
        .map_err(runtime)?;
    write_metrics_csv(&t, file).map_err(runtime)?;
    println!("wrote {} metric rows to {}", t.records.len(), csv.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            seed,
            ticks,
            out,
            threads,
        } => cmd_run(config, seed, ticks, out, threads),
        Command::Replay {
            trace,
            threads,
            cross_build,
        } => cmd_replay(trace, threads, cross_build),
        Command::Render {
            trace,
            every,
            out_dir,
        } => cmd_render(trace, every, out_dir),
        Command::Metrics { trace, csv } => cmd_metrics(trace, csv),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
