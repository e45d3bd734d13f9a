//! Grid sweep over controller magnitudes used to pick the default
//! `forward_speed` / `turn_rate`.
//!
//! For every cell, runs seeds 1..=10 for 9,000 ticks and counts the seeds
//! whose final 900-tick window passes the milling detector. The best cell
//! maximizes the count, ties broken by the smaller median onset tick.
//!
//! ```text
//! cargo run --release -p swarmsim-core --example calibrate [--mirrored]
//! ```

use rayon::prelude::*;
use swarmsim_core::metrics::{milling_onset, MillingCriteria};
use swarmsim_core::{detect_milling, run, ControllerParams, SimConfig};

const SEEDS: std::ops::RangeInclusive<u64> = 1..=10;

struct Cell {
    forward_speed: f64,
    turn_rate: f64,
    successes: usize,
    median_onset: Option<usize>,
    signs: Vec<i8>,
}

fn evaluate(forward_speed: f64, turn_rate: f64, mirrored: bool) -> Cell {
    let criteria = MillingCriteria::default();
    let mut onsets = Vec::new();
    let mut signs = Vec::new();
    let mut successes = 0;
    for seed in SEEDS {
        let mut cfg = SimConfig {
            seed,
            num_ticks: 9_000,
            controller: ControllerParams {
                forward_speed,
                turn_rate,
            },
            ..SimConfig::default()
        };
        if mirrored {
            cfg.sensor = cfg.sensor.mirrored();
        }
        let trace = run(&cfg, 1).expect("run");
        let history = trace.metrics_history();
        let last = history.last().expect("non-empty history").angular_momentum;
        signs.push(if last > 0.0 { 1 } else if last < 0.0 { -1 } else { 0 });
        if detect_milling(&history, &criteria).unwrap() {
            successes += 1;
            if let Some(i) = milling_onset(&history, &criteria) {
                onsets.push(i);
            }
        }
    }
    onsets.sort_unstable();
    Cell {
        forward_speed,
        turn_rate,
        successes,
        median_onset: onsets.get(onsets.len() / 2).copied(),
        signs,
    }
}

fn main() {
    let mirrored = std::env::args().any(|a| a == "--mirrored");
    let speeds: Vec<f64> = (0..=6).map(|i| 0.1 + 0.05 * i as f64).collect();
    let rates: Vec<f64> = (0..=8).map(|i| 0.5 + 0.25 * i as f64).collect();
    let grid: Vec<(f64, f64)> = speeds
        .iter()
        .flat_map(|&v| rates.iter().map(move |&w| (v, w)))
        .collect();
    let mut cells: Vec<Cell> = grid
        .par_iter()
        .map(|&(v, w)| evaluate(v, w, mirrored))
        .collect();
    println!("forward_speed,turn_rate,successes,median_onset,final_L_signs");
    for c in &cells {
        println!(
            "{:.2},{:.2},{},{},{:?}",
            c.forward_speed,
            c.turn_rate,
            c.successes,
            c.median_onset.map_or("-".to_string(), |o| o.to_string()),
            c.signs
        );
    }
    cells.sort_by(|a, b| {
        b.successes
            .cmp(&a.successes)
            .then(a.median_onset.unwrap_or(usize::MAX).cmp(&b.median_onset.unwrap_or(usize::MAX)))
    });
    let best = &cells[0];
    println!(
        "best: forward_speed = {:.2}, turn_rate = {:.2} ({} / 10 seeds, median onset tick {:?})",
        best.forward_speed, best.turn_rate, best.successes, best.median_onset
    );
}
