//! Re-derives a trace from its own rows and reports the first disagreement.
//!
//! The initial record is checked against `init_world`, every metrics row
//! against the agent rows it summarizes, every sense/command against the
//! engine's Phase A, and every record against the engine's tick from the
//! record before it.

use std::fmt;

use swarmsim_core::engine::{apply_decisions, decide_all, Executor};
use swarmsim_core::metrics::swarm_metrics;
use swarmsim_core::{init_world, SimError, SwarmMetrics, Trace, WorldState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Same build: every value must match bit for bit.
    Exact,
    /// Different build: `|a - b| <= rel * max(1, |a|, |b|)`.
    Relative(f64),
}

impl Tolerance {
    pub const CROSS_BUILD: Tolerance = Tolerance::Relative(1e-9);

    fn accepts(self, expected: f64, actual: f64) -> bool {
        match self {
            Tolerance::Exact => expected.to_bits() == actual.to_bits(),
            Tolerance::Relative(rel) => {
                let scale = 1f64.max(expected.abs()).max(actual.abs());
                (expected - actual).abs() <= rel * scale
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub tick: u64,
    pub field: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "divergence at tick {}: {}: expected {}, found {}",
            self.tick, self.field, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReplayReport {
    Success { records: usize },
    Divergence(Divergence),
}

impl ReplayReport {
    pub fn is_success(&self) -> bool {
        matches!(self, ReplayReport::Success { .. })
    }
}

struct Checker {
    tol: Tolerance,
}

impl Checker {
    fn num(&self, tick: u64, field: impl Fn() -> String, expected: f64, actual: f64) -> Result<(), Divergence> {
        if self.tol.accepts(expected, actual) {
            Ok(())
        } else {
            Err(Divergence {
                tick,
                field: field(),
                expected: format!("{expected:.16e}"),
                actual: format!("{actual:.16e}"),
            })
        }
    }

    fn metrics(&self, tick: u64, expected: &SwarmMetrics, actual: &SwarmMetrics) -> Result<(), Divergence> {
        let pairs = [
            ("com_x", expected.center_of_mass.x, actual.center_of_mass.x),
            ("com_y", expected.center_of_mass.y, actual.center_of_mass.y),
            ("angular_momentum", expected.angular_momentum, actual.angular_momentum),
            ("scatter", expected.scatter, actual.scatter),
            ("radial_variance", expected.radial_variance, actual.radial_variance),
            ("mean_radius", expected.mean_radius, actual.mean_radius),
        ];
        for (name, e, a) in pairs {
            self.num(tick, || format!("metrics {name}"), e, a)?;
        }
        Ok(())
    }

    fn poses(&self, expected: &WorldState, trace: &Trace, index: usize) -> Result<(), Divergence> {
        let record = &trace.records[index];
        let tick = record.tick;
        let agents = &expected.swarms[0].agents;
        if agents.len() != record.agents.len() {
            return Err(Divergence {
                tick,
                field: "agent count".into(),
                expected: agents.len().to_string(),
                actual: record.agents.len().to_string(),
            });
        }
        for (e, a) in agents.iter().zip(&record.agents) {
            if e.id != a.id {
                return Err(Divergence {
                    tick,
                    field: "agent id".into(),
                    expected: e.id.to_string(),
                    actual: a.id.to_string(),
                });
            }
            let id = e.id;
            self.num(tick, || format!("agent {id} x"), e.pose.position.x, a.pose.position.x)?;
            self.num(tick, || format!("agent {id} y"), e.pose.position.y, a.pose.position.y)?;
            self.num(tick, || format!("agent {id} heading"), e.pose.heading, a.pose.heading)?;
        }
        Ok(())
    }
}

fn engine_error(tick: u64, err: SimError) -> Divergence {
    Divergence {
        tick,
        field: "engine".into(),
        expected: "a valid state".into(),
        actual: err.to_string(),
    }
}

/// Replays `trace` with `parallelism` Phase-A workers.
pub fn replay_verify(trace: &Trace, parallelism: usize, tol: Tolerance) -> Result<ReplayReport, SimError> {
    let exec = Executor::with_workers(parallelism)?;
    Ok(match verify(trace, &exec, tol) {
        Ok(()) => ReplayReport::Success {
            records: trace.records.len(),
        },
        Err(d) => ReplayReport::Divergence(d),
    })
}

fn verify(trace: &Trace, exec: &Executor, tol: Tolerance) -> Result<(), Divergence> {
    let cfg = &trace.config;
    let check = Checker { tol };
    let expected_records = cfg.num_ticks as usize + 1;
    if trace.records.len() != expected_records {
        return Err(Divergence {
            tick: trace.records.last().map_or(0, |r| r.tick),
            field: "record count".into(),
            expected: expected_records.to_string(),
            actual: trace.records.len().to_string(),
        });
    }
    let initial = init_world(cfg).map_err(|e| engine_error(0, e))?;
    check.poses(&initial, trace, 0)?;

    for index in 0..trace.records.len() {
        let record = &trace.records[index];
        let tick = record.tick;
        if tick != index as u64 {
            return Err(Divergence {
                tick,
                field: "tick".into(),
                expected: index.to_string(),
                actual: tick.to_string(),
            });
        }
        let world = trace.world_at(index).map_err(|e| engine_error(tick, e))?;
        let agents = &world.swarms[0].agents;
        let metrics = swarm_metrics(agents, cfg.dt()).map_err(|e| engine_error(tick, e))?;
        check.metrics(tick, &metrics, &record.metrics)?;

        let decisions = decide_all(&world, cfg, exec).map_err(|e| engine_error(tick, e))?;
        for (d, row) in decisions.iter().zip(&record.agents) {
            let id = d.id;
            if d.reading.value != row.sense {
                return Err(Divergence {
                    tick,
                    field: format!("agent {id} sense"),
                    expected: u8::from(d.reading.value).to_string(),
                    actual: u8::from(row.sense).to_string(),
                });
            }
            check.num(tick, || format!("agent {id} v"), d.command.v, row.v)?;
            check.num(tick, || format!("agent {id} omega"), d.command.omega, row.omega)?;
        }
        if index + 1 < trace.records.len() {
            let next = apply_decisions(&world, &decisions, cfg).map_err(|e| engine_error(tick + 1, e))?;
            check.poses(&next, trace, index + 1)?;
        }
    }
    Ok(())
}
