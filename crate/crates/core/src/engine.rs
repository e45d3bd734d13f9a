//! The world tick loop.
//!
//! Each tick runs in two phases. Phase A evaluates sensor, controller and
//! dynamics for every agent against the immutable pre-tick snapshot; it is
//! pure per agent and may run on any number of worker threads. Phase B merges
//! the results in ascending id order into a fresh snapshot and computes the
//! swarm metrics. The trace of a run is therefore bit-identical for every
//! worker count.

use rayon::prelude::*;

use crate::config::SimConfig;
use crate::control::{BinaryController, ControlOutput};
use crate::dynamics::UnicycleDynamics;
use crate::error::{domain, Result, SimError};
use crate::geom::{wrap_angle, Pose, Vec2};
use crate::metrics::swarm_metrics;
use crate::rng::SplitMix64;
use crate::sensing::{BinarySensor, SensorReading};
use crate::state::{AgentId, AgentState, SwarmMetrics, SwarmState, WorldState};

/// Consecutive rejected spawn candidates tolerated before giving up.
pub const MAX_SPAWN_REJECTIONS: u32 = 10_000;

/// What one agent decided during Phase A of a tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub id: AgentId,
    pub reading: SensorReading,
    pub command: ControlOutput,
    pub next_pose: Pose,
}

/// Agent object: the sensor, controller and dynamics that act on an
/// [`AgentState`]. Every agent of the swarm shares one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlockbotAgent {
    pub sensor: BinarySensor,
    pub controller: BinaryController,
    pub dynamics: UnicycleDynamics,
}

impl FlockbotAgent {
    pub fn from_config(config: &SimConfig) -> Self {
        Self {
            sensor: BinarySensor::new(config.sensor, config.agent_radius),
            controller: BinaryController::new(config.controller),
            dynamics: UnicycleDynamics::new(config.dynamics),
        }
    }

    pub fn decide(&self, state: &AgentState, world: &WorldState, dt: f64) -> Result<Decision> {
        let reading = self.sensor.sense(state, world)?;
        let command = self.controller.command(reading);
        let next_pose = self.dynamics.step(&state.pose, &command, dt)?;
        Ok(Decision {
            id: state.id,
            reading,
            command,
            next_pose,
        })
    }
}

/// Places `num_agents` non-overlapping agents by rejection sampling in the
/// spawn disc around the arena centroid.
///
/// Every attempt draws, in order, `x` and `y` uniformly over the disc's
/// bounding square and a heading uniformly in `[-π, π)`. An attempt is
/// rejected if the point falls outside the disc or the agent's body would
/// overlap an already placed agent.
pub fn init_world(config: &SimConfig) -> Result<WorldState> {
    config.validate()?;
    let center = config.arena.centroid();
    let r = config.spawn_radius;
    let min_gap_sq = (2.0 * config.agent_radius).powi(2);
    let mut rng = SplitMix64::new(config.seed);
    let mut placed: Vec<AgentState> = Vec::with_capacity(config.num_agents);
    let mut rejections = 0u32;
    while placed.len() < config.num_agents {
        let x = rng.uniform(-r, r);
        let y = rng.uniform(-r, r);
        let heading = rng.heading();
        let offset = Vec2::new(x, y);
        let candidate = center + offset;
        let ok = offset.norm_sq() <= r * r
            && placed
                .iter()
                .all(|a| (a.position() - candidate).norm_sq() >= min_gap_sq);
        if ok {
            let id = placed.len() as AgentId;
            placed.push(AgentState::at_rest(id, Pose::new(candidate, heading)?));
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= MAX_SPAWN_REJECTIONS {
                return Err(SimError::InfeasibleSpawn {
                    placed: placed.len(),
                    requested: config.num_agents,
                    attempts: rejections,
                });
            }
        }
    }
    let metrics = swarm_metrics(&placed, config.dt())?;
    Ok(WorldState {
        tick: 0,
        sim_time: 0.0,
        swarms: vec![SwarmState {
            agents: placed,
            metrics,
        }],
        arena: config.arena.clone(),
    })
}

/// Runs Phase A, either inline or on a thread pool.
#[derive(Debug)]
pub struct Executor {
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn serial() -> Self {
        Self { pool: None }
    }

    /// A pool of `workers` threads; `1` evaluates inline.
    pub fn with_workers(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(domain("parallelism must be >= 1"));
        }
        if workers == 1 {
            return Ok(Self::serial());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SimError::ThreadPool(e.to_string()))?;
        Ok(Self { pool: Some(pool) })
    }

    fn decide_all(&self, agent: &FlockbotAgent, world: &WorldState, dt: f64) -> Result<Vec<Decision>> {
        let states: Vec<&AgentState> = world.agents().collect();
        match &self.pool {
            None => states.iter().map(|s| agent.decide(s, world, dt)).collect(),
            Some(pool) => pool.install(|| {
                states
                    .par_iter()
                    .map(|s| agent.decide(s, world, dt))
                    .collect()
            }),
        }
    }
}

/// Phase A only: every agent's decision against `world`.
pub fn decide_all(world: &WorldState, config: &SimConfig, exec: &Executor) -> Result<Vec<Decision>> {
    exec.decide_all(&FlockbotAgent::from_config(config), world, config.dt())
}

/// Phase B: applies decisions (one per agent, in the world's agent order)
/// and builds the next snapshot.
pub fn apply_decisions(world: &WorldState, decisions: &[Decision], config: &SimConfig) -> Result<WorldState> {
    let dt = config.dt();
    let mut remaining = decisions;
    let mut swarms = Vec::with_capacity(world.swarms.len());
    for swarm in &world.swarms {
        if remaining.len() < swarm.agents.len() {
            return Err(domain("apply_decisions: fewer decisions than agents"));
        }
        let (mine, rest) = remaining.split_at(swarm.agents.len());
        remaining = rest;
        let mut agents = Vec::with_capacity(mine.len());
        for (old, d) in swarm.agents.iter().zip(mine) {
            if old.id != d.id {
                return Err(domain(format!(
                    "apply_decisions: decision for agent {} applied to agent {}",
                    d.id, old.id
                )));
            }
            agents.push(AgentState {
                id: old.id,
                pose: d.next_pose,
                delta_position: d.next_pose.position - old.pose.position,
                delta_heading: wrap_angle(d.next_pose.heading - old.pose.heading)?,
            });
        }
        let metrics = swarm_metrics(&agents, dt)?;
        swarms.push(SwarmState { agents, metrics });
    }
    let tick = world.tick + 1;
    Ok(WorldState {
        tick,
        sim_time: tick as f64 * dt,
        swarms,
        arena: world.arena.clone(),
    })
}

/// One synchronous tick, evaluated serially.
pub fn tick(world: &WorldState, config: &SimConfig) -> Result<WorldState> {
    tick_with(world, config, &Executor::serial()).map(|(_, next)| next)
}

/// One synchronous tick on `exec`; also returns the Phase-A decisions made
/// from `world`.
pub fn tick_with(world: &WorldState, config: &SimConfig, exec: &Executor) -> Result<(Vec<Decision>, WorldState)> {
    let decisions = decide_all(world, config, exec)?;
    let next = apply_decisions(world, &decisions, config)?;
    Ok((decisions, next))
}

/// One serialized agent row: pose at the record's tick plus the sensor
/// reading and command computed from that pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentRow {
    pub id: AgentId,
    pub pose: Pose,
    pub sense: bool,
    pub v: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub tick: u64,
    pub agents: Vec<AgentRow>,
    pub metrics: SwarmMetrics,
}

impl TraceRecord {
    pub fn from_world(world: &WorldState, decisions: &[Decision]) -> Result<Self> {
        let swarm = world
            .swarms
            .first()
            .ok_or_else(|| domain("world has no swarm"))?;
        if decisions.len() != swarm.agents.len() {
            return Err(domain("trace record: decision count mismatch"));
        }
        let agents = swarm
            .agents
            .iter()
            .zip(decisions)
            .map(|(a, d)| AgentRow {
                id: a.id,
                pose: a.pose,
                sense: d.reading.value,
                v: d.command.v,
                omega: d.command.omega,
            })
            .collect();
        Ok(Self {
            tick: world.tick,
            agents,
            metrics: swarm.metrics,
        })
    }
}

/// Every state of a run, tick 0 included.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub config: SimConfig,
    pub records: Vec<TraceRecord>,
}

impl Trace {
    /// Rebuilds the world snapshot at record `index`. Deltas come from the
    /// preceding record; metrics are taken from the record as stored.
    pub fn world_at(&self, index: usize) -> Result<WorldState> {
        let record = self
            .records
            .get(index)
            .ok_or_else(|| domain(format!("trace has no record {index}")))?;
        let agents = match index.checked_sub(1).map(|i| &self.records[i]) {
            None => record
                .agents
                .iter()
                .map(|row| AgentState::at_rest(row.id, row.pose))
                .collect::<Vec<_>>(),
            Some(prev) => {
                if prev.agents.len() != record.agents.len() {
                    return Err(domain("trace: agent count changed between records"));
                }
                record
                    .agents
                    .iter()
                    .zip(&prev.agents)
                    .map(|(row, before)| {
                        Ok(AgentState {
                            id: row.id,
                            pose: row.pose,
                            delta_position: row.pose.position - before.pose.position,
                            delta_heading: wrap_angle(row.pose.heading - before.pose.heading)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(WorldState {
            tick: record.tick,
            sim_time: record.tick as f64 * self.config.dt(),
            swarms: vec![SwarmState {
                agents,
                metrics: record.metrics,
            }],
            arena: self.config.arena.clone(),
        })
    }

    pub fn metrics_history(&self) -> Vec<SwarmMetrics> {
        self.records.iter().map(|r| r.metrics).collect()
    }
}

/// Receives every snapshot of a run together with the decisions taken from
/// it. Visualizers and loggers hang off this hook.
pub trait TickObserver {
    fn observe(&mut self, world: &WorldState, decisions: &[Decision]) -> Result<()>;
}

#[derive(Debug, Default)]
pub struct TraceRecorder {
    pub records: Vec<TraceRecord>,
}

impl TickObserver for TraceRecorder {
    fn observe(&mut self, world: &WorldState, decisions: &[Decision]) -> Result<()> {
        self.records.push(TraceRecord::from_world(world, decisions)?);
        Ok(())
    }
}

/// The world object: owns the configuration, the executor and the current
/// snapshot.
#[derive(Debug)]
pub struct World {
    config: SimConfig,
    exec: Executor,
    state: WorldState,
}

impl World {
    pub fn new(config: SimConfig, parallelism: usize) -> Result<Self> {
        let exec = Executor::with_workers(parallelism)?;
        let state = init_world(&config)?;
        Ok(Self { config, exec, state })
    }

    pub fn state(&self) -> &WorldState {
        &self.state
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Advances one tick, returning the decisions taken from the old state.
    pub fn step(&mut self) -> Result<Vec<Decision>> {
        let (decisions, next) = tick_with(&self.state, &self.config, &self.exec)?;
        self.state = next;
        Ok(decisions)
    }

    /// Runs `num_ticks` ticks, showing every snapshot (the final one
    /// included) to `observer`.
    pub fn run_observed(&mut self, observer: &mut dyn TickObserver) -> Result<()> {
        for _ in 0..self.config.num_ticks {
            let (decisions, next) = tick_with(&self.state, &self.config, &self.exec)?;
            observer.observe(&self.state, &decisions)?;
            self.state = next;
        }
        let decisions = decide_all(&self.state, &self.config, &self.exec)?;
        observer.observe(&self.state, &decisions)
    }
}

/// Runs a full simulation and records every state.
pub fn run(config: &SimConfig, parallelism: usize) -> Result<Trace> {
    let mut world = World::new(config.clone(), parallelism)?;
    let mut recorder = TraceRecorder::default();
    world.run_observed(&mut recorder)?;
    Ok(Trace {
        config: config.clone(),
        records: recorder.records,
    })
}
