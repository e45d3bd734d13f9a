//! Shareable state snapshots. Each simulation object (agent, swarm, world)
//! has a matching state holding only what other objects need to read.

use crate::geom::{Polygon, Pose, Vec2};

pub type AgentId = u32;

/// Snapshot of one agent: pose plus the change from the previous tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentState {
    pub id: AgentId,
    pub pose: Pose,
    /// Meters moved during the last tick.
    pub delta_position: Vec2,
    /// Radians turned during the last tick, wrapped.
    pub delta_heading: f64,
}

impl AgentState {
    /// State at rest (zero deltas), as at tick 0.
    pub fn at_rest(id: AgentId, pose: Pose) -> Self {
        Self {
            id,
            pose,
            delta_position: Vec2::ZERO,
            delta_heading: 0.0,
        }
    }

    pub fn position(&self) -> Vec2 {
        self.pose.position
    }
}

/// Swarm-level observables. `mean_radius` is stored alongside the radial
/// variance so that milling detection can normalize without the raw states.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SwarmMetrics {
    pub center_of_mass: Vec2,
    pub angular_momentum: f64,
    pub scatter: f64,
    pub radial_variance: f64,
    pub mean_radius: f64,
}

/// Member agent states (ascending id) and their metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub agents: Vec<AgentState>,
    pub metrics: SwarmMetrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub tick: u64,
    pub sim_time: f64,
    pub swarms: Vec<SwarmState>,
    pub arena: Polygon,
}

impl WorldState {
    /// Iterates every agent of every swarm.
    pub fn agents(&self) -> impl Iterator<Item = &AgentState> {
        self.swarms.iter().flat_map(|s| s.agents.iter())
    }
}
