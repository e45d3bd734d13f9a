//! Simulation configuration and its invariants.

use std::f64::consts::PI;

use crate::error::{Result, SimError};
use crate::geom::Polygon;

pub const DEFAULT_TICK_RATE: f64 = 30.0;
pub const DEFAULT_NUM_AGENTS: usize = 9;
pub const DEFAULT_VIEW_DISTANCE: f64 = 3.0;
pub const DEFAULT_FOV_LEFT_DEG: f64 = 11.5;
pub const DEFAULT_FOV_RIGHT_DEG: f64 = 4.0;

/// Calibrated by `examples/calibrate.rs`; see the README for the sweep.
pub const DEFAULT_FORWARD_SPEED: f64 = 0.4;
pub const DEFAULT_TURN_RATE: f64 = 2.5;

pub const DEFAULT_SPAWN_RADIUS: f64 = 1.5;
pub const DEFAULT_AGENT_RADIUS: f64 = 0.1;
pub const DEFAULT_ARENA_SIDE: f64 = 10.0;
pub const DEFAULT_OMEGA_EPSILON: f64 = 1e-9;

/// Binary cone sensor parameters. Both bounds are measured positive-left of
/// the heading, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorParams {
    pub view_distance: f64,
    pub fov_left_bound: f64,
    pub fov_right_bound: f64,
    /// Reserved. Wall sensing always reads false.
    pub detect_walls: bool,
}

impl Default for SensorParams {
    fn default() -> Self {
        Self {
            view_distance: DEFAULT_VIEW_DISTANCE,
            fov_left_bound: DEFAULT_FOV_LEFT_DEG.to_radians(),
            fov_right_bound: DEFAULT_FOV_RIGHT_DEG.to_radians(),
            detect_walls: false,
        }
    }
}

impl SensorParams {
    /// The same cone reflected about the heading axis.
    pub fn mirrored(&self) -> Self {
        Self {
            fov_left_bound: -self.fov_right_bound,
            fov_right_bound: -self.fov_left_bound,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.view_distance.is_finite() && self.view_distance > 0.0) {
            return Err(invalid("sensor.view_distance", "must be finite and > 0"));
        }
        if !(self.fov_left_bound.is_finite() && self.fov_right_bound.is_finite()) {
            return Err(invalid("sensor.fov_left_bound", "bounds must be finite"));
        }
        if self.fov_right_bound >= self.fov_left_bound {
            return Err(invalid(
                "sensor.fov_right_bound",
                "fov_right_bound must be less than fov_left_bound",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerParams {
    pub forward_speed: f64,
    pub turn_rate: f64,
}

impl Default for ControllerParams {
    fn default() -> Self {
        Self {
            forward_speed: DEFAULT_FORWARD_SPEED,
            turn_rate: DEFAULT_TURN_RATE,
        }
    }
}

impl ControllerParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.forward_speed.is_finite() && self.forward_speed > 0.0) {
            return Err(invalid("controller.forward_speed", "must be finite and > 0"));
        }
        if !(self.turn_rate.is_finite() && self.turn_rate > 0.0) {
            return Err(invalid("controller.turn_rate", "must be finite and > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integration {
    #[default]
    ExactArc,
    Euler,
}

impl Integration {
    pub fn as_str(self) -> &'static str {
        match self {
            Integration::ExactArc => "exact_arc",
            Integration::Euler => "euler",
        }
    }
}

impl std::str::FromStr for Integration {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact_arc" => Ok(Integration::ExactArc),
            "euler" => Ok(Integration::Euler),
            other => Err(format!("unknown integration mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsParams {
    pub integration: Integration,
    pub omega_epsilon: f64,
}

impl Default for DynamicsParams {
    fn default() -> Self {
        Self {
            integration: Integration::ExactArc,
            omega_epsilon: DEFAULT_OMEGA_EPSILON,
        }
    }
}

impl DynamicsParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_epsilon.is_finite() && self.omega_epsilon > 0.0) {
            return Err(invalid("dynamics.omega_epsilon", "must be finite and > 0"));
        }
        Ok(())
    }
}

/// Every tunable of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub tick_rate: f64,
    pub num_ticks: u64,
    pub num_agents: usize,
    pub seed: u64,
    pub sensor: SensorParams,
    pub controller: ControllerParams,
    pub dynamics: DynamicsParams,
    pub arena: Polygon,
    pub spawn_radius: f64,
    pub agent_radius: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            tick_rate: DEFAULT_TICK_RATE,
            num_ticks: 9_000,
            num_agents: DEFAULT_NUM_AGENTS,
            seed: 1,
            sensor: SensorParams::default(),
            controller: ControllerParams::default(),
            dynamics: DynamicsParams::default(),
            arena: Polygon::rectangle(DEFAULT_ARENA_SIDE, DEFAULT_ARENA_SIDE)
                .expect("default arena is a valid polygon"),
            spawn_radius: DEFAULT_SPAWN_RADIUS,
            agent_radius: DEFAULT_AGENT_RADIUS,
        }
    }
}

impl SimConfig {
    /// Seconds per tick.
    pub fn dt(&self) -> f64 {
        1.0 / self.tick_rate
    }

    /// Smallest spawn radius accepted for the current agent count and size.
    pub fn spawn_radius_bound(&self) -> f64 {
        self.agent_radius * self.num_agents as f64 / PI
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tick_rate.is_finite() && self.tick_rate > 0.0) {
            return Err(invalid("world.tick_rate", "must be finite and > 0"));
        }
        if self.num_agents < 1 {
            return Err(invalid("world.num_agents", "must be at least 1"));
        }
        if !(self.agent_radius.is_finite() && self.agent_radius > 0.0) {
            return Err(invalid("world.agent_radius", "must be finite and > 0"));
        }
        if !self.spawn_radius.is_finite() || self.spawn_radius <= self.spawn_radius_bound() {
            return Err(invalid(
                "world.spawn_radius",
                format!(
                    "must exceed agent_radius * num_agents / pi = {}",
                    self.spawn_radius_bound()
                ),
            ));
        }
        self.sensor.validate()?;
        self.controller.validate()?;
        self.dynamics.validate()?;
        Ok(())
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> SimError {
    SimError::InvalidConfig {
        field,
        reason: reason.into(),
    }
}
