//! Synthetic binary proximity sensor.
//!
//! The sensor reports whether any other agent's body disc intersects the
//! observer's view cone: the circular sector of radius `view_distance`
//! spanning bearings `[fov_right_bound, fov_left_bound]` (positive-left).
//! The test is exact disc–sector intersection. Occlusion is not modeled.

use std::f64::consts::TAU;

use crate::config::SensorParams;
use crate::error::{domain, Result};
use crate::geom::{point_segment_distance, Vec2};
use crate::state::{AgentState, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SensorReading {
    pub value: bool,
}

impl From<bool> for SensorReading {
    fn from(value: bool) -> Self {
        Self { value }
    }
}

/// Whether a disc of radius `radius` centered at `target` intersects the
/// view cone of an observer at the origin facing +x.
///
/// `target` is expressed in the observer's body frame.
pub fn disc_in_cone(target: Vec2, radius: f64, params: &SensorParams) -> bool {
    let d = target.norm();
    if d <= radius {
        // observer inside the disc: the sensor saturates at contact
        return true;
    }
    if d - radius > params.view_distance {
        return false;
    }
    let width = params.fov_left_bound - params.fov_right_bound;
    if width >= TAU {
        return true;
    }
    let bearing = target.y.atan2(target.x);
    let offset = (bearing - params.fov_right_bound).rem_euclid(TAU);
    if offset <= width {
        // Center lies inside the angular span; the nearest point of the
        // sector is on the ray through the center, at most d - view_distance
        // away, and d - radius <= view_distance was checked above.
        return true;
    }
    // Center outside the angular span: nearest sector point lies on one of
    // the two straight edges.
    let edge = |angle: f64| Vec2::from_angle(angle) * params.view_distance;
    let right = point_segment_distance(target, Vec2::ZERO, edge(params.fov_right_bound));
    let left = point_segment_distance(target, Vec2::ZERO, edge(params.fov_left_bound));
    right.min(left) <= radius
}

/// Reads the sensor for `observer` against every agent in `others`.
///
/// Agents sharing the observer's id are skipped, so `others` may be the full
/// swarm.
pub fn binary_sense(
    observer: &AgentState,
    others: &[AgentState],
    params: &SensorParams,
    agent_radius: f64,
) -> Result<SensorReading> {
    if !observer.pose.is_finite() {
        return Err(domain("binary_sense: observer pose is not finite"));
    }
    if !agent_radius.is_finite() || !params.view_distance.is_finite() {
        return Err(domain("binary_sense: non-finite sensor geometry"));
    }
    let origin = observer.pose.position;
    let heading = observer.pose.heading;
    let mut sensed = false;
    for other in others {
        if other.id == observer.id {
            continue;
        }
        if !other.pose.position.is_finite() {
            return Err(domain(format!(
                "binary_sense: agent {} position is not finite",
                other.id
            )));
        }
        if sensed {
            continue;
        }
        let local = (other.pose.position - origin).rotated(-heading);
        sensed = disc_in_cone(local, agent_radius, params);
    }
    Ok(SensorReading { value: sensed })
}

/// Sensor object owned by each agent. Reads the world snapshot of the
/// current tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinarySensor {
    pub params: SensorParams,
    pub agent_radius: f64,
}

impl BinarySensor {
    pub fn new(params: SensorParams, agent_radius: f64) -> Self {
        Self {
            params,
            agent_radius,
        }
    }

    pub fn sense(&self, observer: &AgentState, world: &WorldState) -> Result<SensorReading> {
        let mut reading = SensorReading::default();
        for swarm in &world.swarms {
            reading.value |= binary_sense(observer, &swarm.agents, &self.params, self.agent_radius)?.value;
        }
        if self.params.detect_walls {
            reading.value |= self.sense_walls(observer, world);
        }
        Ok(reading)
    }

    // Wall sensing is reserved; arena walls are never reported.
    fn sense_walls(&self, _observer: &AgentState, _world: &WorldState) -> bool {
        false
    }
}
