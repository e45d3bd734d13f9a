//! Swarm observables and the milling detector.
//!
//! All sums run in slice order; callers pass agents sorted by ascending id,
//! which keeps results bit-identical however the tick was scheduled.

use crate::error::{domain, Result};
use crate::geom::Vec2;
use crate::state::{AgentState, SwarmMetrics};

const DEGENERATE_NORM: f64 = 1e-12;

pub const DEFAULT_MILLING_WINDOW: usize = 900;
pub const DEFAULT_MILLING_L_MIN: f64 = 0.8;
pub const DEFAULT_MILLING_RV_RATIO_MAX: f64 = 0.2;

fn non_empty(agents: &[AgentState]) -> Result<()> {
    if agents.is_empty() {
        Err(domain("metrics need at least one agent"))
    } else {
        Ok(())
    }
}

pub fn center_of_mass(agents: &[AgentState]) -> Result<Vec2> {
    non_empty(agents)?;
    let mut sum = Vec2::ZERO;
    for a in agents {
        sum = sum + a.position();
    }
    let n = agents.len() as f64;
    Ok(Vec2::new(sum.x / n, sum.y / n))
}

fn angular_momentum_about(agents: &[AgentState], com: Vec2, dt: f64) -> f64 {
    let mut total = 0.0;
    for a in agents {
        let r = a.position() - com;
        let v = Vec2::new(a.delta_position.x / dt, a.delta_position.y / dt);
        let (rn, vn) = (r.norm(), v.norm());
        if rn < DEGENERATE_NORM || vn < DEGENERATE_NORM {
            continue;
        }
        let r_hat = Vec2::new(r.x / rn, r.y / rn);
        let v_hat = Vec2::new(v.x / vn, v.y / vn);
        total += r_hat.cross(v_hat);
    }
    total / agents.len() as f64
}

/// Normalized angular momentum about the center of mass, in `[-1, 1]`.
/// Positive means counter-clockwise circulation.
pub fn angular_momentum(agents: &[AgentState], dt: f64) -> Result<f64> {
    non_empty(agents)?;
    if !(dt > 0.0) {
        return Err(domain(format!("angular_momentum: dt must be > 0, got {dt}")));
    }
    let com = center_of_mass(agents)?;
    Ok(angular_momentum_about(agents, com, dt))
}

fn scatter_about(agents: &[AgentState], com: Vec2) -> f64 {
    let mut total = 0.0;
    for a in agents {
        total += (a.position() - com).norm_sq();
    }
    total / agents.len() as f64
}

/// Mean squared distance from the center of mass.
pub fn scatter(agents: &[AgentState]) -> Result<f64> {
    let com = center_of_mass(agents)?;
    Ok(scatter_about(agents, com))
}

/// `(mean radius, radial variance)` about the center of mass.
fn radial_moments(agents: &[AgentState], com: Vec2) -> (f64, f64) {
    let n = agents.len() as f64;
    let mut sum = 0.0;
    for a in agents {
        sum += (a.position() - com).norm();
    }
    let mean = sum / n;
    let mut var = 0.0;
    for a in agents {
        let dev = (a.position() - com).norm() - mean;
        var += dev * dev;
    }
    (mean, var / n)
}

/// Variance of the agents' distances from the center of mass.
pub fn radial_variance(agents: &[AgentState]) -> Result<f64> {
    let com = center_of_mass(agents)?;
    Ok(radial_moments(agents, com).1)
}

pub fn mean_radius(agents: &[AgentState]) -> Result<f64> {
    let com = center_of_mass(agents)?;
    Ok(radial_moments(agents, com).0)
}

/// All swarm metrics at once, sharing the center-of-mass computation.
pub fn swarm_metrics(agents: &[AgentState], dt: f64) -> Result<SwarmMetrics> {
    non_empty(agents)?;
    if !(dt > 0.0) {
        return Err(domain(format!("swarm_metrics: dt must be > 0, got {dt}")));
    }
    let com = center_of_mass(agents)?;
    let (mean_radius, radial_variance) = radial_moments(agents, com);
    Ok(SwarmMetrics {
        center_of_mass: com,
        angular_momentum: angular_momentum_about(agents, com, dt),
        scatter: scatter_about(agents, com),
        radial_variance,
        mean_radius,
    })
}

/// Thresholds for [`detect_milling`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MillingCriteria {
    pub window: usize,
    pub l_min: f64,
    pub rv_ratio_max: f64,
}

impl Default for MillingCriteria {
    fn default() -> Self {
        Self {
            window: DEFAULT_MILLING_WINDOW,
            l_min: DEFAULT_MILLING_L_MIN,
            rv_ratio_max: DEFAULT_MILLING_RV_RATIO_MAX,
        }
    }
}

impl MillingCriteria {
    fn entry_ok(&self, m: &SwarmMetrics) -> bool {
        if m.angular_momentum.abs() < self.l_min {
            return false;
        }
        // ratio of radial spread to ring radius; a zero radius never passes
        let ratio = m.radial_variance.sqrt() / m.mean_radius;
        ratio.is_finite() && ratio <= self.rv_ratio_max
    }
}

/// True iff every one of the trailing `window` entries shows
/// `|L| >= l_min` and `sqrt(radial_variance) / mean_radius <= rv_ratio_max`.
/// Histories shorter than the window return false.
pub fn detect_milling(history: &[SwarmMetrics], criteria: &MillingCriteria) -> Result<bool> {
    if criteria.window < 1 {
        return Err(domain("detect_milling: window must be >= 1"));
    }
    if history.len() < criteria.window {
        return Ok(false);
    }
    let tail = &history[history.len() - criteria.window..];
    Ok(tail.iter().all(|m| criteria.entry_ok(m)))
}

/// Index of the first history entry at which the trailing window satisfies
/// the milling criteria, if any.
pub fn milling_onset(history: &[SwarmMetrics], criteria: &MillingCriteria) -> Option<usize> {
    let mut run = 0usize;
    for (i, m) in history.iter().enumerate() {
        if criteria.entry_ok(m) {
            run += 1;
            if run >= criteria.window {
                return Some(i);
            }
        } else {
            run = 0;
        }
    }
    None
}
