//! Brute-force reference computations for the swarmsim test suites.
//!
//! Nothing here calls into the code paths it is used to check: geometry is
//! redone with raw `f64` arithmetic, integration by fine sub-stepping.

use swarmsim_core::{AgentState, Pose, SplitMix64, SwarmMetrics, Vec2};

/// Result of casting a fan of rays across a view cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayVerdict {
    pub hit: bool,
    /// `|closest ray distance - radius|` over all targets; small values mean
    /// the scene sits on a tangency and sampling may be unreliable.
    pub margin: f64,
}

fn point_to_segment(px: f64, py: f64, ex: f64, ey: f64) -> f64 {
    // segment from the origin to (ex, ey)
    let len_sq = ex * ex + ey * ey;
    let t = ((px * ex + py * ey) / len_sq).clamp(0.0, 1.0);
    let (dx, dy) = (px - t * ex, py - t * ey);
    (dx * dx + dy * dy).sqrt()
}

/// Casts `rays` rays evenly over `[right, left]` (inclusive, radians
/// positive-left of the heading), each of length `view_distance`, and
/// reports whether any ray passes within `radius` of a target center.
pub fn ray_sample_sense(
    observer: (f64, f64, f64),
    targets: &[(f64, f64)],
    right: f64,
    left: f64,
    view_distance: f64,
    radius: f64,
    rays: usize,
) -> RayVerdict {
    let (ox, oy, heading) = observer;
    let mut closest = vec![f64::INFINITY; targets.len()];
    let locals: Vec<(f64, f64)> = targets
        .iter()
        .map(|&(tx, ty)| {
            let (dx, dy) = (tx - ox, ty - oy);
            let (s, c) = (-heading).sin_cos();
            (c * dx - s * dy, s * dx + c * dy)
        })
        .collect();
    for k in 0..rays {
        let angle = right + (left - right) * k as f64 / (rays - 1) as f64;
        let (ex, ey) = (view_distance * angle.cos(), view_distance * angle.sin());
        for (best, &(px, py)) in closest.iter_mut().zip(&locals) {
            let d = point_to_segment(px, py, ex, ey);
            if d < *best {
                *best = d;
            }
        }
    }
    let hit = closest.iter().any(|&d| d <= radius);
    let margin = closest
        .iter()
        .map(|&d| (d - radius).abs())
        .fold(f64::INFINITY, f64::min);
    RayVerdict { hit, margin }
}

/// Integrates a constant twist with `substeps` forward-Euler steps.
pub fn euler_substeps(pose: (f64, f64, f64), v: f64, omega: f64, dt: f64, substeps: usize) -> (f64, f64, f64) {
    let (mut x, mut y, mut th) = pose;
    let h = dt / substeps as f64;
    for _ in 0..substeps {
        x += v * h * th.cos();
        y += v * h * th.sin();
        th += omega * h;
    }
    (x, y, th)
}

/// Direct evaluation of the four swarm metrics plus mean radius from raw
/// positions and per-tick displacements.
pub fn reference_metrics(positions: &[(f64, f64)], deltas: &[(f64, f64)]) -> SwarmMetrics {
    let n = positions.len() as f64;
    let cx = positions.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = positions.iter().map(|p| p.1).sum::<f64>() / n;
    let radii: Vec<f64> = positions
        .iter()
        .map(|p| ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt())
        .collect();
    let mean = radii.iter().sum::<f64>() / n;
    let var = radii.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n;
    let scatter = radii.iter().map(|r| r * r).sum::<f64>() / n;
    let mut l = 0.0;
    for (p, d) in positions.iter().zip(deltas) {
        let (rx, ry) = (p.0 - cx, p.1 - cy);
        let rn = (rx * rx + ry * ry).sqrt();
        let vn = (d.0 * d.0 + d.1 * d.1).sqrt();
        if rn < 1e-12 || vn < 1e-12 {
            continue;
        }
        l += (rx * d.1 - ry * d.0) / (rn * vn);
    }
    SwarmMetrics {
        center_of_mass: Vec2::new(cx, cy),
        angular_momentum: l / n,
        scatter,
        radial_variance: var,
        mean_radius: mean,
    }
}

/// Metrics history of `agents` independent random walkers: each tick every
/// walker takes a step of length `step` in a fresh uniformly random
/// direction.
pub fn random_walk_history(seed: u64, agents: usize, ticks: usize, step: f64) -> Vec<SwarmMetrics> {
    let mut rng = SplitMix64::new(seed);
    let mut pos: Vec<(f64, f64)> = (0..agents)
        .map(|_| (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))
        .collect();
    let mut deltas = vec![(0.0, 0.0); agents];
    let mut history = Vec::with_capacity(ticks + 1);
    history.push(reference_metrics(&pos, &deltas));
    for _ in 0..ticks {
        for (p, d) in pos.iter_mut().zip(deltas.iter_mut()) {
            let a = rng.uniform(-std::f64::consts::PI, std::f64::consts::PI);
            *d = (step * a.cos(), step * a.sin());
            p.0 += d.0;
            p.1 += d.1;
        }
        history.push(reference_metrics(&pos, &deltas));
    }
    history
}

/// Agent states from raw `(x, y, heading)` and `(dx, dy)` tuples, ids in
/// order.
pub fn agents_from(poses: &[(f64, f64, f64)], deltas: &[(f64, f64)]) -> Vec<AgentState> {
    poses
        .iter()
        .zip(deltas)
        .enumerate()
        .map(|(i, (&(x, y, h), &(dx, dy)))| AgentState {
            id: i as u32,
            pose: Pose::new(Vec2::new(x, y), h).expect("finite pose"),
            delta_position: Vec2::new(dx, dy),
            delta_heading: 0.0,
        })
        .collect()
}
