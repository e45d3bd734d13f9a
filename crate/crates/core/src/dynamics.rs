//! Unicycle kinematics. The default integrator follows the exact circular
//! arc traced by a constant twist over one tick, so the turning radius of an
//! agent does not depend on the tick rate.

use crate::config::{DynamicsParams, Integration};
use crate::control::ControlOutput;
use crate::error::{domain, Result};
use crate::geom::{wrap_angle, Pose, Vec2};

pub fn unicycle_step(pose: &Pose, cmd: &ControlOutput, dt: f64, params: &DynamicsParams) -> Result<Pose> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(domain(format!("unicycle_step: dt must be finite and > 0, got {dt}")));
    }
    if !cmd.v.is_finite() || !cmd.omega.is_finite() {
        return Err(domain("unicycle_step: command is not finite"));
    }
    if !pose.is_finite() {
        return Err(domain("unicycle_step: pose is not finite"));
    }
    let Pose { position, heading } = *pose;
    let (sin_h, cos_h) = heading.sin_cos();
    match params.integration {
        Integration::ExactArc if cmd.omega.abs() >= params.omega_epsilon => {
            let radius = cmd.v / cmd.omega;
            let turned = cmd.omega * dt;
            let (sin_n, cos_n) = (heading + turned).sin_cos();
            Ok(Pose {
                position: Vec2::new(
                    position.x + radius * (sin_n - sin_h),
                    position.y - radius * (cos_n - cos_h),
                ),
                heading: wrap_angle(heading + turned)?,
            })
        }
        Integration::ExactArc => Ok(Pose {
            position: Vec2::new(
                position.x + cmd.v * dt * cos_h,
                position.y + cmd.v * dt * sin_h,
            ),
            heading,
        }),
        Integration::Euler => Ok(Pose {
            position: Vec2::new(
                position.x + cmd.v * dt * cos_h,
                position.y + cmd.v * dt * sin_h,
            ),
            heading: wrap_angle(heading + cmd.omega * dt)?,
        }),
    }
}

/// Dynamics object owned by each agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnicycleDynamics {
    pub params: DynamicsParams,
}

impl UnicycleDynamics {
    pub fn new(params: DynamicsParams) -> Self {
        Self { params }
    }

    pub fn step(&self, pose: &Pose, cmd: &ControlOutput, dt: f64) -> Result<Pose> {
        unicycle_step(pose, cmd, dt, &self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn exact() -> DynamicsParams {
        DynamicsParams::default()
    }

    fn cmd(v: f64, omega: f64) -> ControlOutput {
        ControlOutput { v, omega }
    }

    #[test]
    fn straight_line() {
        let p = unicycle_step(&Pose::default(), &cmd(0.3, 0.0), 1.0 / 30.0, &exact()).unwrap();
        assert!((p.position.x - 0.01).abs() < 1e-15);
        assert_eq!(p.position.y, 0.0);
        assert_eq!(p.heading, 0.0);
    }

    #[test]
    fn pure_rotation() {
        let p = unicycle_step(&Pose::default(), &cmd(0.0, 1.0), 0.5, &exact()).unwrap();
        assert_eq!(p.position, Vec2::ZERO);
        assert_eq!(p.heading, 0.5);
    }

    #[test]
    fn quarter_arc_closed_form() {
        let p = unicycle_step(&Pose::default(), &cmd(1.0, FRAC_PI_2), 1.0, &exact()).unwrap();
        assert!((p.position.x - 2.0 / PI).abs() < 1e-12);
        assert!((p.position.y - 2.0 / PI).abs() < 1e-12);
        assert!((p.heading - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn tiny_omega_uses_straight_limit() {
        let p = unicycle_step(&Pose::default(), &cmd(1.0, 1e-12), 1.0, &exact()).unwrap();
        assert_eq!(p.position, Vec2::new(1.0, 0.0));
        assert_eq!(p.heading, 0.0);
    }

    #[test]
    fn euler_mode() {
        let params = DynamicsParams {
            integration: Integration::Euler,
            ..exact()
        };
        let p = unicycle_step(&Pose::default(), &cmd(1.0, 1.0), 0.1, &params).unwrap();
        assert_eq!(p.position, Vec2::new(0.1, 0.0));
        assert_eq!(p.heading, 0.1);
    }

    #[test]
    fn bad_dt_is_domain_error() {
        assert!(unicycle_step(&Pose::default(), &cmd(1.0, 1.0), 0.0, &exact()).is_err());
        assert!(unicycle_step(&Pose::default(), &cmd(1.0, 1.0), -1.0, &exact()).is_err());
        assert!(unicycle_step(&Pose::default(), &cmd(f64::NAN, 1.0), 1.0, &exact()).is_err());
    }

    proptest! {
        #[test]
        fn chord_never_exceeds_arc_length(
            v in 0.0f64..2.0, omega in -5.0f64..5.0, dt in 1e-3f64..2.0, heading in -PI..PI,
        ) {
            let start = Pose::new(Vec2::new(0.3, -0.7), heading).unwrap();
            let end = unicycle_step(&start, &cmd(v, omega), dt, &exact()).unwrap();
            let chord = end.position.distance(start.position);
            prop_assert!(chord <= v * dt + 1e-9);
            // chord of an arc of length s and turn angle phi is s * sinc(phi / 2)
            let phi = omega * dt;
            let expected = if phi.abs() < 1e-9 { v * dt } else { v * dt * (phi / 2.0).sin().abs() / (phi / 2.0).abs() };
            prop_assert!((chord - expected).abs() < 1e-9);
        }
    }
}
