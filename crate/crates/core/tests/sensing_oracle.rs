use std::f64::consts::PI;

use proptest::prelude::*;
use swarmsim_core::{binary_sense, AgentState, Pose, SensorParams, SplitMix64, Vec2};
use swarmsim_testkit::ray_sample_sense;

const RAYS: usize = 100_000;

fn agent(id: u32, x: f64, y: f64, heading: f64) -> AgentState {
    AgentState::at_rest(id, Pose::new(Vec2::new(x, y), heading).unwrap())
}

fn analytic(observer: (f64, f64, f64), targets: &[(f64, f64)], p: &SensorParams, radius: f64) -> bool {
    let obs = agent(0, observer.0, observer.1, observer.2);
    let others: Vec<_> = targets
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| agent(i as u32 + 1, x, y, 0.0))
        .collect();
    binary_sense(&obs, &others, p, radius).unwrap().value
}

fn oracle(observer: (f64, f64, f64), targets: &[(f64, f64)], p: &SensorParams, radius: f64) -> swarmsim_testkit::RayVerdict {
    ray_sample_sense(
        observer,
        targets,
        p.fov_right_bound,
        p.fov_left_bound,
        p.view_distance,
        radius,
        RAYS,
    )
}

#[test]
fn documented_scenes_agree_with_ray_oracle() {
    let p = SensorParams::default();
    let cases: [((f64, f64), f64, bool); 4] = [
        ((1.0, 0.14), 0.1, true),
        ((1.0, 0.0), 0.05, false),
        ((-1.0, 0.0), 0.1, false),
        ((5.0, 0.5), 0.1, false),
    ];
    for (target, radius, expected) in cases {
        let o = oracle((0.0, 0.0, 0.0), &[target], &p, radius);
        assert_eq!(o.hit, expected, "oracle disagrees with frozen value for {target:?}");
        assert!(o.margin > 1e-6);
        assert_eq!(analytic((0.0, 0.0, 0.0), &[target], &p, radius), expected);
    }
}

/// Targets concentrated around the cone so that both outcomes and the range
/// and edge boundaries are well exercised.
#[test]
fn near_cone_scenes_match_ray_oracle() {
    let mut rng = SplitMix64::new(0x5EED);
    let mut hits = 0;
    let mut checked = 0;
    for _ in 0..400 {
        let p = SensorParams {
            view_distance: rng.uniform(0.5, 4.0),
            ..SensorParams::default()
        };
        let heading = rng.heading();
        let observer = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), heading);
        let radius = rng.uniform(0.02, 0.3);
        let bearing = heading + rng.uniform(p.fov_right_bound - 0.4, p.fov_left_bound + 0.4);
        let dist = rng.uniform(0.0, p.view_distance + 0.5);
        let target = (observer.0 + dist * bearing.cos(), observer.1 + dist * bearing.sin());
        let o = oracle(observer, &[target], &p, radius);
        if o.margin < 1e-6 {
            continue;
        }
        checked += 1;
        hits += o.hit as usize;
        assert_eq!(
            analytic(observer, &[target], &p, radius),
            o.hit,
            "observer {observer:?} target {target:?} radius {radius} params {p:?}"
        );
    }
    assert!(checked > 390);
    assert!(hits > 50 && hits < checked - 50, "unbalanced scene set: {hits}/{checked}");
}

type Scene = ((f64, f64, f64), Vec<(f64, f64)>, f64);

fn scene() -> impl Strategy<Value = Scene> {
    (
        (-2.0f64..2.0, -2.0f64..2.0, -PI..PI),
        prop::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 1..6),
        0.02f64..0.4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn widening_never_loses_a_detection(
        (observer, targets, radius) in scene(),
        extra_range in 0.0f64..2.0,
        extra_left in 0.0f64..0.5,
        extra_right in 0.0f64..0.5,
    ) {
        let p = SensorParams::default();
        let wide = SensorParams {
            view_distance: p.view_distance + extra_range,
            fov_left_bound: p.fov_left_bound + extra_left,
            fov_right_bound: p.fov_right_bound - extra_right,
            ..p
        };
        if analytic(observer, &targets, &p, radius) {
            prop_assert!(analytic(observer, &targets, &wide, radius));
        }
    }

    #[test]
    fn rigid_motion_leaves_reading_unchanged(
        (observer, targets, radius) in scene(),
        phi in -PI..PI,
        tx in -10.0f64..10.0,
        ty in -10.0f64..10.0,
    ) {
        let p = SensorParams::default();
        let margin = oracle(observer, &targets, &p, radius).margin;
        prop_assume!(margin > 1e-6);
        let (s, c) = phi.sin_cos();
        let move_pt = |(x, y): (f64, f64)| (c * x - s * y + tx, s * x + c * y + ty);
        let (ox, oy) = move_pt((observer.0, observer.1));
        let moved_observer = (ox, oy, observer.2 + phi);
        let moved: Vec<_> = targets.iter().copied().map(move_pt).collect();
        prop_assert_eq!(
            analytic(observer, &targets, &p, radius),
            analytic(moved_observer, &moved, &p, radius)
        );
    }
}
