use std::f64::consts::PI;

use proptest::prelude::*;
use swarmsim_cli::render::{frame_file_name, Viewport};
use swarmsim_cli::trace_io::trace_to_string;
use swarmsim_cli::{
    parse_config, read_trace, render_frame, render_frames, replay_verify, serialize_config,
    write_metrics_csv, Tolerance,
};
use swarmsim_core::{
    run, AgentRow, Integration, Polygon, Pose, SimConfig, SwarmMetrics, Trace, TraceRecord, Vec2,
};

fn short(ticks: u64, seed: u64) -> SimConfig {
    SimConfig {
        num_ticks: ticks,
        seed,
        ..SimConfig::default()
    }
}

fn arb_config() -> impl Strategy<Value = SimConfig> {
    (
        (1.0f64..240.0, 0u64..20_000, 1usize..40, any::<u64>()),
        (0.01f64..0.5, 1.0f64..4.0),
        (0.1f64..20.0, -PI..PI, 0.0001f64..PI, any::<bool>()),
        (0.01f64..5.0, 0.01f64..10.0),
        (any::<bool>(), 1e-15f64..1e-3),
        (1.0f64..50.0, 1.0f64..50.0),
        (prop::bool::ANY, -3600i32..3600, -3600i32..3600),
    )
        .prop_map(
            |(
                (tick_rate, num_ticks, num_agents, seed),
                (agent_radius, spawn_factor),
                (view_distance, right, width, walls),
                (forward_speed, turn_rate),
                (euler, omega_epsilon),
                (w, h),
                (tenth_degrees, l, r),
            )| {
                let mut cfg = SimConfig {
                    tick_rate,
                    num_ticks,
                    num_agents,
                    seed,
                    agent_radius,
                    arena: Polygon::rectangle(w, h).unwrap(),
                    ..SimConfig::default()
                };
                cfg.spawn_radius = cfg.spawn_radius_bound() * spawn_factor;
                cfg.sensor.view_distance = view_distance;
                cfg.sensor.detect_walls = walls;
                if tenth_degrees && l != r {
                    // angles that a user would type in degrees
                    let (lo, hi) = (l.min(r), l.max(r));
                    cfg.sensor.fov_right_bound = (lo as f64 / 20.0).to_radians();
                    cfg.sensor.fov_left_bound = (hi as f64 / 20.0).to_radians();
                } else {
                    cfg.sensor.fov_right_bound = right;
                    cfg.sensor.fov_left_bound = right + width;
                }
                cfg.controller.forward_speed = forward_speed;
                cfg.controller.turn_rate = turn_rate;
                cfg.dynamics.integration = if euler {
                    Integration::Euler
                } else {
                    Integration::ExactArc
                };
                cfg.dynamics.omega_epsilon = omega_epsilon;
                cfg
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn config_serialize_parse_identity(cfg in arb_config()) {
        prop_assume!(cfg.validate().is_ok());
        let text = serialize_config(&cfg);
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(serialize_config(&back), text);
    }
}

#[test]
fn csv_rows_match_metrics_rows() {
    let trace = run(&short(120, 3), 1).unwrap();
    let mut buf = Vec::new();
    write_metrics_csv(&trace, &mut buf).unwrap();
    let mut reader = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["tick", "com_x", "com_y", "angular_momentum", "scatter", "radial_variance", "mean_radius"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 121);

    let text = trace_to_string(&trace);
    let m_rows: Vec<&str> = text.lines().filter(|l| l.starts_with("M ")).collect();
    assert_eq!(m_rows.len(), rows.len());
    for (row, m) in rows.iter().zip(m_rows) {
        let fields: Vec<&str> = m.split(' ').skip(1).collect();
        assert_eq!(row.iter().collect::<Vec<_>>(), fields);
    }
    for (row, rec) in rows.iter().zip(&trace.records) {
        let l: f64 = row[3].parse().unwrap();
        assert_eq!(l.to_bits(), rec.metrics.angular_momentum.to_bits());
    }
}

#[test]
fn rendering_leaves_trace_replayable() {
    let trace = run(&short(100, 2), 1).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.trace");
    std::fs::write(&path, trace_to_string(&trace)).unwrap();
    let before = std::fs::read(&path).unwrap();

    let loaded = read_trace(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    render_frames(&loaded, 10, &dir.path().join("frames")).unwrap();

    assert_eq!(std::fs::read(&path).unwrap(), before);
    let reloaded = read_trace(before.as_slice()).unwrap();
    assert!(replay_verify(&reloaded, 1, Tolerance::Exact).unwrap().is_success());
}

#[test]
fn render_sampling() {
    let trace = run(&short(100, 1), 1).unwrap();
    assert_eq!(trace.records.len(), 101);
    let dir = tempfile::tempdir().unwrap();
    let written = render_frames(&trace, 50, dir.path()).unwrap();
    let names: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, vec![frame_file_name(0), frame_file_name(50), frame_file_name(100)]);
    assert_eq!(names[1], "frame_000050.svg");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn static_agent_frames_are_identical() {
    let config = SimConfig {
        num_agents: 1,
        num_ticks: 4,
        ..SimConfig::default()
    };
    let pose = Pose::new(Vec2::new(1.0, -2.0), 0.7).unwrap();
    let metrics = SwarmMetrics {
        center_of_mass: pose.position,
        ..SwarmMetrics::default()
    };
    let records = (0..=4)
        .map(|tick| TraceRecord {
            tick,
            agents: vec![AgentRow {
                id: 0,
                pose,
                sense: false,
                v: 0.0,
                omega: 0.0,
            }],
            metrics,
        })
        .collect();
    let trace = Trace { config, records };
    let dir = tempfile::tempdir().unwrap();
    let written = render_frames(&trace, 1, dir.path()).unwrap();
    assert_eq!(written.len(), 5);
    let first = std::fs::read(&written[0]).unwrap();
    for path in &written[1..] {
        assert_eq!(std::fs::read(path).unwrap(), first);
    }
}

fn attr(element: &str, name: &str) -> f64 {
    let key = format!(" {name}=\"");
    let start = element.find(&key).unwrap() + key.len();
    let end = start + element[start..].find('"').unwrap();
    element[start..end].parse().unwrap()
}

#[test]
fn milling_frame_shows_a_ring() {
    let cfg = SimConfig::default();
    let trace = run(&cfg, 1).unwrap();
    let last = trace.records.last().unwrap();
    let svg = render_frame(&cfg, last);
    let vp = Viewport::for_config(&cfg);

    let centers: Vec<Vec2> = svg
        .lines()
        .filter(|l| l.contains(r#"class="agent""#))
        .map(|l| vp.to_world(attr(l, "cx"), attr(l, "cy")))
        .collect();
    assert_eq!(centers.len(), 9);

    let m = &last.metrics;
    // printed pixel coordinates carry three decimals
    let rounding = 0.0005 * 2f64.sqrt() / vp.len(1.0);
    let band = 3.0 * m.radial_variance.sqrt() + rounding;
    for c in centers {
        let r = c.distance(m.center_of_mass);
        assert!(
            (r - m.mean_radius).abs() <= band,
            "disc at distance {r} outside {} +- {band}",
            m.mean_radius
        );
    }
}
