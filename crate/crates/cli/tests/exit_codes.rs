use std::path::Path;
use std::process::{Command, Output};

fn swarmsim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swarmsim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn run_replay_render_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("cfg.ini"), "[world]\nnum_agents = 5\n").unwrap();

    let out = swarmsim(
        &["run", "--config", "cfg.ini", "--seed", "4", "--ticks", "60", "--out", "a.trace", "--threads", "2"],
        d,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(d.join("a.trace")).unwrap();
    assert_eq!(text.lines().count(), 1 + 61 * 6);
    assert!(text.lines().next().unwrap().contains("world.seed=4"));

    assert_eq!(code(&swarmsim(&["replay", "--trace", "a.trace"], d)), 0);
    assert_eq!(code(&swarmsim(&["render", "--trace", "a.trace", "--every", "30", "--out-dir", "frames"], d)), 0);
    assert_eq!(std::fs::read_dir(d.join("frames")).unwrap().count(), 3);
    assert_eq!(code(&swarmsim(&["metrics", "--trace", "a.trace", "--csv", "m.csv"], d)), 0);
    assert_eq!(std::fs::read_to_string(d.join("m.csv")).unwrap().lines().count(), 62);
}

#[test]
fn divergent_trace_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&swarmsim(&["run", "--ticks", "30", "--out", "a.trace"], d)), 0);
    let text = std::fs::read_to_string(d.join("a.trace")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // agent 2 at tick 12
    let target = 1 + 12 * 10 + 2;
    let mut fields: Vec<String> = lines[target].split(' ').map(String::from).collect();
    let x: f64 = fields[3].parse().unwrap();
    fields[3] = format!("{:.16e}", x + 1e-6);
    lines[target] = fields.join(" ");
    std::fs::write(d.join("b.trace"), lines.join("\n") + "\n").unwrap();

    let out = swarmsim(&["replay", "--trace", "b.trace"], d);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tick 12") && err.contains("agent 2 x"), "{err}");
}

#[test]
fn usage_and_config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&swarmsim(&[], d)), 1);
    assert_eq!(code(&swarmsim(&["run"], d)), 1);
    assert_eq!(code(&swarmsim(&["run", "--out", "x", "--seed", "abc"], d)), 1);
    assert_eq!(code(&swarmsim(&["--help"], d)), 0);

    std::fs::write(d.join("bad.ini"), "[sensor]\nfov_left_bound = 2\nfov_right_bound = 5\n").unwrap();
    let out = swarmsim(&["run", "--config", "bad.ini", "--out", "x.trace"], d);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("sensor.fov_right_bound") && err.contains("line 3"), "{err}");
    assert_eq!(code(&swarmsim(&["run", "--config", "missing.ini", "--out", "x.trace"], d)), 1);
}

#[test]
fn runtime_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&swarmsim(&["replay", "--trace", "nope.trace"], d)), 2);
    std::fs::write(d.join("junk.trace"), "not a trace\n").unwrap();
    assert_eq!(code(&swarmsim(&["metrics", "--trace", "junk.trace", "--csv", "m.csv"], d)), 2);
}
