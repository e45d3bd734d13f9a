//! INI-style configuration files.
//!
//! Grammar, one construct per line:
//!
//! ```text
//! # comment            (also `;`; a ` #` later on a line starts a comment)
//! [section]            world | sensor | controller | dynamics
//! key = value
//! ```
//!
//! Every key is optional and falls back to its default. Numbers use Rust's
//! float syntax. Angles (`sensor.fov_left_bound`, `sensor.fov_right_bound`)
//! are degrees, or radians with a `rad` suffix (`0.2rad`). The arena is a
//! `;`-separated list of `x,y` vertices in counter-clockwise order.
//!
//! | section      | keys                                                              |
//! |--------------|-------------------------------------------------------------------|
//! | `world`      | tick_rate, num_ticks, num_agents, seed, spawn_radius, agent_radius, arena |
//! | `sensor`     | view_distance, fov_left_bound, fov_right_bound, detect_walls      |
//! | `controller` | forward_speed, turn_rate (rad/s)                                  |
//! | `dynamics`   | integration (`exact_arc` or `euler`), omega_epsilon               |

use std::collections::HashMap;
use std::fmt::Write as _;

use swarmsim_core::{Integration, Polygon, SimConfig, SimError, Vec2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("config line {line}: {key}: {message}")]
pub struct ConfigError {
    /// 1-based; 0 when the offending key was not present in the document.
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line,
            key: key.into(),
            message: message.into(),
        }
    }
}

const KEYS: &[(&str, &[&str])] = &[
    (
        "world",
        &[
            "tick_rate",
            "num_ticks",
            "num_agents",
            "seed",
            "spawn_radius",
            "agent_radius",
            "arena",
        ],
    ),
    (
        "sensor",
        &["view_distance", "fov_left_bound", "fov_right_bound", "detect_walls"],
    ),
    ("controller", &["forward_speed", "turn_rate"]),
    ("dynamics", &["integration", "omega_epsilon"]),
];

fn strip_comment(line: &str) -> &str {
    let trimmed = line.trim_start();
    if trimmed.starts_with('#') || trimmed.starts_with(';') {
        return "";
    }
    match line.find(" #") {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

pub fn parse_config(text: &str) -> Result<SimConfig, ConfigError> {
    let mut entries: HashMap<String, (usize, String)> = HashMap::new();
    let mut section: Option<&str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::new(line_no, line, "malformed section header"))?
                .trim();
            let known = KEYS
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| ConfigError::new(line_no, name, "unknown section"))?;
            section = Some(known.0);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new(line_no, line, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        let Some(sec) = section else {
            return Err(ConfigError::new(line_no, key, "unknown key (outside any section)"));
        };
        let full = format!("{sec}.{key}");
        let allowed = KEYS.iter().find(|(s, _)| *s == sec).map(|(_, k)| *k).unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(ConfigError::new(line_no, full, "unknown key"));
        }
        if let Some((first, _)) = entries.get(&full) {
            return Err(ConfigError::new(
                line_no,
                full,
                format!("duplicate key (first set on line {first})"),
            ));
        }
        entries.insert(full, (line_no, value.to_string()));
    }
    build(&entries)
}

fn build(entries: &HashMap<String, (usize, String)>) -> Result<SimConfig, ConfigError> {
    let mut cfg = SimConfig::default();
    let line_of = |key: &str| entries.get(key).map_or(0, |(l, _)| *l);

    fn get<T>(
        entries: &HashMap<String, (usize, String)>,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<T>, ConfigError> {
        match entries.get(key) {
            None => Ok(None),
            Some((line, value)) => parse(value)
                .map(Some)
                .map_err(|msg| ConfigError::new(*line, key, msg)),
        }
    }

    if let Some(v) = get(entries, "world.tick_rate", parse_f64)? {
        cfg.tick_rate = v;
    }
    if let Some(v) = get(entries, "world.num_ticks", parse_int::<u64>)? {
        cfg.num_ticks = v;
    }
    if let Some(v) = get(entries, "world.num_agents", parse_int::<usize>)? {
        cfg.num_agents = v;
    }
    if let Some(v) = get(entries, "world.seed", parse_int::<u64>)? {
        cfg.seed = v;
    }
    if let Some(v) = get(entries, "world.spawn_radius", parse_f64)? {
        cfg.spawn_radius = v;
    }
    if let Some(v) = get(entries, "world.agent_radius", parse_f64)? {
        cfg.agent_radius = v;
    }
    if let Some(v) = get(entries, "world.arena", parse_arena)? {
        cfg.arena = v;
    }
    if let Some(v) = get(entries, "sensor.view_distance", parse_f64)? {
        cfg.sensor.view_distance = v;
    }
    if let Some(v) = get(entries, "sensor.fov_left_bound", parse_angle)? {
        cfg.sensor.fov_left_bound = v;
    }
    if let Some(v) = get(entries, "sensor.fov_right_bound", parse_angle)? {
        cfg.sensor.fov_right_bound = v;
    }
    if let Some(v) = get(entries, "sensor.detect_walls", parse_bool)? {
        cfg.sensor.detect_walls = v;
    }
    if let Some(v) = get(entries, "controller.forward_speed", parse_f64)? {
        cfg.controller.forward_speed = v;
    }
    if let Some(v) = get(entries, "controller.turn_rate", parse_f64)? {
        cfg.controller.turn_rate = v;
    }
    if let Some(v) = get(entries, "dynamics.integration", |s| s.parse::<Integration>())? {
        cfg.dynamics.integration = v;
    }
    if let Some(v) = get(entries, "dynamics.omega_epsilon", parse_f64)? {
        cfg.dynamics.omega_epsilon = v;
    }

    cfg.validate().map_err(|e| match e {
        SimError::InvalidConfig { field, reason } => {
            // The spawn bound involves several keys; blame the one named.
            ConfigError::new(line_of(field), field, reason)
        }
        other => ConfigError::new(0, "config", other.to_string()),
    })?;
    Ok(cfg)
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("malformed number `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("value `{s}` is not finite"))
    }
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("malformed integer `{s}`"))
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("malformed boolean `{s}` (expected true or false)")),
    }
}

fn parse_angle(s: &str) -> Result<f64, String> {
    match s.strip_suffix("rad") {
        Some(rad) => parse_f64(rad.trim()),
        None => Ok(parse_f64(s)?.to_radians()),
    }
}

fn parse_arena(s: &str) -> Result<Polygon, String> {
    let mut vertices = Vec::new();
    for pair in s.split(';') {
        let (x, y) = pair
            .split_once(',')
            .ok_or_else(|| format!("malformed vertex `{}` (expected x,y)", pair.trim()))?;
        vertices.push(Vec2::new(parse_f64(x.trim())?, parse_f64(y.trim())?));
    }
    Polygon::new(vertices).map_err(|e| e.to_string())
}

/// Degree text that parses back to exactly `radians`, or a `rad`-suffixed
/// literal when no such decimal exists.
fn format_angle(radians: f64) -> String {
    let mut deg = radians.to_degrees();
    for _ in 0..8 {
        let back = deg.to_radians();
        if back == radians {
            return format!("{deg}");
        }
        deg = if back < radians { deg.next_up() } else { deg.next_down() };
    }
    format!("{radians}rad")
}

/// `(section, key, value)` for every field, in canonical order.
pub fn config_entries(cfg: &SimConfig) -> Vec<(&'static str, &'static str, String)> {
    let arena = cfg
        .arena
        .vertices()
        .iter()
        .map(|v| format!("{},{}", v.x, v.y))
        .collect::<Vec<_>>()
        .join(";");
    vec![
        ("world", "tick_rate", format!("{}", cfg.tick_rate)),
        ("world", "num_ticks", cfg.num_ticks.to_string()),
        ("world", "num_agents", cfg.num_agents.to_string()),
        ("world", "seed", cfg.seed.to_string()),
        ("world", "spawn_radius", format!("{}", cfg.spawn_radius)),
        ("world", "agent_radius", format!("{}", cfg.agent_radius)),
        ("world", "arena", arena),
        ("sensor", "view_distance", format!("{}", cfg.sensor.view_distance)),
        ("sensor", "fov_left_bound", format_angle(cfg.sensor.fov_left_bound)),
        ("sensor", "fov_right_bound", format_angle(cfg.sensor.fov_right_bound)),
        ("sensor", "detect_walls", cfg.sensor.detect_walls.to_string()),
        ("controller", "forward_speed", format!("{}", cfg.controller.forward_speed)),
        ("controller", "turn_rate", format!("{}", cfg.controller.turn_rate)),
        ("dynamics", "integration", cfg.dynamics.integration.as_str().to_string()),
        ("dynamics", "omega_epsilon", format!("{:e}", cfg.dynamics.omega_epsilon)),
    ]
}

/// Writes every field explicitly; `parse_config` reads it back unchanged.
pub fn serialize_config(cfg: &SimConfig) -> String {
    let mut out = String::new();
    let mut current = "";
    for (section, key, value) in config_entries(cfg) {
        if section != current {
            if !current.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "[{section}]");
            current = section;
        }
        let _ = writeln!(out, "{key} = {value}");
    }
    out
}
