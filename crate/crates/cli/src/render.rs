//! Standalone SVG frames of a trace.
//!
//! The world-to-pixel mapping depends only on the arena's bounding box, so
//! every frame of a trace shares one coordinate system. Frames carry no tick
//! label; the tick is in the file name (`frame_000123.svg`).

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use swarmsim_core::{SimConfig, Trace, TraceRecord, Vec2};

const WIDTH_PX: f64 = 800.0;
const MARGIN: f64 = 0.05;
const SENSING_COLOR: &str = "#d62728";
const IDLE_COLOR: &str = "#1f77b4";

/// Maps world meters to SVG pixels (y up in the world, down on screen).
#[derive(Debug, Clone, Copy)]
pub struct Viewport {
    origin: Vec2,
    top: f64,
    scale: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    pub fn for_config(config: &SimConfig) -> Self {
        let (lo, hi) = config.arena.bounding_box();
        let pad = (hi.x - lo.x).max(hi.y - lo.y) * MARGIN;
        let (lo, hi) = (Vec2::new(lo.x - pad, lo.y - pad), Vec2::new(hi.x + pad, hi.y + pad));
        let scale = WIDTH_PX / (hi.x - lo.x);
        Self {
            origin: lo,
            top: hi.y,
            scale,
            width: WIDTH_PX,
            height: (hi.y - lo.y) * scale,
        }
    }

    pub fn to_px(&self, p: Vec2) -> (f64, f64) {
        ((p.x - self.origin.x) * self.scale, (self.top - p.y) * self.scale)
    }

    pub fn to_world(&self, px: f64, py: f64) -> Vec2 {
        Vec2::new(px / self.scale + self.origin.x, self.top - py / self.scale)
    }

    pub fn len(&self, meters: f64) -> f64 {
        meters * self.scale
    }
}

pub fn render_frame(config: &SimConfig, record: &TraceRecord) -> String {
    let vp = Viewport::for_config(config);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = vp.width,
        h = vp.height
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let points: Vec<String> = config
        .arena
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = vp.to_px(*v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        svg,
        r##"<polygon class="arena" points="{}" fill="none" stroke="#333333" stroke-width="2"/>"##,
        points.join(" ")
    );

    let sensor = &config.sensor;
    let span = sensor.fov_left_bound - sensor.fov_right_bound;
    let large_arc = u8::from(span > std::f64::consts::PI);
    for a in &record.agents {
        let color = if a.sense { SENSING_COLOR } else { IDLE_COLOR };
        let p = a.pose.position;
        let h = a.pose.heading;
        let (cx, cy) = vp.to_px(p);
        let (rx, ry) = vp.to_px(p + Vec2::from_angle(h + sensor.fov_right_bound) * sensor.view_distance);
        let (lx, ly) = vp.to_px(p + Vec2::from_angle(h + sensor.fov_left_bound) * sensor.view_distance);
        let arc_r = vp.len(sensor.view_distance);
        // right bound to left bound runs counter-clockwise on screen: sweep flag 0
        let _ = writeln!(
            svg,
            r#"<path class="cone" d="M {cx:.3} {cy:.3} L {rx:.3} {ry:.3} A {arc_r:.3} {arc_r:.3} 0 {large_arc} 0 {lx:.3} {ly:.3} Z" fill="{color}" fill-opacity="0.15" stroke="none"/>"#
        );
    }
    for a in &record.agents {
        let color = if a.sense { SENSING_COLOR } else { IDLE_COLOR };
        let (cx, cy) = vp.to_px(a.pose.position);
        let r = vp.len(config.agent_radius);
        let (hx, hy) = vp.to_px(a.pose.position + Vec2::from_angle(a.pose.heading) * (2.0 * config.agent_radius));
        let _ = writeln!(
            svg,
            r##"<circle class="agent" data-id="{id}" cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="{color}" stroke="#000000" stroke-width="1"/>"##,
            id = a.id
        );
        let _ = writeln!(
            svg,
            r##"<line class="heading" x1="{cx:.3}" y1="{cy:.3}" x2="{hx:.3}" y2="{hy:.3}" stroke="#000000" stroke-width="2"/>"##
        );
    }
    let (mx, my) = vp.to_px(record.metrics.center_of_mass);
    let arm = 6.0;
    let _ = writeln!(
        svg,
        r##"<path class="com" d="M {x0:.3} {my:.3} L {x1:.3} {my:.3} M {mx:.3} {y0:.3} L {mx:.3} {y1:.3}" stroke="#2ca02c" stroke-width="2"/>"##,
        x0 = mx - arm,
        x1 = mx + arm,
        y0 = my - arm,
        y1 = my + arm
    );
    svg.push_str("</svg>\n");
    svg
}

pub fn frame_file_name(tick: u64) -> String {
    format!("frame_{tick:06}.svg")
}

/// Writes one SVG for every `every`-th record (tick 0 included). Returns the
/// written paths in tick order.
pub fn render_frames(trace: &Trace, every: u64, out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    if every == 0 {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "--every must be >= 1"));
    }
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for record in trace.records.iter().filter(|r| r.tick % every == 0) {
        let path = out_dir.join(frame_file_name(record.tick));
        fs::write(&path, render_frame(&trace.config, record))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_round_trip() {
        let vp = Viewport::for_config(&SimConfig::default());
        let p = Vec2::new(1.25, -3.5);
        let (x, y) = vp.to_px(p);
        let back = vp.to_world(x, y);
        assert!((back - p).norm() < 1e-12);
        // world y up is screen y down
        assert!(vp.to_px(Vec2::new(0.0, 1.0)).1 < vp.to_px(Vec2::ZERO).1);
        assert_eq!(vp.width, 800.0);
    }

    #[test]
    fn frame_contents() {
        let cfg = SimConfig {
            num_ticks: 1,
            ..SimConfig::default()
        };
        let trace = swarmsim_core::run(&cfg, 1).unwrap();
        let svg = render_frame(&cfg, &trace.records[0]);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches(r#"class="agent""#).count(), 9);
        assert_eq!(svg.matches(r#"class="cone""#).count(), 9);
        assert_eq!(svg.matches(r#"class="com""#).count(), 1);
        assert_eq!(svg.matches(r#"class="arena""#).count(), 1);
    }
}
