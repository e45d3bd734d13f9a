//! Line-oriented trace files.
//!
//! ```text
//! swarmsim-trace 1 world.tick_rate=30 world.num_ticks=100 ... dynamics.omega_epsilon=1e-9
//! A <tick> <id> <x> <y> <heading> <sense> <v> <omega>        (one per agent, ascending id)
//! M <tick> <com_x> <com_y> <L> <scatter> <radial_var> <mean_radius>
//! ...
//! ```
//!
//! Floats are written in scientific notation with 17 significant digits,
//! which reproduces every IEEE-754 double exactly. `sense` is `0` or `1`.
//! A file holds `1 + (num_ticks + 1) * (num_agents + 1)` lines.

use std::io::{self, BufRead, Write};

use swarmsim_core::{AgentRow, Pose, SimConfig, SwarmMetrics, Trace, TraceRecord, Vec2};
use thiserror::Error;

use crate::config_file::{config_entries, parse_config};

pub const MAGIC: &str = "swarmsim-trace";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn format_err(line: usize, message: impl Into<String>) -> TraceError {
    TraceError::Format {
        line,
        message: message.into(),
    }
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn header_line(config: &SimConfig) -> String {
    let mut line = format!("{MAGIC} {FORMAT_VERSION}");
    for (section, key, value) in config_entries(config) {
        line.push_str(&format!(" {section}.{key}={value}"));
    }
    line
}

fn parse_header(line: &str) -> Result<SimConfig, TraceError> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(MAGIC) {
        return Err(format_err(1, format!("missing `{MAGIC}` header")));
    }
    let version = tokens.next().ok_or_else(|| format_err(1, "missing format version"))?;
    if version != FORMAT_VERSION.to_string() {
        return Err(format_err(
            1,
            format!("version mismatch: file has {version}, reader supports {FORMAT_VERSION}"),
        ));
    }
    let mut ini = String::new();
    let mut current = String::new();
    for token in tokens {
        let (name, value) = token
            .split_once('=')
            .ok_or_else(|| format_err(1, format!("malformed config token `{token}`")))?;
        let (section, key) = name
            .split_once('.')
            .ok_or_else(|| format_err(1, format!("malformed config key `{name}`")))?;
        if section != current {
            ini.push_str(&format!("[{section}]\n"));
            current = section.to_string();
        }
        ini.push_str(&format!("{key} = {value}\n"));
    }
    parse_config(&ini).map_err(|e| format_err(1, format!("header config: {e}")))
}

pub fn write_trace<W: Write>(trace: &Trace, out: W) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "{}", header_line(&trace.config))?;
    for rec in &trace.records {
        for a in &rec.agents {
            writeln!(
                out,
                "A {} {} {} {} {} {} {} {}",
                rec.tick,
                a.id,
                fmt_f64(a.pose.position.x),
                fmt_f64(a.pose.position.y),
                fmt_f64(a.pose.heading),
                u8::from(a.sense),
                fmt_f64(a.v),
                fmt_f64(a.omega),
            )?;
        }
        let m = &rec.metrics;
        writeln!(
            out,
            "M {} {} {} {} {} {} {}",
            rec.tick,
            fmt_f64(m.center_of_mass.x),
            fmt_f64(m.center_of_mass.y),
            fmt_f64(m.angular_momentum),
            fmt_f64(m.scatter),
            fmt_f64(m.radial_variance),
            fmt_f64(m.mean_radius),
        )?;
    }
    out.flush()
}

pub fn trace_to_string(trace: &Trace) -> String {
    let mut buf = Vec::new();
    write_trace(trace, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("trace text is ASCII")
}

struct Fields<'a> {
    line: usize,
    parts: std::str::SplitWhitespace<'a>,
}

impl<'a> Fields<'a> {
    fn next_str(&mut self, what: &str) -> Result<&'a str, TraceError> {
        self.parts
            .next()
            .ok_or_else(|| format_err(self.line, format!("missing field `{what}`")))
    }

    fn f64(&mut self, what: &str) -> Result<f64, TraceError> {
        let s = self.next_str(what)?;
        s.parse()
            .map_err(|_| format_err(self.line, format!("malformed `{what}`: `{s}`")))
    }

    fn u64(&mut self, what: &str) -> Result<u64, TraceError> {
        let s = self.next_str(what)?;
        s.parse()
            .map_err(|_| format_err(self.line, format!("malformed `{what}`: `{s}`")))
    }

    fn finish(mut self) -> Result<(), TraceError> {
        match self.parts.next() {
            None => Ok(()),
            Some(extra) => Err(format_err(self.line, format!("unexpected trailing field `{extra}`"))),
        }
    }
}

pub fn read_trace<R: BufRead>(input: R) -> Result<Trace, TraceError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(1, "empty trace"))??;
    let config = parse_header(&header)?;
    let num_agents = config.num_agents;
    let expected_records = config.num_ticks + 1;
    let mut records = Vec::with_capacity(expected_records as usize);
    let mut line_no = 1usize;

    for tick in 0..expected_records {
        let mut agents = Vec::with_capacity(num_agents);
        for slot in 0..num_agents {
            line_no += 1;
            let text = match lines.next() {
                Some(l) => l?,
                None => {
                    return Err(format_err(
                        line_no,
                        format!("truncated: expected agent row {slot} of tick {tick}"),
                    ))
                }
            };
            let mut f = Fields {
                line: line_no,
                parts: text.split_whitespace(),
            };
            let kind = f.next_str("row kind")?;
            if kind != "A" {
                return Err(format_err(
                    line_no,
                    format!("row-count mismatch: expected agent row {slot} of tick {tick}, found `{kind}` row"),
                ));
            }
            let row_tick = f.u64("tick")?;
            if row_tick != tick {
                return Err(format_err(line_no, format!("expected tick {tick}, found {row_tick}")));
            }
            let id = f.u64("id")?;
            let id = u32::try_from(id).map_err(|_| format_err(line_no, "agent id out of range"))?;
            if let Some(prev) = agents.last().map(|a: &AgentRow| a.id) {
                if id <= prev {
                    return Err(format_err(line_no, "agent ids must be strictly ascending"));
                }
            }
            let x = f.f64("x")?;
            let y = f.f64("y")?;
            let heading = f.f64("heading")?;
            let sense = match f.next_str("sense")? {
                "0" => false,
                "1" => true,
                other => return Err(format_err(line_no, format!("malformed `sense`: `{other}`"))),
            };
            let v = f.f64("v")?;
            let omega = f.f64("omega")?;
            f.finish()?;
            agents.push(AgentRow {
                id,
                pose: Pose {
                    position: Vec2::new(x, y),
                    heading,
                },
                sense,
                v,
                omega,
            });
        }
        line_no += 1;
        let text = match lines.next() {
            Some(l) => l?,
            None => {
                return Err(format_err(
                    line_no,
                    format!("truncated: expected metrics row of tick {tick}"),
                ))
            }
        };
        let mut f = Fields {
            line: line_no,
            parts: text.split_whitespace(),
        };
        let kind = f.next_str("row kind")?;
        if kind != "M" {
            return Err(format_err(
                line_no,
                format!("row-count mismatch: expected metrics row of tick {tick}, found `{kind}` row"),
            ));
        }
        let row_tick = f.u64("tick")?;
        if row_tick != tick {
            return Err(format_err(line_no, format!("expected tick {tick}, found {row_tick}")));
        }
        let metrics = SwarmMetrics {
            center_of_mass: Vec2::new(f.f64("com_x")?, f.f64("com_y")?),
            angular_momentum: f.f64("L")?,
            scatter: f.f64("scatter")?,
            radial_variance: f.f64("radial_var")?,
            mean_radius: f.f64("mean_radius")?,
        };
        f.finish()?;
        records.push(TraceRecord {
            tick,
            agents,
            metrics,
        });
    }
    if let Some(extra) = lines.next() {
        extra?;
        return Err(format_err(line_no + 1, "row-count mismatch: trailing rows after final tick"));
    }
    Ok(Trace { config, records })
}
