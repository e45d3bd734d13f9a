//! File formats and tools around the swarm engine: INI configs, text
//! traces, replay verification, metrics CSV and SVG frames.

pub mod config_file;
pub mod export;
pub mod render;
pub mod replay;
pub mod trace_io;

pub use config_file::{parse_config, serialize_config, ConfigError};
pub use export::write_metrics_csv;
pub use render::{render_frame, render_frames};
pub use replay::{replay_verify, ReplayReport, Tolerance};
pub use trace_io::{read_trace, write_trace, TraceError};
