//! Deterministic headless swarm simulation.
//!
//! Agents are differential-drive robots with a single binary proximity
//! sensor whose view cone sits left of the heading. Each agent turns left
//! when it sees another agent and right otherwise; from this rule a swarm
//! settles into a rotating ring (a mill).
//!
//! Every simulated entity is split into an object that owns behavior
//! ([`engine::FlockbotAgent`], [`engine::World`]) and a plain snapshot that
//! other entities may read ([`AgentState`], [`SwarmState`], [`WorldState`]).

pub mod config;
pub mod control;
pub mod dynamics;
pub mod engine;
pub mod error;
pub mod geom;
pub mod metrics;
pub mod rng;
pub mod sensing;
pub mod state;

pub use config::{ControllerParams, DynamicsParams, Integration, SensorParams, SimConfig};
pub use control::{binary_controller, ControlOutput};
pub use dynamics::unicycle_step;
pub use engine::{init_world, run, tick, AgentRow, Trace, TraceRecord, World};
pub use error::{Result, SimError};
pub use geom::{bearing_to, wrap_angle, Polygon, Pose, Vec2};
pub use metrics::{detect_milling, MillingCriteria};
pub use rng::{rng_next, SplitMix64};
pub use sensing::{binary_sense, SensorReading};
pub use state::{AgentId, AgentState, SwarmMetrics, SwarmState, WorldState};
