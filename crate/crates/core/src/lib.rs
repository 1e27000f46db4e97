//! A deterministic stigmergic swarm painting engine.
//!
//! Agents wander a multi-channel canvas, lay ink according to a
//! response-threshold rule and steer toward ink they sense nearby. The ink
//! evaporates and diffuses, so the canvas acts as the swarm's shared,
//! fading memory. The [`metrics`] module measures how much spatial order the
//! coupling produces compared with an uncoupled null model.
//!
//! ```
//! use swarm_canvas::{engine::{init_world, SimParams}, metrics};
//!
//! let params = SimParams { width: 32, height: 32, agent_count: 8, ..SimParams::default() };
//! let mut world = init_world(&params).unwrap();
//! world.advance(50);
//! let m = metrics::record(&world);
//! assert_eq!(m.tick, 50);
//! ```

pub mod agents;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod habitat;
pub mod metrics;
pub mod render;
pub mod rng;
pub mod snapshot;

pub use agents::{AgentState, BehaviorParams, InertiaTable};
pub use engine::{init_world, SimParams, WorldState};
pub use error::{Result, SwarmError};
pub use habitat::{Boundary, CanvasField, Cell, Direction};
pub use render::{Palette, Rgb};
