//! The simulation loop.
//!
//! One tick runs three phases in a fixed order:
//!
//! 1. every agent acts, in ascending id order, against the live field, so
//!    ink laid by agent `i` is already visible to agent `i + 1`;
//! 2. the field evaporates;
//! 3. the field diffuses.
//!
//! The random stream is consumed in a published order: three variates per
//! agent at initialization (x, y, heading) and two per agent per tick
//! (deposit, move). Nothing else draws from it.

use crate::agents::{agent_step, AgentState, BehaviorParams};
use crate::error::{Result, SwarmError};
use crate::habitat::{Boundary, CanvasField, Direction, DEFAULT_FLOOR, DEFAULT_SATURATION};
use crate::render::Palette;
use crate::rng::CounterRng;

/// Default cap on the agent roster size.
pub const DEFAULT_MAX_AGENTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SimParams {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub boundary: Boundary,
    /// Agents are assigned to channels round-robin by id.
    pub agent_count: usize,
    pub max_agents: usize,
    pub behavior: BehaviorParams,
    /// Evaporation rate per tick.
    pub rho: f64,
    /// Diffusion rate per tick.
    pub lambda: f64,
    pub saturation: f64,
    pub floor: f64,
    pub seed: u64,
    pub ticks: u64,
    /// Render the non-decaying ink layer instead of the live field.
    pub permanent: bool,
    pub palette: Palette,
    /// Metrics are sampled every `metrics_every` ticks (and at the last one).
    pub metrics_every: u64,
    pub coverage_threshold: f64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            width: 512,
            height: 512,
            channels: 3,
            boundary: Boundary::Bounded,
            agent_count: 200,
            max_agents: DEFAULT_MAX_AGENTS,
            behavior: BehaviorParams::default(),
            rho: 0.015,
            lambda: 0.1,
            saturation: DEFAULT_SATURATION,
            floor: DEFAULT_FLOOR,
            seed: 1,
            ticks: 2000,
            permanent: true,
            palette: Palette::default_for(3),
            metrics_every: 100,
            coverage_threshold: 0.01,
        }
    }
}

impl SimParams {
    /// Change the channel count, regenerating the default palette.
    pub fn with_channels(mut self, channels: usize) -> Self {
        self.channels = channels;
        self.palette = Palette::default_for(channels);
        self
    }

    pub fn validate(&self) -> Result<()> {
        // Dimension checks are shared with the field constructor.
        CanvasField::new(self.width, self.height, self.channels, self.boundary)?
            .with_limits(self.saturation, self.floor)?;
        self.behavior.validate()?;
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(SwarmError::param("rho", "must lie in [0,1]"));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(SwarmError::param("lambda", "must lie in [0,1]"));
        }
        if self.metrics_every == 0 {
            return Err(SwarmError::param("metrics_every", "must be >= 1"));
        }
        if !(self.coverage_threshold.is_finite() && self.coverage_threshold >= 0.0) {
            return Err(SwarmError::param(
                "coverage_threshold",
                "must be finite and >= 0",
            ));
        }
        self.palette.validate(self.channels)?;
        if self.agent_count > self.max_agents {
            return Err(SwarmError::Resource(format!(
                "{} agents exceeds the cap of {}",
                self.agent_count, self.max_agents
            )));
        }
        Ok(())
    }
}

/// Everything needed to continue a simulation bit-exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldState {
    pub(crate) params: SimParams,
    pub(crate) field: CanvasField,
    /// Non-decaying accumulation of every deposit, same layout as the field.
    pub(crate) ink: Vec<f64>,
    pub(crate) agents: Vec<AgentState>,
    pub(crate) tick: u64,
    pub(crate) rng: CounterRng,
    pub(crate) deposit_events: Vec<u64>,
}

impl WorldState {
    pub fn params(&self) -> &SimParams {
        &self.params
    }

    pub fn field(&self) -> &CanvasField {
        &self.field
    }

    pub fn ink(&self) -> &[f64] {
        &self.ink
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn rng(&self) -> &CounterRng {
        &self.rng
    }

    /// Deposit events per channel since tick 0.
    pub fn deposit_events(&self) -> &[u64] {
        &self.deposit_events
    }

    /// The layer the renderer paints: the ink accumulator or the live field.
    pub fn render_layer(&self) -> &[f64] {
        if self.params.permanent {
            &self.ink
        } else {
            self.field.values()
        }
    }

    /// Checksum of the snapshot encoding of this world.
    pub fn snapshot_hash(&self) -> u64 {
        crate::snapshot::hash(self)
    }

    /// Advance one tick.
    pub fn step(&mut self) {
        let behavior = self.params.behavior;
        let channels = self.field.channels();
        for i in 0..self.agents.len() {
            let outcome = agent_step(&self.agents[i], &self.field, &behavior, &mut self.rng);
            if let Some(ev) = outcome.deposit {
                self.field
                    .deposit(ev.cell, ev.channel, ev.amount)
                    .expect("agent state validated against field");
                let at = (ev.cell.y * self.field.width() + ev.cell.x) * channels + ev.channel;
                self.ink[at] += ev.amount;
                self.deposit_events[ev.channel] += 1;
            }
            self.agents[i] = outcome.agent;
        }
        self.field
            .evaporate(self.params.rho)
            .expect("rho validated");
        self.field
            .diffuse(self.params.lambda)
            .expect("lambda validated");
        self.tick += 1;
    }

    /// Apply [`step`](Self::step) `ticks` times, calling `observer` with
    /// read-only access after each one. An observer error stops the run.
    pub fn run<F, E>(&mut self, ticks: u64, mut observer: F) -> Result<()>
    where
        F: FnMut(&WorldState) -> std::result::Result<(), E>,
        E: std::fmt::Display,
    {
        for _ in 0..ticks {
            self.step();
            observer(self).map_err(|e| SwarmError::Observer {
                tick: self.tick,
                reason: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// [`run`](Self::run) without an observer.
    pub fn advance(&mut self, ticks: u64) {
        for _ in 0..ticks {
            self.step();
        }
    }
}

/// Build a blank world and scatter the agents uniformly at random.
pub fn init_world(params: &SimParams) -> Result<WorldState> {
    params.validate()?;
    let field = CanvasField::new(
        params.width,
        params.height,
        params.channels,
        params.boundary,
    )?
    .with_limits(params.saturation, params.floor)?;
    let mut rng = CounterRng::new(params.seed);
    let theta = params.behavior.theta as f32;
    let agents = (0..params.agent_count)
        .map(|id| {
            let x = rng.next_index(params.width);
            let y = rng.next_index(params.height);
            let heading = Direction::from_index(rng.next_index(8)).expect("index < 8");
            AgentState {
                id,
                pos: crate::habitat::Cell::new(x, y),
                heading,
                channel: id % params.channels,
                theta,
                steps_since_deposit: 0,
            }
        })
        .collect();
    Ok(WorldState {
        ink: vec![0.0; field.values().len()],
        field,
        agents,
        tick: 0,
        rng,
        deposit_events: vec![0; params.channels],
        params: params.clone(),
    })
}
