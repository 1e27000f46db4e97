//! Agent behavior: stimulus perception, response-threshold deposition and
//! stimulus-weighted correlated movement.
//!
//! Agents never see one another. Everything an agent knows comes from the
//! field around it, its own state and two uniform variates per step.

use crate::error::{Result, SwarmError};
use crate::habitat::{CanvasField, Cell, Direction};
use crate::rng::CounterRng;

/// Heading-relative movement weights indexed by turn size:
/// `[0, ±45, ±90, ±135, 180]` degrees.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InertiaTable(pub [f64; 5]);

impl InertiaTable {
    pub const UNIFORM: InertiaTable = InertiaTable([1.0; 5]);

    /// Weight for turning `steps` eighths of a revolution clockwise.
    #[inline]
    pub fn weight(&self, steps: usize) -> f64 {
        let k = steps % 8;
        self.0[k.min(8 - k)]
    }

    pub fn validate(&self) -> Result<()> {
        if self.0.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(SwarmError::param(
                "inertia",
                "weights must be finite and >= 0",
            ));
        }
        if self.0.iter().sum::<f64>() <= 0.0 {
            return Err(SwarmError::param(
                "inertia",
                "at least one weight must be positive",
            ));
        }
        Ok(())
    }
}

impl Default for InertiaTable {
    fn default() -> Self {
        InertiaTable([6.0, 3.0, 1.0, 0.3, 0.1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BehaviorParams {
    /// Response threshold given to every agent at initialization.
    pub theta: f64,
    /// Response exponent.
    pub n: f64,
    /// Spontaneous deposit probability.
    pub p0: f64,
    /// Ink laid per deposit event.
    pub q_amount: f64,
    pub beta: f64,
    pub delta: f64,
    pub w_own: f64,
    pub w_other: f64,
    pub inertia: InertiaTable,
}

impl Default for BehaviorParams {
    fn default() -> Self {
        BehaviorParams {
            theta: 0.2,
            n: 2.0,
            p0: 0.001,
            q_amount: 1.0,
            beta: 3.5,
            delta: 0.2,
            w_own: 1.0,
            w_other: 0.5,
            inertia: InertiaTable::default(),
        }
    }
}

impl BehaviorParams {
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(SwarmError::param(name, "must be finite"))
            }
        };
        finite("theta", self.theta)?;
        finite("n", self.n)?;
        finite("p0", self.p0)?;
        finite("q_amount", self.q_amount)?;
        finite("beta", self.beta)?;
        finite("delta", self.delta)?;
        finite("w_own", self.w_own)?;
        finite("w_other", self.w_other)?;
        if !(self.theta > 0.0 && (self.theta as f32) > 0.0 && (self.theta as f32).is_finite()) {
            return Err(SwarmError::param(
                "theta",
                "must be > 0 and representable as f32",
            ));
        }
        if self.n < 1.0 {
            return Err(SwarmError::param("n", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.p0) {
            return Err(SwarmError::param("p0", "must lie in [0,1]"));
        }
        if self.q_amount <= 0.0 {
            return Err(SwarmError::param("q_amount", "must be > 0"));
        }
        if self.beta < 0.0 {
            return Err(SwarmError::param("beta", "must be >= 0"));
        }
        if self.delta < 0.0 {
            return Err(SwarmError::param("delta", "must be >= 0"));
        }
        self.inertia.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AgentState {
    pub id: usize,
    pub pos: Cell,
    pub heading: Direction,
    pub channel: usize,
    /// Stored at single precision so snapshots round-trip exactly.
    pub theta: f32,
    pub steps_since_deposit: u32,
}

impl AgentState {
    pub fn validate(&self, field: &CanvasField) -> Result<()> {
        if !field.contains(self.pos) {
            return Err(SwarmError::OutOfBounds {
                x: self.pos.x,
                y: self.pos.y,
                width: field.width(),
                height: field.height(),
            });
        }
        if self.channel >= field.channels() {
            return Err(SwarmError::BadChannel {
                channel: self.channel,
                channels: field.channels(),
            });
        }
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return Err(SwarmError::param("theta", "must be finite and > 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepositEvent {
    pub cell: Cell,
    pub channel: usize,
    pub amount: f64,
}

/// Weighted combination of the sensed channel means, clamped at zero.
pub fn perceived_stimulus(stimulus: &[f64], own_channel: usize, w_own: f64, w_other: f64) -> f64 {
    debug_assert!(own_channel < stimulus.len());
    let own = stimulus[own_channel];
    let others: f64 = stimulus
        .iter()
        .enumerate()
        .filter(|(c, _)| *c != own_channel)
        .map(|(_, v)| *v)
        .sum();
    (w_own * own + w_other * others).max(0.0)
}

/// Response-threshold deposit probability
/// `p0 + (1 - p0) s^n / (s^n + theta^n)`.
///
/// Evaluated through the ratio `s / theta`, which keeps the result invariant
/// under joint rescaling of `s` and `theta` and avoids overflow for large
/// stimuli.
pub fn deposit_probability(s: f64, theta: f64, n: f64, p0: f64) -> f64 {
    debug_assert!(theta > 0.0 && n >= 1.0 && (0.0..=1.0).contains(&p0));
    if s <= 0.0 {
        return p0;
    }
    let ratio = s / theta;
    let response = if ratio <= 1.0 {
        let r = pow(ratio, n);
        r / (r + 1.0)
    } else {
        1.0 / (1.0 + pow(ratio.recip(), n))
    };
    p0 + (1.0 - p0) * response
}

/// Movement attraction of a cell with perceived stimulus `sigma`:
/// `(1 + sigma / (1 + delta sigma))^beta`.
pub fn movement_weight(sigma: f64, beta: f64, delta: f64) -> f64 {
    debug_assert!(sigma >= 0.0 && beta >= 0.0 && delta >= 0.0);
    pow(1.0 + sigma / (1.0 + delta * sigma), beta)
}

#[inline]
fn pow(x: f64, e: f64) -> f64 {
    if e == e.trunc() && e.abs() <= i32::MAX as f64 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// Probability of moving to one neighbor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoveOption {
    pub direction: Direction,
    pub cell: Cell,
    pub probability: f64,
}

/// Unnormalized masses over the eight compass neighbors; `None` where the
/// neighbor is off-canvas.
fn movement_masses(
    agent: &AgentState,
    field: &CanvasField,
    params: &BehaviorParams,
) -> [Option<(Cell, f64)>; 8] {
    let mut out = [None; 8];
    let mut stim = vec![0.0; field.channels()];
    for dir in Direction::ALL {
        if let Some(cell) = field.step_from(agent.pos, dir) {
            field.sense_into(cell, &mut stim);
            let s = perceived_stimulus(&stim, agent.channel, params.w_own, params.w_other);
            let mass = movement_weight(s, params.beta, params.delta)
                * params.inertia.weight(agent.heading.turn_steps(dir));
            out[dir.index()] = Some((cell, mass));
        }
    }
    out
}

fn normalize(masses: [Option<(Cell, f64)>; 8]) -> Vec<MoveOption> {
    let total: f64 = masses.iter().flatten().map(|(_, m)| *m).sum();
    let valid = masses.iter().flatten().count();
    Direction::ALL
        .iter()
        .zip(masses)
        .filter_map(|(dir, m)| {
            m.map(|(cell, mass)| MoveOption {
                direction: *dir,
                cell,
                probability: if total > 0.0 {
                    mass / total
                } else {
                    1.0 / valid as f64
                },
            })
        })
        .collect()
}

/// Probability of moving to each valid Moore neighbor (center excluded), in
/// compass order. Empty only when the canvas offers no neighbor at all
/// (a 1x1 bounded field).
pub fn movement_distribution(
    agent: &AgentState,
    field: &CanvasField,
    params: &BehaviorParams,
) -> Result<Vec<MoveOption>> {
    if !field.contains(agent.pos) {
        return Err(SwarmError::OutOfBounds {
            x: agent.pos.x,
            y: agent.pos.y,
            width: field.width(),
            height: field.height(),
        });
    }
    Ok(normalize(movement_masses(agent, field, params)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepOutcome {
    pub agent: AgentState,
    pub deposit: Option<DepositEvent>,
}

/// One agent decision driven by explicit variates: `u_deposit` decides the
/// deposit, `u_move` samples the movement distribution by cumulative
/// inversion in compass order.
pub fn agent_step_with(
    agent: &AgentState,
    field: &CanvasField,
    params: &BehaviorParams,
    u_deposit: f64,
    u_move: f64,
) -> StepOutcome {
    let mut next = *agent;

    let stim = field.sense(agent.pos).expect("agent position in bounds");
    let s = perceived_stimulus(&stim, agent.channel, params.w_own, params.w_other);
    let p = deposit_probability(s, agent.theta as f64, params.n, params.p0);
    let deposit = if u_deposit < p {
        next.steps_since_deposit = 0;
        Some(DepositEvent {
            cell: agent.pos,
            channel: agent.channel,
            amount: params.q_amount,
        })
    } else {
        next.steps_since_deposit = next.steps_since_deposit.saturating_add(1);
        None
    };

    let options = normalize(movement_masses(agent, field, params));
    if let Some(choice) = sample(&options, u_move) {
        next.pos = choice.cell;
        next.heading = choice.direction;
    }
    StepOutcome {
        agent: next,
        deposit,
    }
}

fn sample(options: &[MoveOption], u: f64) -> Option<&MoveOption> {
    let mut cumulative = 0.0;
    for opt in options {
        cumulative += opt.probability;
        if u < cumulative {
            return Some(opt);
        }
    }
    // Rounding can leave the cumulative sum a hair below 1.
    options.iter().rev().find(|o| o.probability > 0.0)
}

/// Advance one agent, consuming exactly two variates from `rng`.
pub fn agent_step(
    agent: &AgentState,
    field: &CanvasField,
    params: &BehaviorParams,
    rng: &mut CounterRng,
) -> StepOutcome {
    let u_deposit = rng.next_uniform();
    let u_move = rng.next_uniform();
    agent_step_with(agent, field, params, u_deposit, u_move)
}
