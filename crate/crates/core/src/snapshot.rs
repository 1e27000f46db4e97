//! Versioned binary snapshots of a [`WorldState`].
//!
//! All integers and floats are little-endian. Layout (version 1):
//!
//! | bytes            | content                                              |
//! |------------------|------------------------------------------------------|
//! | 4                | magic `SWRM`                                         |
//! | 2                | format version (u16)                                 |
//! | 4 + n            | parameters: u32 length, then the canonical config    |
//! | 8                | tick (u64)                                           |
//! | 16               | rng seed (u64), rng counter (u64)                    |
//! | 8·W·H·C          | live field, f64, row-major `(y, x, c)`               |
//! | 8·W·H·C          | ink accumulator, f64, same order                     |
//! | 8·C              | deposit events per channel (u64)                     |
//! | 4                | agent count (u32)                                    |
//! | 19 per agent     | x u32, y u32, heading u8, channel u16, theta f32, steps_since_deposit u32 |
//! | 8                | FNV-1a 64 of every preceding byte                    |

use crate::agents::AgentState;
use crate::config::{parse_config, serialize_config};
use crate::engine::WorldState;
use crate::error::{Result, SwarmError};
use crate::habitat::{CanvasField, Cell, Direction};
use crate::rng::CounterRng;

pub const MAGIC: &[u8; 4] = b"SWRM";
pub const VERSION: u16 = 1;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, b| (h ^ *b as u64).wrapping_mul(FNV_PRIME))
}

pub fn encode(world: &WorldState) -> Vec<u8> {
    let field = world.field();
    let mut out = Vec::with_capacity(64 + field.values().len() * 16 + world.agents().len() * 19);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let params = serialize_config(world.params());
    out.extend_from_slice(&(params.len() as u32).to_le_bytes());
    out.extend_from_slice(params.as_bytes());
    out.extend_from_slice(&world.tick().to_le_bytes());
    out.extend_from_slice(&world.rng().seed().to_le_bytes());
    out.extend_from_slice(&world.rng().counter().to_le_bytes());
    for v in field.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in world.ink() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for n in world.deposit_events() {
        out.extend_from_slice(&n.to_le_bytes());
    }
    out.extend_from_slice(&(world.agents().len() as u32).to_le_bytes());
    for a in world.agents() {
        out.extend_from_slice(&(a.pos.x as u32).to_le_bytes());
        out.extend_from_slice(&(a.pos.y as u32).to_le_bytes());
        out.push(a.heading as u8);
        out.extend_from_slice(&(a.channel as u16).to_le_bytes());
        out.extend_from_slice(&a.theta.to_le_bytes());
        out.extend_from_slice(&a.steps_since_deposit.to_le_bytes());
    }
    let sum = fnv1a64(&out);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

/// Checksum stored in the trailer of `encode(world)`.
pub fn hash(world: &WorldState) -> u64 {
    let bytes = encode(world);
    u64::from_le_bytes(bytes[bytes.len() - 8..].try_into().expect("8 bytes"))
}

fn corrupt(msg: impl Into<String>) -> SwarmError {
    SwarmError::Snapshot(msg.into())
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| corrupt("truncated"))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.array::<1>()?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.array()?))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.array()?))
    }

    fn f32(&mut self) -> Result<f32> {
        Ok(f32::from_le_bytes(self.array()?))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>> {
        let bytes = self.take(n.checked_mul(8).ok_or_else(|| corrupt("size overflow"))?)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect())
    }
}

/// Restore a world, rejecting bad magic, unknown versions, checksum
/// mismatches and structurally invalid content.
pub fn decode(bytes: &[u8]) -> Result<WorldState> {
    if bytes.len() < MAGIC.len() + 2 + 8 {
        return Err(corrupt("truncated"));
    }
    if &bytes[..4] != MAGIC {
        return Err(corrupt("bad magic"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(corrupt(format!(
            "unsupported version {version} (expected {VERSION})"
        )));
    }
    let (body, trailer) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(trailer.try_into().expect("8 bytes"));
    let actual = fnv1a64(body);
    if stored != actual {
        return Err(corrupt(format!(
            "checksum mismatch (stored {stored:016x}, computed {actual:016x})"
        )));
    }

    let mut r = Reader { buf: body, pos: 6 };
    let plen = r.u32()? as usize;
    let text =
        std::str::from_utf8(r.take(plen)?).map_err(|_| corrupt("parameters are not UTF-8"))?;
    let params = parse_config(text).map_err(|e| corrupt(format!("parameters: {e}")))?;
    let tick = r.u64()?;
    let seed = r.u64()?;
    let counter = r.u64()?;

    let mut field = CanvasField::new(
        params.width,
        params.height,
        params.channels,
        params.boundary,
    )?
    .with_limits(params.saturation, params.floor)?;
    let len = field.values().len();
    field
        .set_values(&r.f64s(len)?)
        .map_err(|e| corrupt(format!("field: {e}")))?;
    let ink = r.f64s(len)?;
    if ink.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(corrupt("ink layer holds an invalid value"));
    }
    let deposit_events = (0..params.channels)
        .map(|_| r.u64())
        .collect::<Result<Vec<_>>>()?;

    let count = r.u32()? as usize;
    if count != params.agent_count {
        return Err(corrupt(format!(
            "roster holds {count} agents, parameters say {}",
            params.agent_count
        )));
    }
    let mut agents = Vec::with_capacity(count);
    for id in 0..count {
        let x = r.u32()? as usize;
        let y = r.u32()? as usize;
        let heading = Direction::from_index(r.u8()? as usize)
            .ok_or_else(|| corrupt(format!("agent {id}: bad heading")))?;
        let channel = r.u16()? as usize;
        let theta = r.f32()?;
        let steps_since_deposit = r.u32()?;
        let agent = AgentState {
            id,
            pos: Cell::new(x, y),
            heading,
            channel,
            theta,
            steps_since_deposit,
        };
        agent
            .validate(&field)
            .map_err(|e| corrupt(format!("agent {id}: {e}")))?;
        agents.push(agent);
    }
    if r.pos != body.len() {
        return Err(corrupt(format!("{} trailing bytes", body.len() - r.pos)));
    }

    Ok(WorldState {
        params,
        field,
        ink,
        agents,
        tick,
        rng: CounterRng::from_state(seed, counter),
        deposit_events,
    })
}
