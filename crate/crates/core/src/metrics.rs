//! Order statistics over the canvas and the uncoupled null model they are
//! compared against.

use crate::engine::{init_world, SimParams, WorldState};
use crate::error::{Result, SwarmError};
use crate::habitat::{CanvasField, Cell, Direction};

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub tick: u64,
    /// Bits, one per channel.
    pub spatial_entropy: Vec<f64>,
    /// `None` when the field is blank.
    pub local_similarity: Option<f64>,
    pub coverage: f64,
    pub total_mass: Vec<f64>,
    pub deposit_events: Vec<u64>,
}

/// Shannon entropy in bits of one channel's mass distribution over cells.
/// A channel with no mass gets the maximum, `log2(cells)`.
pub fn spatial_entropy(field: &CanvasField, channel: usize) -> Result<f64> {
    let total = field.total_mass(channel)?;
    let max = (field.cell_count() as f64).log2();
    if total <= 0.0 {
        return Ok(max);
    }
    let ch = field.channels();
    let h = -crate::habitat::neumaier(
        field
            .values()
            .iter()
            .skip(channel)
            .step_by(ch)
            .filter(|v| **v > 0.0)
            .map(|v| {
                let p = v / total;
                p * p.log2()
            }),
    );
    Ok(h.clamp(0.0, max))
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Mean cosine similarity between each painted cell's channel vector and the
/// mean vector of its painted Moore neighbors. Painted cells without painted
/// neighbors contribute 0.
pub fn local_similarity(field: &CanvasField) -> Result<f64> {
    let ch = field.channels();
    let painted = |c: Cell| field.cell_values(c).iter().sum::<f64>() > 0.0;
    let mut mean = vec![0.0; ch];
    let mut total = 0.0;
    let mut cells = 0usize;
    for y in 0..field.height() {
        for x in 0..field.width() {
            let here = Cell::new(x, y);
            if !painted(here) {
                continue;
            }
            cells += 1;
            mean.iter_mut().for_each(|m| *m = 0.0);
            let mut k = 0usize;
            for dir in Direction::ALL {
                if let Some(n) = field.step_from(here, dir).filter(|n| painted(*n)) {
                    for (m, v) in mean.iter_mut().zip(field.cell_values(n)) {
                        *m += v;
                    }
                    k += 1;
                }
            }
            if k > 0 {
                mean.iter_mut().for_each(|m| *m /= k as f64);
                total += cosine(field.cell_values(here), &mean);
            }
        }
    }
    if cells == 0 {
        return Err(SwarmError::Undefined("local similarity of a blank field"));
    }
    Ok(total / cells as f64)
}

/// Fraction of cells whose summed intensity exceeds `threshold`.
pub fn coverage(field: &CanvasField, threshold: f64) -> Result<f64> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(SwarmError::param("threshold", "must be >= 0"));
    }
    let covered = field
        .values()
        .chunks_exact(field.channels())
        .filter(|px| px.iter().sum::<f64>() > threshold)
        .count();
    Ok(covered as f64 / field.cell_count() as f64)
}

/// Metrics of the live field of `world`.
pub fn record(world: &WorldState) -> MetricsRecord {
    let field = world.field();
    MetricsRecord {
        tick: world.tick(),
        spatial_entropy: (0..field.channels())
            .map(|c| spatial_entropy(field, c).expect("channel in range"))
            .collect(),
        local_similarity: local_similarity(field).ok(),
        coverage: coverage(field, world.params().coverage_threshold).expect("validated threshold"),
        total_mass: field.channel_masses(),
        deposit_events: world.deposit_events().to_vec(),
    }
}

/// Run `params.ticks` ticks from a fresh world, sampling metrics at tick 0,
/// every `params.metrics_every` ticks and at the final tick.
pub fn run_series(params: &SimParams) -> Result<(WorldState, Vec<MetricsRecord>)> {
    let mut world = init_world(params)?;
    let mut series = vec![record(&world)];
    continue_series(&mut world, params.ticks, &mut series)?;
    Ok((world, series))
}

/// Advance `world` by `ticks`, appending sampled records to `series`.
pub fn continue_series(
    world: &mut WorldState,
    ticks: u64,
    series: &mut Vec<MetricsRecord>,
) -> Result<()> {
    let every = world.params().metrics_every;
    let last = world.tick() + ticks;
    world.run(ticks, |w| {
        if w.tick() % every == 0 || w.tick() == last {
            series.push(record(w));
        }
        Ok::<(), std::convert::Infallible>(())
    })
}

/// Mean per-agent, per-tick deposit frequency of a finished run.
pub fn deposit_rate(world: &WorldState) -> Option<f64> {
    let steps = world.agents().len() as f64 * world.tick() as f64;
    if steps == 0.0 {
        None
    } else {
        Some(world.deposit_events().iter().sum::<u64>() as f64 / steps)
    }
}

/// `params` with stigmergic coupling removed: agents ignore the field and
/// deposit at the fixed probability `rate`.
pub fn null_params(params: &SimParams, rate: f64) -> SimParams {
    let mut p = params.clone();
    p.behavior.w_own = 0.0;
    p.behavior.w_other = 0.0;
    p.behavior.p0 = rate.clamp(0.0, 1.0);
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullComparison {
    pub coupled: Vec<MetricsRecord>,
    pub null: Vec<MetricsRecord>,
    /// Empirical deposit frequency of the coupled run, used as the null
    /// model's fixed deposit probability.
    pub coupled_rate: f64,
    /// Realized deposit frequency of the null run.
    pub null_rate: f64,
    pub coupled_world: WorldState,
    pub null_world: WorldState,
}

/// Run the coupled model, then its null counterpart with the same seed and
/// an ink budget matched to the coupled run's deposit frequency.
pub fn null_model_run(params: &SimParams) -> Result<NullComparison> {
    let (coupled_world, coupled) = run_series(params)?;
    let coupled_rate = deposit_rate(&coupled_world).unwrap_or(params.behavior.p0);
    let (null_world, null) = run_series(&null_params(params, coupled_rate))?;
    let null_rate = deposit_rate(&null_world).unwrap_or(coupled_rate);
    Ok(NullComparison {
        coupled,
        null,
        coupled_rate,
        null_rate,
        coupled_world,
        null_world,
    })
}

/// `printf("%.9g")`-style formatting.
pub fn format_sig9(x: f64) -> String {
    const P: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Tab-separated metrics table with a header row.
pub fn metrics_table(series: &[MetricsRecord], channels: usize) -> String {
    let mut header = vec!["tick".to_string()];
    header.extend((0..channels).map(|c| format!("entropy_c{c}")));
    header.push("local_similarity".into());
    header.push("coverage".into());
    header.extend((0..channels).map(|c| format!("mass_c{c}")));
    header.extend((0..channels).map(|c| format!("deposits_c{c}")));
    let mut out = header.join("\t");
    out.push('\n');
    for r in series {
        out.push_str(&metrics_row(r));
        out.push('\n');
    }
    out
}

pub fn metrics_row(r: &MetricsRecord) -> String {
    let mut cols = vec![r.tick.to_string()];
    cols.extend(r.spatial_entropy.iter().map(|v| format_sig9(*v)));
    cols.push(format_sig9(r.local_similarity.unwrap_or(f64::NAN)));
    cols.push(format_sig9(r.coverage));
    cols.extend(r.total_mass.iter().map(|v| format_sig9(*v)));
    cols.extend(r.deposit_events.iter().map(|v| v.to_string()));
    cols.join("\t")
}
