//! Line-based `key = value` configuration.
//!
//! ```text
//! # comments start with '#'
//! field.width = 256
//! dynamics.rho = 0.02
//! palette.channel0 = 255, 64, 0
//! ```
//!
//! Unknown or repeated keys are errors. Missing keys keep their defaults.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::agents::InertiaTable;
use crate::engine::SimParams;
use crate::error::{Result, SwarmError};
use crate::render::Rgb;

const KEYS: &[&str] = &[
    "field.width",
    "field.height",
    "field.channels",
    "field.boundary",
    "agents.count",
    "agents.max",
    "behavior.theta",
    "behavior.n",
    "behavior.p0",
    "behavior.q_amount",
    "behavior.beta",
    "behavior.delta",
    "behavior.w_own",
    "behavior.w_other",
    "behavior.inertia",
    "dynamics.rho",
    "dynamics.lambda",
    "dynamics.saturation",
    "dynamics.floor",
    "run.seed",
    "run.ticks",
    "render.permanent",
    "render.exposure",
    "render.background",
    "metrics.every",
    "metrics.coverage_threshold",
];

fn is_known(key: &str) -> bool {
    KEYS.contains(&key) || palette_index(key).is_some()
}

fn palette_index(key: &str) -> Option<usize> {
    let digits = key.strip_prefix("palette.channel")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

struct Entry<'a> {
    line: usize,
    value: &'a str,
}

/// Parse and fully validate a configuration document.
pub fn parse_config(text: &str) -> Result<SimParams> {
    let mut entries: HashMap<&str, Entry<'_>> = HashMap::new();
    let mut order = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| SwarmError::Config {
            line,
            key: content.to_string(),
            reason: "expected `key = value`".into(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(config_err(line, key, "empty key"));
        }
        if !is_known(key) {
            return Err(config_err(line, key, "unknown key"));
        }
        if let Some(prev) = entries.get(key) {
            return Err(config_err(
                line,
                key,
                format!("duplicate key (first set on line {})", prev.line),
            ));
        }
        entries.insert(key, Entry { line, value });
        order.push(key);
    }

    let mut p = SimParams::default();
    // The channel count decides the palette length, so it goes first.
    if let Some(e) = entries.get("field.channels") {
        let c: usize = parse_num(e, "field.channels")?;
        if !(1..=u16::MAX as usize).contains(&c) {
            return Err(config_err(
                e.line,
                "field.channels",
                "must lie in [1, 65535]",
            ));
        }
        p = p.with_channels(c);
    }
    for key in order {
        let e = &entries[key];
        apply(&mut p, key, e.value).map_err(|reason| config_err(e.line, key, reason))?;
    }

    p.validate().map_err(|err| {
        let key = match &err {
            SwarmError::Resource(_) => "agents.count",
            SwarmError::Parameter { name, .. } => match *name {
                "height" => "field.height",
                "channels" => "field.channels",
                "saturation" => "dynamics.saturation",
                "floor" => "dynamics.floor",
                _ => "field.width",
            },
            _ => "",
        };
        let line = entries.get(key).map_or(0, |e| e.line);
        config_err(line, key, err.to_string())
    })?;
    Ok(p)
}

fn config_err(line: usize, key: &str, reason: impl Into<String>) -> SwarmError {
    SwarmError::Config {
        line,
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(e: &Entry<'_>, key: &str) -> Result<T> {
    e.value
        .parse()
        .map_err(|_| config_err(e.line, key, format!("cannot parse `{}`", e.value)))
}

fn num<T: std::str::FromStr>(v: &str) -> std::result::Result<T, String> {
    v.parse().map_err(|_| format!("cannot parse `{v}`"))
}

fn real(v: &str) -> std::result::Result<f64, String> {
    let x: f64 = num(v)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{v}` is not finite"))
    }
}

fn ranged(v: &str, lo: f64, hi: f64) -> std::result::Result<f64, String> {
    let x = real(v)?;
    if (lo..=hi).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} outside [{lo},{hi}]"))
    }
}

fn positive(v: &str) -> std::result::Result<f64, String> {
    let x = real(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be > 0"))
    }
}

fn non_negative(v: &str) -> std::result::Result<f64, String> {
    let x = real(v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be >= 0"))
    }
}

fn apply(p: &mut SimParams, key: &str, v: &str) -> std::result::Result<(), String> {
    let b = &mut p.behavior;
    match key {
        "field.width" => p.width = at_least_one(num(v)?)?,
        "field.height" => p.height = at_least_one(num(v)?)?,
        "field.channels" => {}
        "field.boundary" => p.boundary = v.parse()?,
        "agents.count" => p.agent_count = num(v)?,
        "agents.max" => p.max_agents = num(v)?,
        "behavior.theta" => {
            let t = positive(v)?;
            if (t as f32) <= 0.0 || !(t as f32).is_finite() {
                return Err(format!("{t} is not representable at single precision"));
            }
            b.theta = t;
        }
        "behavior.n" => {
            let n = real(v)?;
            if n < 1.0 {
                return Err(format!("{n} must be >= 1"));
            }
            b.n = n;
        }
        "behavior.p0" => b.p0 = ranged(v, 0.0, 1.0)?,
        "behavior.q_amount" => b.q_amount = positive(v)?,
        "behavior.beta" => b.beta = non_negative(v)?,
        "behavior.delta" => b.delta = non_negative(v)?,
        "behavior.w_own" => b.w_own = real(v)?,
        "behavior.w_other" => b.w_other = real(v)?,
        "behavior.inertia" => {
            let ws: Vec<f64> = v
                .split(',')
                .map(|s| non_negative(s.trim()))
                .collect::<std::result::Result<_, _>>()?;
            let table: [f64; 5] = ws.try_into().map_err(|_| {
                "expected 5 weights for turns of 0, 45, 90, 135, 180 degrees".to_string()
            })?;
            let table = InertiaTable(table);
            table.validate().map_err(|e| e.to_string())?;
            b.inertia = table;
        }
        "dynamics.rho" => p.rho = ranged(v, 0.0, 1.0)?,
        "dynamics.lambda" => p.lambda = ranged(v, 0.0, 1.0)?,
        "dynamics.saturation" => p.saturation = positive(v)?,
        "dynamics.floor" => p.floor = non_negative(v)?,
        "run.seed" => p.seed = num(v)?,
        "run.ticks" => p.ticks = num(v)?,
        "render.permanent" => p.permanent = num(v)?,
        "render.exposure" => p.palette.exposure = positive(v)?,
        "render.background" => p.palette.background = v.parse()?,
        "metrics.every" => {
            let every: u64 = num(v)?;
            if every == 0 {
                return Err("must be >= 1".into());
            }
            p.metrics_every = every;
        }
        "metrics.coverage_threshold" => p.coverage_threshold = non_negative(v)?,
        _ => {
            let idx = palette_index(key).ok_or("unknown key")?;
            if idx >= p.channels {
                return Err(format!(
                    "channel {idx} does not exist ({} channels)",
                    p.channels
                ));
            }
            p.palette.colors[idx] = v.parse::<Rgb>()?;
        }
    }
    Ok(())
}

fn at_least_one(n: usize) -> std::result::Result<usize, String> {
    if n >= 1 {
        Ok(n)
    } else {
        Err("must be >= 1".into())
    }
}

/// Write every key in canonical order. `parse_config` of the output yields
/// the same parameters.
pub fn serialize_config(p: &SimParams) -> String {
    let b = &p.behavior;
    let mut s = String::new();
    let mut put = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    put("field.width", p.width.to_string());
    put("field.height", p.height.to_string());
    put("field.channels", p.channels.to_string());
    put("field.boundary", p.boundary.as_str().to_string());
    put("agents.count", p.agent_count.to_string());
    put("agents.max", p.max_agents.to_string());
    put("behavior.theta", format!("{:?}", b.theta));
    put("behavior.n", format!("{:?}", b.n));
    put("behavior.p0", format!("{:?}", b.p0));
    put("behavior.q_amount", format!("{:?}", b.q_amount));
    put("behavior.beta", format!("{:?}", b.beta));
    put("behavior.delta", format!("{:?}", b.delta));
    put("behavior.w_own", format!("{:?}", b.w_own));
    put("behavior.w_other", format!("{:?}", b.w_other));
    put(
        "behavior.inertia",
        b.inertia
            .0
            .iter()
            .map(|w| format!("{w:?}"))
            .collect::<Vec<_>>()
            .join(", "),
    );
    put("dynamics.rho", format!("{:?}", p.rho));
    put("dynamics.lambda", format!("{:?}", p.lambda));
    put("dynamics.saturation", format!("{:?}", p.saturation));
    put("dynamics.floor", format!("{:?}", p.floor));
    put("run.seed", p.seed.to_string());
    put("run.ticks", p.ticks.to_string());
    put("render.permanent", p.permanent.to_string());
    put("render.exposure", format!("{:?}", p.palette.exposure));
    put("render.background", p.palette.background.to_string());
    for (i, c) in p.palette.colors.iter().enumerate() {
        put(&format!("palette.channel{i}"), c.to_string());
    }
    put("metrics.every", p.metrics_every.to_string());
    put(
        "metrics.coverage_threshold",
        format!("{:?}", p.coverage_threshold),
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::BehaviorParams;
    use crate::habitat::Boundary;
    use proptest::prelude::*;

    #[test]
    fn empty_document_is_default() {
        assert_eq!(parse_config("").unwrap(), SimParams::default());
        assert_eq!(
            parse_config("# nothing\n\n   \n").unwrap(),
            SimParams::default()
        );
    }

    #[test]
    fn rho_out_of_range() {
        let err = parse_config("\ndynamics.rho = 1.5\n").unwrap_err();
        match err {
            SwarmError::Config { line, key, reason } => {
                assert_eq!(line, 2);
                assert_eq!(key, "dynamics.rho");
                assert!(reason.contains("[0,1]"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_name_line_and_key() {
        let cases = [
            ("field.widht = 3", 1, "field.widht"),
            ("run.seed = 1\nrun.seed = 2", 2, "run.seed"),
            ("behavior.p0", 1, "behavior.p0"),
            ("field.width = 0", 1, "field.width"),
            ("behavior.inertia = 1, 2", 1, "behavior.inertia"),
            ("behavior.inertia = 0, 0, 0, 0, 0", 1, "behavior.inertia"),
            ("palette.channel3 = 1, 2, 3", 1, "palette.channel3"),
            ("field.boundary = square", 1, "field.boundary"),
            ("x\nagents.max = 5\nagents.count = 6", 1, "x"),
            ("agents.max = 5\nagents.count = 6", 2, "agents.count"),
            (
                "field.width = 100000\nfield.height = 100000",
                1,
                "field.width",
            ),
            ("behavior.theta = -1", 1, "behavior.theta"),
        ];
        for (doc, want_line, want_key) in cases {
            match parse_config(doc) {
                Err(SwarmError::Config { line, key, .. }) => {
                    assert_eq!((line, key.as_str()), (want_line, want_key), "{doc}");
                }
                other => panic!("{doc}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_palette() {
        let doc =
            "field.channels = 2 # two inks\npalette.channel1 = 1, 2, 3\nfield.boundary = toroidal";
        let p = parse_config(doc).unwrap();
        assert_eq!(p.channels, 2);
        assert_eq!(p.palette.colors, vec![Rgb(255, 0, 0), Rgb(1, 2, 3)]);
        assert_eq!(p.boundary, Boundary::Toroidal);
    }

    #[test]
    fn default_round_trip() {
        let p = SimParams::default();
        assert_eq!(parse_config(&serialize_config(&p)).unwrap(), p);
    }

    fn arb_params() -> impl Strategy<Value = SimParams> {
        (
            (
                1usize..300,
                1usize..300,
                1usize..6,
                any::<bool>(),
                0usize..1000,
            ),
            (
                1e-3f64..50.0,
                1.0f64..5.0,
                0.0f64..=1.0,
                1e-3f64..5.0,
                0.0f64..6.0,
                0.0f64..3.0,
            ),
            (
                -2.0f64..2.0,
                -2.0f64..2.0,
                proptest::array::uniform5(0.01f64..10.0),
            ),
            (0.0f64..=1.0, 0.0f64..=1.0, 0.1f64..100.0, 0.0f64..1e-3),
            (
                any::<u64>(),
                0u64..100_000,
                any::<bool>(),
                0.01f64..5.0,
                1u64..1000,
                0.0f64..1.0,
            ),
            proptest::collection::vec(any::<(u8, u8, u8)>(), 6),
        )
            .prop_map(|(f, bh, w, d, r, colors)| {
                let mut p = SimParams::default().with_channels(f.2);
                p.width = f.0;
                p.height = f.1;
                p.boundary = if f.3 {
                    Boundary::Toroidal
                } else {
                    Boundary::Bounded
                };
                p.agent_count = f.4;
                p.behavior = BehaviorParams {
                    theta: bh.0 as f32 as f64,
                    n: bh.1,
                    p0: bh.2,
                    q_amount: bh.3,
                    beta: bh.4,
                    delta: bh.5,
                    w_own: w.0,
                    w_other: w.1,
                    inertia: InertiaTable(w.2),
                };
                p.rho = d.0;
                p.lambda = d.1;
                p.saturation = d.2;
                p.floor = d.3;
                p.seed = r.0;
                p.ticks = r.1;
                p.permanent = r.2;
                p.palette.exposure = r.3;
                p.metrics_every = r.4;
                p.coverage_threshold = r.5;
                for (slot, c) in p.palette.colors.iter_mut().zip(colors) {
                    *slot = Rgb(c.0, c.1, c.2);
                }
                p.palette.background = Rgb(colors_bg(f.4), 7, 9);
                p
            })
    }

    fn colors_bg(n: usize) -> u8 {
        (n % 256) as u8
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(p in arb_params()) {
            prop_assert!(p.validate().is_ok());
            let text = serialize_config(&p);
            prop_assert_eq!(parse_config(&text).unwrap(), p);
        }
    }
}
