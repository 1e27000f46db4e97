//! Independent oracles shared by the integration suites. Nothing here calls
//! into the engine code paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense `cells x cells` diffusion operator, `m[dst][src]`, built cell by
/// cell from the kernel definition.
pub fn diffusion_matrix(w: usize, h: usize, toroidal: bool, lambda: f64) -> Vec<Vec<f64>> {
    let n = w * h;
    let mut m = vec![vec![0.0; n]; n];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let src = (y * w as i64 + x) as usize;
            m[src][src] += 1.0 - lambda;
            for (dx, dy) in [(0i64, -1i64), (1, 0), (0, 1), (-1, 0)] {
                let (mut nx, mut ny) = (x + dx, y + dy);
                let inside = nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64;
                let dst = if inside {
                    (ny * w as i64 + nx) as usize
                } else if toroidal {
                    nx = (nx + w as i64) % w as i64;
                    ny = (ny + h as i64) % h as i64;
                    (ny * w as i64 + nx) as usize
                } else {
                    src
                };
                m[dst][src] += lambda / 4.0;
            }
        }
    }
    m
}

/// Apply the dense operator to every channel of a `(y, x, c)` layer.
pub fn apply_matrix(m: &[Vec<f64>], values: &[f64], channels: usize) -> Vec<f64> {
    let n = m.len();
    let mut out = vec![0.0; values.len()];
    for c in 0..channels {
        for dst in 0..n {
            let mut acc = 0.0;
            for src in 0..n {
                acc += m[dst][src] * values[src * channels + c];
            }
            out[dst * channels + c] = acc;
        }
    }
    out
}

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn rpow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Local configuration for the exact movement oracle.
pub struct LocalCase {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub toroidal: bool,
    pub values: Vec<f64>,
    pub x: usize,
    pub y: usize,
    /// 0 = N, then clockwise.
    pub heading: usize,
    pub own: usize,
    pub beta: u32,
    pub delta: f64,
    pub w_own: f64,
    pub w_other: f64,
    pub inertia: [f64; 5],
}

const COMPASS: [(i64, i64); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];

impl LocalCase {
    fn wrap(&self, x: i64, y: i64) -> Option<(usize, usize)> {
        let (w, h) = (self.width as i64, self.height as i64);
        if x >= 0 && y >= 0 && x < w && y < h {
            Some((x as usize, y as usize))
        } else if self.toroidal {
            Some((x.rem_euclid(w) as usize, y.rem_euclid(h) as usize))
        } else {
            None
        }
    }

    fn exact_sense(&self, x: usize, y: usize) -> Vec<BigRational> {
        let mut sums = vec![BigRational::zero(); self.channels];
        let mut count = 0i64;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if let Some((nx, ny)) = self.wrap(x as i64 + dx, y as i64 + dy) {
                    for (c, s) in sums.iter_mut().enumerate() {
                        *s += rational(self.values[(ny * self.width + nx) * self.channels + c]);
                    }
                    count += 1;
                }
            }
        }
        let k = BigRational::from_integer(BigInt::from(count));
        sums.into_iter().map(|s| s / &k).collect()
    }

    /// Exact movement probabilities per compass direction; `None` where the
    /// neighbor is off-canvas.
    pub fn exact_distribution(&self) -> Vec<Option<BigRational>> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut masses = Vec::new();
        for (d, (dx, dy)) in COMPASS.iter().enumerate() {
            let Some((nx, ny)) = self.wrap(self.x as i64 + dx, self.y as i64 + dy) else {
                masses.push(None);
                continue;
            };
            let sense = self.exact_sense(nx, ny);
            let mut s = rational(self.w_own) * &sense[self.own];
            for (c, v) in sense.iter().enumerate() {
                if c != self.own {
                    s += rational(self.w_other) * v;
                }
            }
            if s.is_negative() {
                s = zero.clone();
            }
            let base = &one + &s / (&one + rational(self.delta) * &s);
            let turn = (d + 8 - self.heading) % 8;
            let inertia = rational(self.inertia[turn.min(8 - turn)]);
            masses.push(Some(rpow(&base, self.beta) * inertia));
        }
        let total: BigRational = masses.iter().flatten().fold(zero.clone(), |a, m| a + m);
        let valid = masses.iter().flatten().count();
        masses
            .into_iter()
            .map(|m| {
                m.map(|m| {
                    if total.is_zero() {
                        BigRational::new(BigInt::one(), BigInt::from(valid))
                    } else {
                        m / &total
                    }
                })
            })
            .collect()
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).expect("representable")
}

/// Brute-force local similarity: straight nested loops over cells and the
/// 3x3 window.
pub fn brute_similarity(
    values: &[f64],
    w: usize,
    h: usize,
    c: usize,
    toroidal: bool,
) -> Option<f64> {
    let at = |x: usize, y: usize| &values[(y * w + x) * c..(y * w + x + 1) * c];
    let mass = |v: &[f64]| v.iter().sum::<f64>();
    let mut total = 0.0;
    let mut cells = 0;
    for y in 0..h {
        for x in 0..w {
            let me = at(x, y);
            if mass(me) <= 0.0 {
                continue;
            }
            cells += 1;
            let mut mean = vec![0.0; c];
            let mut k = 0.0;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (mut nx, mut ny) = (x as i64 + dx, y as i64 + dy);
                    if toroidal {
                        nx = nx.rem_euclid(w as i64);
                        ny = ny.rem_euclid(h as i64);
                    } else if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let n = at(nx as usize, ny as usize);
                    if mass(n) > 0.0 {
                        for i in 0..c {
                            mean[i] += n[i];
                        }
                        k += 1.0;
                    }
                }
            }
            if k == 0.0 {
                continue;
            }
            let mut dot = 0.0;
            let mut a2 = 0.0;
            let mut b2 = 0.0;
            for i in 0..c {
                let b = mean[i] / k;
                dot += me[i] * b;
                a2 += me[i] * me[i];
                b2 += b * b;
            }
            total += dot / (a2.sqrt() * b2.sqrt());
        }
    }
    (cells > 0).then(|| total / cells as f64)
}

/// Strict binary PPM reader: `P6`, single-space/newline separated header,
/// maxval 255, exactly `3 w h` payload bytes.
pub fn strict_ppm(bytes: &[u8]) -> Result<(usize, usize, &[u8]), String> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == start || pos >= bytes.len() {
            return Err("truncated header".into());
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|e| e.to_string())?);
        pos += 1; // exactly one whitespace byte
    }
    if fields[0] != "P6" {
        return Err(format!("bad magic {}", fields[0]));
    }
    let w: usize = fields[1].parse().map_err(|_| "bad width")?;
    let h: usize = fields[2].parse().map_err(|_| "bad height")?;
    if fields[3] != "255" {
        return Err("maxval must be 255".into());
    }
    let body = &bytes[pos..];
    if body.len() != 3 * w * h {
        return Err(format!(
            "payload {} bytes, expected {}",
            body.len(),
            3 * w * h
        ));
    }
    Ok((w, h, body))
}
