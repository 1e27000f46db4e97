//! The canvas field: a `width x height x channels` grid of non-negative
//! intensities that agents paint into and sense from.
//!
//! Values are stored row-major in `(y, x, c)` order. Every mutating operation
//! keeps all values finite and `>= 0`.

use rayon::prelude::*;

use crate::error::{Result, SwarmError};

/// Upper bound on `width * height * channels`.
pub const MAX_FIELD_VALUES: usize = 1 << 28;

/// Default saturation cap applied by [`CanvasField::deposit`].
pub const DEFAULT_SATURATION: f64 = 10.0;

/// Default noise floor used by [`CanvasField::evaporate`].
pub const DEFAULT_FLOOR: f64 = 1e-6;

/// Fields smaller than this are updated on the calling thread.
const PARALLEL_MIN_VALUES: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    #[default]
    Bounded,
    Toroidal,
}

impl Boundary {
    pub fn as_str(self) -> &'static str {
        match self {
            Boundary::Bounded => "bounded",
            Boundary::Toroidal => "toroidal",
        }
    }
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bounded" => Ok(Boundary::Bounded),
            "toroidal" => Ok(Boundary::Toroidal),
            other => Err(format!("expected `bounded` or `toroidal`, got `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Cell { x, y }
    }
}

/// The eight compass directions, in the fixed enumeration order used for
/// neighbor iteration and movement sampling. North is `y - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Direction {
    N = 0,
    NE = 1,
    E = 2,
    SE = 3,
    S = 4,
    SW = 5,
    W = 6,
    NW = 7,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Direction> {
        Direction::ALL.get(i).copied()
    }

    pub fn offset(self) -> (isize, isize) {
        match self {
            Direction::N => (0, -1),
            Direction::NE => (1, -1),
            Direction::E => (1, 0),
            Direction::SE => (1, 1),
            Direction::S => (0, 1),
            Direction::SW => (-1, 1),
            Direction::W => (-1, 0),
            Direction::NW => (-1, -1),
        }
    }

    /// Number of 45 degree clockwise steps needed to turn from `self` to
    /// `to`, in `0..8`. 4 is a reversal.
    pub fn turn_steps(self, to: Direction) -> usize {
        (to.index() + 8 - self.index()) % 8
    }
}

/// The Moore neighborhood of a cell: the eight compass neighbors in
/// [`Direction::ALL`] order followed by the center. Off-canvas positions are
/// `None` under [`Boundary::Bounded`] and wrapped under [`Boundary::Toroidal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: Cell,
    pub cells: [Option<Cell>; 9],
}

impl Neighborhood {
    pub fn valid(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().flatten().copied()
    }

    pub fn valid_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn neighbor(&self, dir: Direction) -> Option<Cell> {
        self.cells[dir.index()]
    }
}

#[derive(Clone, Debug)]
pub struct CanvasField {
    width: usize,
    height: usize,
    channels: usize,
    boundary: Boundary,
    saturation: f64,
    floor: f64,
    values: Vec<f64>,
    scratch: Vec<f64>,
}

impl PartialEq for CanvasField {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.channels == other.channels
            && self.boundary == other.boundary
            && self.saturation.to_bits() == other.saturation.to_bits()
            && self.floor.to_bits() == other.floor.to_bits()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl CanvasField {
    /// A blank field with the default saturation cap and noise floor.
    pub fn new(width: usize, height: usize, channels: usize, boundary: Boundary) -> Result<Self> {
        for (name, v) in [("width", width), ("height", height), ("channels", channels)] {
            if v == 0 {
                return Err(SwarmError::param(name, "must be at least 1"));
            }
        }
        if width > u32::MAX as usize {
            return Err(SwarmError::param("width", "exceeds u32 range"));
        }
        if height > u32::MAX as usize {
            return Err(SwarmError::param("height", "exceeds u32 range"));
        }
        if channels > u16::MAX as usize {
            return Err(SwarmError::param("channels", "exceeds u16 range"));
        }
        let len = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .filter(|&n| n <= MAX_FIELD_VALUES)
            .ok_or_else(|| {
                SwarmError::param(
                    "width",
                    format!("{width}x{height}x{channels} exceeds {MAX_FIELD_VALUES} values"),
                )
            })?;
        Ok(CanvasField {
            width,
            height,
            channels,
            boundary,
            saturation: DEFAULT_SATURATION,
            floor: DEFAULT_FLOOR,
            values: vec![0.0; len],
            scratch: Vec::new(),
        })
    }

    /// Replace the saturation cap and noise floor.
    pub fn with_limits(mut self, saturation: f64, floor: f64) -> Result<Self> {
        if !(saturation.is_finite() && saturation > 0.0) {
            return Err(SwarmError::param("saturation", "must be finite and > 0"));
        }
        if !(floor.is_finite() && floor >= 0.0) {
            return Err(SwarmError::param("floor", "must be finite and >= 0"));
        }
        self.saturation = saturation;
        self.floor = floor;
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn saturation(&self) -> f64 {
        self.saturation
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn cell_count(&self) -> usize {
        self.width * self.height
    }

    /// All intensities in `(y, x, c)` row-major order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Overwrite every value. Used by snapshot restore and tests; rejects
    /// wrong lengths and negative or non-finite values.
    pub fn set_values(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.values.len() {
            return Err(SwarmError::param(
                "values",
                format!(
                    "expected {} values, got {}",
                    self.values.len(),
                    values.len()
                ),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(SwarmError::param(
                "values",
                format!("invalid intensity {bad}"),
            ));
        }
        self.values.copy_from_slice(values);
        Ok(())
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.x < self.width && cell.y < self.height
    }

    fn check_cell(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(SwarmError::OutOfBounds {
                x: cell.x,
                y: cell.y,
                width: self.width,
                height: self.height,
            })
        }
    }

    fn check_channel(&self, channel: usize) -> Result<()> {
        if channel < self.channels {
            Ok(())
        } else {
            Err(SwarmError::BadChannel {
                channel,
                channels: self.channels,
            })
        }
    }

    #[inline]
    fn offset(&self, cell: Cell) -> usize {
        (cell.y * self.width + cell.x) * self.channels
    }

    /// Intensity at `(cell, channel)`. Panics when out of range.
    #[inline]
    pub fn get(&self, cell: Cell, channel: usize) -> f64 {
        assert!(self.contains(cell) && channel < self.channels);
        self.values[self.offset(cell) + channel]
    }

    /// Channel vector of a single cell.
    #[inline]
    pub fn cell_values(&self, cell: Cell) -> &[f64] {
        let o = self.offset(cell);
        &self.values[o..o + self.channels]
    }

    /// The cell one step from `cell` in direction `dir`, wrapped or rejected
    /// according to the boundary mode.
    #[inline]
    pub fn step_from(&self, cell: Cell, dir: Direction) -> Option<Cell> {
        let (dx, dy) = dir.offset();
        let x = shift(cell.x, dx, self.width, self.boundary)?;
        let y = shift(cell.y, dy, self.height, self.boundary)?;
        Some(Cell { x, y })
    }

    pub fn neighborhood(&self, cell: Cell) -> Result<Neighborhood> {
        self.check_cell(cell)?;
        let mut cells = [None; 9];
        for dir in Direction::ALL {
            cells[dir.index()] = self.step_from(cell, dir);
        }
        cells[8] = Some(cell);
        Ok(Neighborhood {
            center: cell,
            cells,
        })
    }

    /// Add `amount` at `(cell, channel)`, clamping at the saturation cap.
    /// Returns the amount actually added.
    pub fn deposit(&mut self, cell: Cell, channel: usize, amount: f64) -> Result<f64> {
        self.check_cell(cell)?;
        self.check_channel(channel)?;
        if !(amount.is_finite() && amount >= 0.0) {
            return Err(SwarmError::param(
                "amount",
                format!("must be finite and >= 0, got {amount}"),
            ));
        }
        let i = self.offset(cell) + channel;
        let before = self.values[i];
        let after = (before + amount).min(self.saturation).max(before);
        self.values[i] = after;
        Ok(after - before)
    }

    /// Per-channel mean intensity over the valid Moore neighborhood of `cell`
    /// (center included).
    pub fn sense(&self, cell: Cell) -> Result<Vec<f64>> {
        self.check_cell(cell)?;
        let mut out = vec![0.0; self.channels];
        self.sense_into(cell, &mut out);
        Ok(out)
    }

    /// Allocation-free [`sense`](Self::sense) for in-bounds cells. `out` must
    /// have one slot per channel.
    pub fn sense_into(&self, cell: Cell, out: &mut [f64]) {
        debug_assert!(self.contains(cell));
        debug_assert_eq!(out.len(), self.channels);
        out.iter_mut().for_each(|v| *v = 0.0);
        let mut count = 0usize;
        let mut add = |c: Cell| {
            for (o, v) in out.iter_mut().zip(self.cell_values(c)) {
                *o += *v;
            }
            count += 1;
        };
        for dir in Direction::ALL {
            if let Some(n) = self.step_from(cell, dir) {
                add(n);
            }
        }
        add(cell);
        let inv = count as f64;
        out.iter_mut().for_each(|v| *v /= inv);
    }

    /// Multiply every value by `1 - rho`, flushing results below the noise
    /// floor to zero. `rho = 0` leaves the field untouched.
    pub fn evaporate(&mut self, rho: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(SwarmError::param(
                "rho",
                format!("must lie in [0,1], got {rho}"),
            ));
        }
        if rho == 0.0 {
            return Ok(());
        }
        let keep = 1.0 - rho;
        let floor = self.floor;
        let decay = |chunk: &mut [f64]| {
            for v in chunk {
                let next = *v * keep;
                *v = if next < floor { 0.0 } else { next };
            }
        };
        if self.values.len() < PARALLEL_MIN_VALUES {
            decay(&mut self.values);
        } else {
            let band = self.band_len();
            self.values.par_chunks_mut(band).for_each(decay);
        }
        Ok(())
    }

    /// Conservative von Neumann diffusion from a frozen copy of the field.
    ///
    /// Each cell keeps `(1 - lambda) v` and sends `lambda v / 4` toward each
    /// orthogonal neighbor. Under a bounded boundary the shares aimed off the
    /// canvas stay in the source cell.
    pub fn diffuse(&mut self, lambda: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(SwarmError::param(
                "lambda",
                format!("must lie in [0,1], got {lambda}"),
            ));
        }
        if lambda == 0.0 {
            return Ok(());
        }
        let mut frozen = std::mem::take(&mut self.scratch);
        frozen.clear();
        frozen.extend_from_slice(&self.values);

        let (w, h, ch) = (self.width, self.height, self.channels);
        let boundary = self.boundary;
        let keep = 1.0 - lambda;
        let share = lambda / 4.0;
        let row_len = w * ch;
        let frozen_ref = &frozen;

        let update_row = |(y, row): (usize, &mut [f64])| {
            let up = shift(y, -1, h, boundary).map(|r| &frozen_ref[r * row_len..(r + 1) * row_len]);
            let down =
                shift(y, 1, h, boundary).map(|r| &frozen_ref[r * row_len..(r + 1) * row_len]);
            let here = &frozen_ref[y * row_len..(y + 1) * row_len];
            for x in 0..w {
                let left = shift(x, -1, w, boundary);
                let right = shift(x, 1, w, boundary);
                for c in 0..ch {
                    let v = here[x * ch + c];
                    let n = up.map_or(v, |r| r[x * ch + c]);
                    let e = right.map_or(v, |xr| here[xr * ch + c]);
                    let s = down.map_or(v, |r| r[x * ch + c]);
                    let wv = left.map_or(v, |xl| here[xl * ch + c]);
                    row[x * ch + c] = keep * v + share * (n + e + s + wv);
                }
            }
        };
        if self.values.len() < PARALLEL_MIN_VALUES {
            self.values
                .chunks_mut(row_len)
                .enumerate()
                .for_each(update_row);
        } else {
            self.values
                .par_chunks_mut(row_len)
                .enumerate()
                .for_each(update_row);
        }

        self.scratch = frozen;
        Ok(())
    }

    /// Compensated (Neumaier) sum of one channel. Rows are summed
    /// independently and then combined in row order, so the result does not
    /// depend on how rows are scheduled.
    pub fn total_mass(&self, channel: usize) -> Result<f64> {
        self.check_channel(channel)?;
        let ch = self.channels;
        let row_sum = |row: &[f64]| neumaier(row.iter().skip(channel).step_by(ch).copied());
        let rows: Vec<f64> = if self.values.len() < PARALLEL_MIN_VALUES {
            self.values.chunks(self.width * ch).map(row_sum).collect()
        } else {
            self.values
                .par_chunks(self.width * ch)
                .map(row_sum)
                .collect()
        };
        Ok(neumaier(rows.into_iter()))
    }

    /// [`total_mass`](Self::total_mass) for every channel.
    pub fn channel_masses(&self) -> Vec<f64> {
        (0..self.channels)
            .map(|c| self.total_mass(c).expect("channel in range"))
            .collect()
    }

    fn band_len(&self) -> usize {
        // Roughly 64 rows per task.
        (self.width * self.channels * 64).max(1)
    }
}

#[inline]
fn shift(i: usize, d: isize, n: usize, boundary: Boundary) -> Option<usize> {
    let j = i as isize + d;
    if (0..n as isize).contains(&j) {
        Some(j as usize)
    } else {
        match boundary {
            Boundary::Bounded => None,
            Boundary::Toroidal => Some(j.rem_euclid(n as isize) as usize),
        }
    }
}

pub(crate) fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(w: usize, h: usize, c: usize, b: Boundary) -> CanvasField {
        CanvasField::new(w, h, c, b).unwrap()
    }

    #[test]
    fn new_field_is_blank() {
        let f = field(1, 1, 1, Boundary::Bounded);
        assert_eq!(f.values(), &[0.0]);
        let f = field(256, 256, 3, Boundary::Bounded);
        assert_eq!(f.values().len(), 256 * 256 * 3);
        assert!(f.values().iter().all(|v| *v == 0.0));
        let f = field(3, 3, 1, Boundary::Toroidal);
        assert_eq!(f.total_mass(0).unwrap(), 0.0);
    }

    #[test]
    fn new_field_rejects_bad_dimensions() {
        for (w, h, c, name) in [
            (0, 1, 1, "width"),
            (1, 0, 1, "height"),
            (1, 1, 0, "channels"),
        ] {
            match CanvasField::new(w, h, c, Boundary::Bounded) {
                Err(SwarmError::Parameter { name: n, .. }) => assert_eq!(n, name),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(CanvasField::new(1 << 20, 1 << 20, 1, Boundary::Bounded).is_err());
        assert!(CanvasField::new(usize::MAX, 2, 1, Boundary::Bounded).is_err());
    }

    #[test]
    fn deposit_adds_and_clamps() {
        let mut f = field(4, 4, 2, Boundary::Bounded);
        let c = Cell::new(1, 2);
        f.deposit(c, 1, 0.0).unwrap();
        assert!(f.values().iter().all(|v| *v == 0.0));
        f.deposit(c, 1, 1.0).unwrap();
        assert_eq!(f.get(c, 1), 1.0);
        assert_eq!(f.values().iter().filter(|v| **v != 0.0).count(), 1);

        let mut g = field(2, 2, 1, Boundary::Bounded);
        g.deposit(c00(), 0, 9.5).unwrap();
        let applied = g.deposit(c00(), 0, 1.0).unwrap();
        assert_eq!(g.get(c00(), 0), 10.0);
        assert_eq!(applied, 0.5);
    }

    fn c00() -> Cell {
        Cell::new(0, 0)
    }

    #[test]
    fn deposit_errors() {
        let mut f = field(2, 2, 1, Boundary::Bounded);
        assert!(matches!(
            f.deposit(c00(), 0, -1.0),
            Err(SwarmError::Parameter { name: "amount", .. })
        ));
        assert!(matches!(
            f.deposit(Cell::new(2, 0), 0, 1.0),
            Err(SwarmError::OutOfBounds { .. })
        ));
        assert!(matches!(
            f.deposit(c00(), 1, 1.0),
            Err(SwarmError::BadChannel { .. })
        ));
    }

    #[test]
    fn sense_examples() {
        let f = field(3, 3, 2, Boundary::Bounded);
        assert_eq!(f.sense(Cell::new(1, 1)).unwrap(), vec![0.0, 0.0]);

        let mut u = field(4, 5, 2, Boundary::Bounded);
        u.set_values(&vec![0.75; 40]).unwrap();
        for y in 0..5 {
            for x in 0..4 {
                assert_eq!(u.sense(Cell::new(x, y)).unwrap(), vec![0.75, 0.75]);
            }
        }

        let mut s = field(3, 3, 1, Boundary::Bounded);
        s.deposit(Cell::new(1, 1), 0, 9.0).unwrap();
        assert_eq!(s.sense(Cell::new(1, 1)).unwrap(), vec![1.0]);
        assert!(s.sense(Cell::new(3, 0)).is_err());
    }

    #[test]
    fn sense_at_corner_uses_only_valid_cells() {
        let mut f = field(3, 3, 1, Boundary::Bounded);
        f.deposit(c00(), 0, 8.0).unwrap();
        assert_eq!(f.sense(c00()).unwrap(), vec![2.0]);
        let mut t = field(3, 3, 1, Boundary::Toroidal);
        t.deposit(c00(), 0, 9.0).unwrap();
        assert_eq!(t.sense(Cell::new(2, 2)).unwrap(), vec![1.0]);
    }

    #[test]
    fn neighborhood_validity_counts() {
        let f = field(5, 4, 1, Boundary::Bounded);
        assert_eq!(f.neighborhood(Cell::new(2, 2)).unwrap().valid_count(), 9);
        assert_eq!(f.neighborhood(Cell::new(2, 0)).unwrap().valid_count(), 6);
        assert_eq!(f.neighborhood(Cell::new(0, 2)).unwrap().valid_count(), 6);
        assert_eq!(f.neighborhood(Cell::new(4, 3)).unwrap().valid_count(), 4);
        let t = field(5, 4, 1, Boundary::Toroidal);
        for y in 0..4 {
            for x in 0..5 {
                assert_eq!(t.neighborhood(Cell::new(x, y)).unwrap().valid_count(), 9);
            }
        }
        let n = t.neighborhood(c00()).unwrap();
        assert_eq!(n.neighbor(Direction::NW), Some(Cell::new(4, 3)));
    }

    #[test]
    fn evaporate_examples() {
        let mut f = field(3, 2, 2, Boundary::Bounded);
        f.deposit(Cell::new(1, 1), 0, 1.0).unwrap();
        f.deposit(Cell::new(2, 0), 1, 3.0).unwrap();
        let before = f.clone();
        f.evaporate(0.0).unwrap();
        assert_eq!(f, before);

        f.evaporate(0.1).unwrap();
        assert_eq!(f.get(Cell::new(1, 1), 0), 0.9);

        f.evaporate(1.0).unwrap();
        assert!(f.values().iter().all(|v| *v == 0.0));

        assert!(f.evaporate(1.5).is_err());
        assert!(f.evaporate(-0.1).is_err());
        assert!(f.evaporate(f64::NAN).is_err());
    }

    #[test]
    fn evaporate_flushes_below_floor() {
        let mut f = field(1, 1, 1, Boundary::Bounded);
        f.deposit(c00(), 0, 1.5e-6).unwrap();
        f.evaporate(0.5).unwrap();
        assert_eq!(f.get(c00(), 0), 0.0);
    }

    #[test]
    fn diffuse_examples() {
        let mut f = field(3, 3, 1, Boundary::Bounded);
        f.deposit(Cell::new(0, 1), 0, 2.0).unwrap();
        let before = f.clone();
        f.diffuse(0.0).unwrap();
        assert_eq!(f, before);

        let mut u = field(4, 3, 2, Boundary::Toroidal);
        u.set_values(&[0.3; 24]).unwrap();
        let before = u.clone();
        u.diffuse(0.7).unwrap();
        assert_eq!(u, before);

        let mut s = field(3, 3, 1, Boundary::Toroidal);
        s.deposit(Cell::new(1, 1), 0, 1.0).unwrap();
        s.diffuse(0.5).unwrap();
        let expect = [0.0, 0.125, 0.0, 0.125, 0.5, 0.125, 0.0, 0.125, 0.0];
        assert_eq!(s.values(), &expect);

        assert!(s.diffuse(1.01).is_err());
    }

    #[test]
    fn diffuse_reflects_at_bounded_corner() {
        let mut f = field(3, 3, 1, Boundary::Bounded);
        f.deposit(c00(), 0, 1.0).unwrap();
        f.diffuse(0.4).unwrap();
        // keeps 0.6 plus the two shares aimed off-canvas
        assert!((f.get(c00(), 0) - 0.8).abs() < 1e-15);
        assert!((f.get(Cell::new(1, 0), 0) - 0.1).abs() < 1e-15);
        assert!((f.get(Cell::new(0, 1), 0) - 0.1).abs() < 1e-15);
        assert!((f.total_mass(0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_mass_counts_exactly() {
        let mut f = field(7, 9, 2, Boundary::Bounded);
        assert_eq!(f.total_mass(1).unwrap(), 0.0);
        f.deposit(Cell::new(3, 3), 1, 2.5).unwrap();
        assert_eq!(f.total_mass(1).unwrap(), 2.5);
        assert!(f.total_mass(2).is_err());

        let mut g = field(40, 40, 1, Boundary::Bounded)
            .with_limits(1e9, 1e-6)
            .unwrap();
        let mut exact: u64 = 0;
        for i in 0..1000usize {
            g.deposit(Cell::new((i * 7) % 40, (i * 13) % 40), 0, 1.0)
                .unwrap();
            exact += 1;
        }
        assert_eq!(g.total_mass(0).unwrap(), exact as f64);
    }

    #[test]
    fn set_values_validates() {
        let mut f = field(2, 1, 1, Boundary::Bounded);
        assert!(f.set_values(&[1.0]).is_err());
        assert!(f.set_values(&[1.0, -1.0]).is_err());
        assert!(f.set_values(&[1.0, f64::INFINITY]).is_err());
        f.set_values(&[1.0, 2.0]).unwrap();
    }

    #[test]
    fn turn_steps_wrap() {
        assert_eq!(Direction::N.turn_steps(Direction::N), 0);
        assert_eq!(Direction::N.turn_steps(Direction::NW), 7);
        assert_eq!(Direction::W.turn_steps(Direction::E), 4);
        assert_eq!(Direction::NW.turn_steps(Direction::NE), 2);
    }
}
