//! Counter-based random stream.
//!
//! Variate `k` of a stream is a pure function of `(seed, k)`, so any variate
//! can be computed without generating its predecessors. The whole generator
//! state is the pair `(seed, counter)`.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterRng {
    seed: u64,
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self::from_state(seed, 0)
    }

    pub fn from_state(seed: u64, counter: u64) -> Self {
        CounterRng {
            seed,
            key: mix64(seed ^ 0x5357_524D_5357_524D),
            counter,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of variates consumed so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Raw 64 bits of variate `index`, independent of the current position.
    #[inline]
    pub fn bits_at(&self, index: u64) -> u64 {
        mix64(
            self.key
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)),
        )
    }

    /// Uniform variate in `[0, 1)` at `index`.
    #[inline]
    pub fn uniform_at(&self, index: u64) -> f64 {
        (self.bits_at(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let v = self.bits_at(self.counter);
        self.counter += 1;
        v
    }

    /// Next uniform variate in `[0, 1)`.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        let v = self.uniform_at(self.counter);
        self.counter += 1;
        v
    }

    /// Integer in `0..n` by scaling a uniform variate. `n` must be positive.
    #[inline]
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_uniform() * n as f64) as usize).min(n - 1)
    }
}
