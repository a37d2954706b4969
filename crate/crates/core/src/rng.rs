//! Counter-based pseudorandom numbers.
//!
//! Every random quantity in the crate is a pure function of a 64-bit key and
//! a 64-bit counter. The output for counter `i` under key `k` is the
//! SplitMix64 finalizer applied to `k + (i + 1) * 0x9E3779B97F4A7C15`, which
//! is exactly the `i`-th output of a SplitMix64 stream seeded with `k`.
//! Keys for sub-streams are derived by folding labels into the seed with
//! the same finalizer, so results are identical across platforms and
//! thread schedules.

/// The SplitMix64 increment (2^64 / golden ratio).
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer (Stafford variant 13).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-stream key from `seed` and a sequence of labels.
pub fn derive_key(seed: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(mix64(seed ^ 0x5DEE_CE66_D1CE_4E5B), |acc, &l| {
        mix64(acc ^ mix64(l.wrapping_add(GOLDEN_GAMMA)))
    })
}

/// Stream labels used when deriving keys, so that distinct consumers of one
/// seed never share a stream.
pub mod label {
    pub const NOISE: u64 = 1;
    pub const ESTIMATE: u64 = 2;
    pub const RDG: u64 = 3;
    pub const ERDOS_RENYI: u64 = 4;
    pub const SBM: u64 = 5;
    pub const TRIAL: u64 = 6;
    pub const GRAPH: u64 = 7;
    pub const ALGORITHM: u64 = 8;
}

/// A keyed counter-based generator.
///
/// `CounterRng::at(key, i)` is a pure function; the stateful methods simply
/// advance the counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        Self { key, counter: 0 }
    }

    /// Starts the stream for `labels` under `seed`.
    pub fn keyed(seed: u64, labels: &[u64]) -> Self {
        Self::new(derive_key(seed, labels))
    }

    /// Positions the generator at `counter`.
    pub fn with_counter(mut self, counter: u64) -> Self {
        self.counter = counter;
        self
    }

    #[inline]
    pub fn at(key: u64, counter: u64) -> u64 {
        mix64(key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = Self::at(self.key, self.counter);
        self.counter = self.counter.wrapping_add(1);
        out
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by rejection; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        match (hi - lo).checked_add(1) {
            Some(span) => lo + self.below(span),
            None => self.next_u64(),
        }
    }

    /// Standard normal draw (Box–Muller, cosine branch).
    pub fn next_gaussian(&mut self) -> f64 {
        // u1 in (0, 1] keeps the logarithm finite
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
    }

    /// Partial Fisher–Yates: `k` distinct elements of `0..n` in draw order.
    pub fn sample_without_replacement(&mut self, n: usize, k: usize) -> alloc::vec::Vec<usize> {
        assert!(k <= n);
        let mut pool: alloc::vec::Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
