//! Deterministic random source for test corpora.
//!
//! The point of hand-rolling this instead of pulling in `rand` is
//! portability of the corpora themselves: every seeded corpus in this
//! workspace (random graphs, planted instances, random chordal generation)
//! is defined by this exact generator, so an independent reimplementation
//! can reproduce the same graphs byte for byte. It is Knuth's MMIX
//! linear-congruential step on 64 bits; the high 32 bits feed range
//! reduction.

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        // Avoid the all-zero fixed point of the multiplier-only part by
        // stepping once on construction.
        let mut rng = Lcg64 { state: seed };
        rng.next_u64();
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 32) % bound
    }

    /// Bernoulli draw with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// Choose `k` distinct values out of `0..n` (k <= n), ascending.
    pub fn sample(&mut self, n: usize, k: usize) -> Vec<u32> {
        assert!(k <= n);
        let mut pool: Vec<u32> = (0..n as u32).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort_unstable();
        out
    }
}
