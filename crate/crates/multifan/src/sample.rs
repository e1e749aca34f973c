//! Seeded sampling of candidate integer vectors.
//!
//! Candidates are drawn with entries uniform in `[-B, B]`; every rejection
//! doubles `B`, so any exact genericity condition is met after finitely
//! many draws. The stream is a pure function of the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rat::{rat, Rat};

pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: 8,
        }
    }

    pub fn vector(&mut self, n: usize) -> Vec<Rat> {
        (0..n)
            .map(|_| rat(self.rng.gen_range(-self.bound..=self.bound)))
            .collect()
    }

    /// Call after rejecting a candidate.
    pub fn grow(&mut self) {
        if self.bound < (1 << 24) {
            self.bound *= 2;
        }
    }

    /// Search for a vector satisfying an exact predicate.
    pub fn find<F>(&mut self, n: usize, accept: F) -> Vec<Rat>
    where
        F: Fn(&[Rat]) -> bool,
    {
        loop {
            let v = self.vector(n);
            if accept(&v) {
                return v;
            }
            self.grow();
        }
    }
}
