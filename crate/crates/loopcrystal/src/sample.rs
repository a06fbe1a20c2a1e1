//! Seeded random sampling of positive rational points.
//!
//! Numerators are drawn from 1..=100 and denominators from 1..=10, strictly
//! positive, so every birational map in the library is pole-free at sampled
//! points and all reports are reproducible from the seed.

use crate::crystal::{FactorPoint, ProductPoint};
use crate::rational::Rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A strictly positive rational with numerator 1..=100, denominator 1..=10.
    pub fn rat(&mut self) -> Rat {
        let numer = self.rng.gen_range(1..=100i64);
        let denom = self.rng.gen_range(1..=10i64);
        Rat::new(numer, denom)
    }

    pub fn factor_point(&mut self, n: usize) -> FactorPoint {
        FactorPoint::new((0..n).map(|_| self.rat()).collect()).expect("positive coords")
    }

    pub fn product_point(&mut self, n: usize, m: usize) -> ProductPoint {
        ProductPoint::new((0..m).map(|_| self.factor_point(n)).collect()).expect("m >= 1")
    }

    /// A residue index in 1..=n.
    pub fn residue(&mut self, n: usize) -> i64 {
        self.rng.gen_range(1..=n as i64)
    }

    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}
