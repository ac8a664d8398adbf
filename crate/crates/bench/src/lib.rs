//! Shared instance generators for the benchmarks.

use kneser_lab_core::rng::SplitMix64;
use kneser_lab_core::search::random_code;
use kneser_lab_core::{LinearCode, PrimeField};

pub fn sample_codes(p: u32, n: usize, count: usize, seed: u64) -> Vec<LinearCode> {
    let field = PrimeField::new(p).expect("prime");
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| random_code(&mut rng, field, n, 4))
        .collect()
}
