//! Shared fixtures for the criterion benchmarks.

use brecip_core::{BRecipPoly, IntPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A dense degree-`d` polynomial with seeded random coefficients in `[-height, height]`.
pub fn dense_poly(d: usize, height: i64, seed: u64) -> IntPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-height..=height)).collect();
    if coeffs[d] == 0 {
        coeffs[d] = 1;
    }
    IntPoly::from_i64s(&coeffs)
}

/// The 5th cyclotomic polynomial seen through its trace polynomial.
pub fn cyclotomic_five() -> BRecipPoly {
    BRecipPoly::from_i64s(1, &[-1, 1, 1]).expect("valid")
}
