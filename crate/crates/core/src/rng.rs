//! Seeded sampling helpers. Every random draw in the crate goes through a
//! [`SeededRng`] so results depend only on the seed.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::StateVector;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..bound`.
pub fn below(rng: &mut impl RngCore, bound: usize) -> usize {
    assert!(bound > 0, "empty range");
    ((uniform(rng) * bound as f64) as usize).min(bound - 1)
}

/// Standard normal draw (Box-Muller).
pub fn normal(rng: &mut impl RngCore) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
}

/// Vector of `n` standard complex Gaussian entries.
pub fn complex_gaussian(rng: &mut impl RngCore, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(normal(rng), normal(rng))).collect()
}

/// Haar-random unit state in `C^n`.
pub fn random_state(rng: &mut impl RngCore, n: usize) -> StateVector {
    loop {
        if let Ok(s) = StateVector::new(&complex_gaussian(rng, n)) {
            return s;
        }
    }
}
