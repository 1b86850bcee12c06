//! Seeded random Gaussian inputs for the verification sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gaussian::GaussianState;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..std::f64::consts::TAU)
}

/// Draws a valid state: `n ∈ [0, 3]`, `|m| ∈ [0, √((n+1/2)² − 1/4))` and
/// `|d| ∈ [0, 2]`, all uniform, with uniform phases.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> GaussianState {
    let n: f64 = rng.random_range(0.0..=3.0);
    let m_max = ((n + 0.5).powi(2) - 0.25).max(0.0).sqrt();
    let m_abs = rng.random::<f64>() * m_max;
    let m = Complex64::from_polar(m_abs, phase(rng));
    let d = Complex64::from_polar(rng.random_range(0.0..=2.0), phase(rng));
    GaussianState::new(n, m, d).expect("sampler stays inside the uncertainty region")
}

/// Like [`random_state`] but with zero displacement, as required of environments.
pub fn random_env<R: Rng + ?Sized>(rng: &mut R) -> GaussianState {
    let s = random_state(rng);
    s.with_displacement(Complex64::new(0.0, 0.0))
}

/// `count` states from a fresh generator seeded with `seed`.
pub fn random_states(count: usize, seed: u64) -> Vec<GaussianState> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_state(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_states(200, 5);
        let b = random_states(200, 5);
        assert_eq!(a, b);
        assert_ne!(a, random_states(200, 6));
        for s in &a {
            assert!(s.validate().is_ok());
            assert!((0.0..=3.0).contains(&s.n()));
            assert!(s.d().norm() <= 2.0 + 1e-12);
        }
    }
}
