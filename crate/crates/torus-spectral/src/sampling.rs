//! Deterministic generation of test potentials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::periodic::PeriodicFn;

const TAU: f64 = std::f64::consts::TAU;

/// Zero-mean random trig polynomial with Fourier coefficients decaying like
/// `1/n^2`. Fixed seed gives bit-identical output.
pub fn random_zero_mean(seed: u64, amplitude: f64, modes: usize, grid: usize) -> PeriodicFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<(f64, f64)> = (0..modes)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    PeriodicFn::from_fn(grid, |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let n = (i + 1) as f64;
                amplitude / (n * n) * (a * (TAU * n * x).cos() + b * (TAU * n * x).sin())
            })
            .sum()
    })
    .expect("grid validated by caller")
}

/// Random zero-mean odd trig polynomial (sine series only).
pub fn random_odd(seed: u64, amplitude: f64, modes: usize, grid: usize) -> PeriodicFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..modes).map(|_| rng.gen_range(-1.0..1.0)).collect();
    PeriodicFn::from_fn(grid, |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let n = (i + 1) as f64;
                amplitude / (n * n) * b * (TAU * n * x).sin()
            })
            .sum()
    })
    .expect("grid validated by caller")
}

/// Rescales `f` so its `H_j`-style norm computed by `norm_of` equals `target`
/// (no-op on the zero function).
pub fn rescale_to(f: &PeriodicFn, current: f64, target: f64) -> PeriodicFn {
    if current <= 0.0 {
        f.clone()
    } else {
        f.scale(target / current)
    }
}
