#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use specnorm::{binom, QubitState, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Haar-random unit state: Gaussian tensor entries, collected per weight.
pub fn random_state(d: usize, rng: &mut ChaCha8Rng) -> QubitState {
    let s = (0..=d).map(|k| C64::new(gauss(rng), gauss(rng)) / binom(d, k).sqrt()).collect();
    QubitState::new(d, s).unwrap().normalize().unwrap()
}

pub fn random_real_state(d: usize, rng: &mut ChaCha8Rng) -> QubitState {
    let s: Vec<f64> = (0..=d).map(|k| gauss(rng) / binom(d, k).sqrt()).collect();
    QubitState::from_real(d, &s).unwrap().normalize().unwrap()
}

/// Random element of SU(2).
pub fn random_unitary(rng: &mut ChaCha8Rng) -> [[C64; 2]; 2] {
    let (a, b) = (C64::new(gauss(rng), gauss(rng)), C64::new(gauss(rng), gauss(rng)));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    [[a, -b.conj()], [b, a.conj()]]
}

/// Max of `|f(cos t, sin t)|` over `n` equally spaced angles in `[0, π)`.
pub fn grid_real_max(state: &QubitState, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / n as f64;
            state.eval_form(C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0)).norm()
        })
        .fold(0.0, f64::max)
}
