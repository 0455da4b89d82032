//! Independent lower bound for the spectral norm by multi-start iteration of
//! the anti-fixed-point map `x ← conj(F(x)) / ‖F(x)‖`, where
//! `F(x) = (∂f/∂x0, ∂f/∂x1) / d`. Each step is averaged with the current
//! point after phase alignment.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::binom;
use crate::engine::Field;
use crate::state::{QubitState, UnitVector2, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { restarts: 64, max_iters: 500, step_tol: 1e-12, seed: 0x5eed_2024 }
    }
}

/// `(q-form, p-form)` at `x`: `Σ C(d-1,j) s_j x0^{d-1-j} x1^j` and the same with `s_{j+1}`.
fn gradient(state: &QubitState, x: &UnitVector2) -> (C64, C64) {
    let d = state.d();
    let s = state.coeffs();
    let m = d - 1;
    let mut p0 = vec![C64::new(1.0, 0.0); m + 1];
    let mut p1 = vec![C64::new(1.0, 0.0); m + 1];
    for k in 1..=m {
        p0[k] = p0[k - 1] * x.x0;
        p1[k] = p1[k - 1] * x.x1;
    }
    let mut f0 = C64::new(0.0, 0.0);
    let mut f1 = C64::new(0.0, 0.0);
    for j in 0..=m {
        let mono = p0[m - j] * p1[j] * binom(m, j);
        f0 += s[j] * mono;
        f1 += s[j + 1] * mono;
    }
    (f0, f1)
}

fn random_start(rng: &mut ChaCha8Rng, field: Field) -> UnitVector2 {
    loop {
        let mut g = || -> f64 { StandardNormal.sample(rng) };
        let (x0, x1) = match field {
            Field::Complex => (C64::new(g(), g()), C64::new(g(), g())),
            Field::Real => (C64::new(g(), 0.0), C64::new(g(), 0.0)),
        };
        if let Some(u) = UnitVector2::normalized(x0, x1) {
            return u;
        }
    }
}

fn run_from(state: &QubitState, start: UnitVector2, cfg: &OracleConfig) -> (f64, UnitVector2) {
    let mut x = start;
    let mut best = (state.eval_at(x).norm(), x);
    for _ in 0..cfg.max_iters {
        let (f0, f1) = gradient(state, &x);
        let Some(y) = UnitVector2::normalized(f0.conj(), f1.conj()) else {
            break;
        };
        // Projective distance, so a global phase does not count.
        let inner = x.x0.conj() * y.x0 + x.x1.conj() * y.x1;
        let overlap = inner.norm();
        let step = (1.0 - overlap.min(1.0)).max(0.0).sqrt();
        // Half step towards the phase-aligned image. Same fixed points, but a
        // linearization eigenvalue of -1 (oscillation) becomes 0.
        let w = if overlap > 0.0 { inner.conj() / overlap } else { C64::new(1.0, 0.0) };
        let Some(next) = UnitVector2::normalized(x.x0 + w * y.x0, x.x1 + w * y.x1) else {
            break;
        };
        x = next;
        let val = state.eval_at(x).norm();
        if val > best.0 {
            best = (val, x);
        }
        if step < cfg.step_tol {
            break;
        }
    }
    best
}

/// Best `|f(x)|` over `cfg.restarts` seeded random starts. Restart `i` uses
/// ChaCha stream `i`, so a run with more restarts extends a run with fewer.
pub fn oracle_max(state: &QubitState, field: Field, cfg: &OracleConfig) -> (f64, UnitVector2) {
    let mut best = (f64::NEG_INFINITY, UnitVector2 { x0: C64::new(1.0, 0.0), x1: C64::new(0.0, 0.0) });
    for i in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let start = random_start(&mut rng, field);
        let r = run_from(state, start, cfg);
        if r.0 > best.0 {
            best = r;
        }
    }
    best
}
