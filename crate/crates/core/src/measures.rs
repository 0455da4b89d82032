//! Geometric measure of entanglement and the closed forms for
//! standard-basis (Dicke) states.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{self, EngineError, Field, Tolerances};
use crate::state::{QubitState, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("state is not normalized (‖S‖ = {0})")]
    NotAState(f64),
    #[error("invalid basis index {j:?} for d = {d}")]
    BadIndex { d: usize, j: Vec<usize> },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A weight profile `(j_1, …, j_n)` with `Σ j_k = d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisIndex {
    j: Vec<usize>,
}

impl BasisIndex {
    pub fn new(d: usize, j: Vec<usize>) -> Result<Self, MeasureError> {
        if j.len() < 2 || j.iter().sum::<usize>() != d {
            return Err(MeasureError::BadIndex { d, j });
        }
        Ok(Self { j })
    }

    pub fn parts(&self) -> &[usize] {
        &self.j
    }

    pub fn d(&self) -> usize {
        self.j.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.j.len()
    }

    /// The most even profile: `l` parts equal to `⌊d/n⌋`, the rest `⌈d/n⌉`.
    pub fn balanced(d: usize, n: usize) -> Self {
        let hi = d.div_ceil(n);
        let l = n * hi - d;
        let j = (0..n).map(|i| if i < l { hi - 1 } else { hi }).collect();
        Self { j }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub eta: f64,
    pub eta_rel: f64,
    pub sigma_used: f64,
    pub d: usize,
}

impl MeasureReport {
    pub fn from_sigma(d: usize, sigma: f64) -> Self {
        let eta = -2.0 * sigma.log2();
        Self { eta, eta_rel: eta - ((d + 1) as f64).log2(), sigma_used: sigma, d }
    }
}

const UNIT_TOL: f64 = 1e-8;

fn check_unit(state: &QubitState) -> Result<(), MeasureError> {
    let h = state.hs_norm();
    if (h - 1.0).abs() > UNIT_TOL {
        return Err(MeasureError::NotAState(h));
    }
    Ok(())
}

/// `η = -log₂ σ²` with the complex spectral norm.
pub fn eta(state: &QubitState) -> Result<f64, MeasureError> {
    Ok(report(state, &Tolerances::default())?.eta)
}

/// `η - log₂(d+1)`.
pub fn eta_rel(state: &QubitState) -> Result<f64, MeasureError> {
    Ok(report(state, &Tolerances::default())?.eta_rel)
}

pub fn report(state: &QubitState, tol: &Tolerances) -> Result<MeasureReport, MeasureError> {
    check_unit(state)?;
    let r = engine::spectral_norm(state, Field::Complex, tol)?;
    Ok(MeasureReport::from_sigma(state.d(), r.sigma))
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Qubit Dicke state: `s_{j_2} = √(j_1! j_2! / d!)`.
pub fn standard_basis_state(d: usize, j: &BasisIndex) -> Result<QubitState, MeasureError> {
    if j.n() != 2 || j.d() != d {
        return Err(MeasureError::BadIndex { d, j: j.parts().to_vec() });
    }
    let k = j.parts()[1];
    let val = (0.5 * (ln_factorial(j.parts()[0]) + ln_factorial(k) - ln_factorial(d))).exp();
    let mut s = vec![C64::new(0.0, 0.0); d + 1];
    s[k] = C64::new(val, 0.0);
    Ok(QubitState::new(d, s).map_err(EngineError::from)?)
}

/// `√(d! Π j^j / (d^d Π j!))`, the spectral norm (real and complex) of the
/// basis state with profile `j`, evaluated in log space.
pub fn standard_basis_sigma(d: usize, j: &BasisIndex) -> Result<f64, MeasureError> {
    if j.d() != d {
        return Err(MeasureError::BadIndex { d, j: j.parts().to_vec() });
    }
    let xlogx = |m: usize| if m == 0 { 0.0 } else { m as f64 * (m as f64).ln() };
    let mut ln = ln_factorial(d) - xlogx(d);
    for &m in j.parts() {
        ln += xlogx(m) - ln_factorial(m);
    }
    Ok((0.5 * ln).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaSymBounds {
    /// `η` of the balanced basis state.
    pub lower: f64,
    /// `log₂ C(n+d-1, n-1)`.
    pub upper: f64,
    /// Leading-order expansion `½((n-1) log₂ d - n log₂ n)`.
    pub asymptotic: f64,
    /// The expansion including its constant term `((n-1)/2) log₂(2π)`.
    pub asymptotic_with_constant: f64,
}

/// Bounds on the maximal entanglement of symmetric `n`-qudit states of degree `d`.
pub fn eta_sym_bounds(d: usize, n: usize) -> EtaSymBounds {
    let j = BasisIndex::balanced(d, n);
    let sigma = standard_basis_sigma(d, &j).expect("balanced index is valid");
    let lower = -2.0 * sigma.log2();
    let ln_binom = ln_factorial(n + d - 1) - ln_factorial(n - 1) - ln_factorial(d);
    let upper = ln_binom / std::f64::consts::LN_2;
    let (df, nf) = (d as f64, n as f64);
    let asymptotic = 0.5 * ((nf - 1.0) * df.log2() - nf * nf.log2());
    let asymptotic_with_constant = asymptotic + 0.5 * (nf - 1.0) * (2.0 * std::f64::consts::PI).log2();
    EtaSymBounds { lower, upper, asymptotic, asymptotic_with_constant }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(d: usize, j: &[usize]) -> BasisIndex {
        BasisIndex::new(d, j.to_vec()).unwrap()
    }

    #[test]
    fn basis_states() {
        let s = standard_basis_state(3, &idx(3, &[1, 2])).unwrap();
        assert!((s.s(2).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let s = standard_basis_state(3, &idx(3, &[3, 0])).unwrap();
        assert!((s.s(0).re - 1.0).abs() < 1e-15);
        let s = standard_basis_state(4, &idx(4, &[2, 2])).unwrap();
        assert!((s.s(2).re - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((s.hs_norm() - 1.0).abs() < 1e-14);
        assert!(matches!(BasisIndex::new(3, vec![1, 1]), Err(MeasureError::BadIndex { .. })));
    }

    #[test]
    fn basis_sigma_values() {
        assert!((standard_basis_sigma(3, &idx(3, &[1, 2])).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((standard_basis_sigma(4, &idx(4, &[2, 2])).unwrap() - 6f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((standard_basis_sigma(3, &idx(3, &[1, 1, 1])).unwrap() - (6.0f64 / 27.0).sqrt()).abs() < 1e-14);
        assert!((standard_basis_sigma(5, &idx(5, &[3, 0, 2])).unwrap() - standard_basis_sigma(5, &idx(5, &[2, 3])).unwrap()).abs() < 1e-14);
        // Large d stays finite.
        let s = standard_basis_sigma(400, &BasisIndex::balanced(400, 2)).unwrap();
        assert!(s.is_finite() && s > 0.0);
    }

    #[test]
    fn balanced_index() {
        assert_eq!(BasisIndex::balanced(7, 3).parts(), &[2, 2, 3]);
        assert_eq!(BasisIndex::balanced(6, 3).parts(), &[2, 2, 2]);
        assert_eq!(BasisIndex::balanced(3, 2).parts(), &[1, 2]);
    }

    #[test]
    fn bounds_examples() {
        let b = eta_sym_bounds(3, 2);
        assert!((b.lower - 2.25f64.log2()).abs() < 1e-12);
        assert!((b.upper - 2.0).abs() < 1e-12);
        let b = eta_sym_bounds(4, 2);
        assert!((b.lower + (6.0f64 / 16.0).log2()).abs() < 1e-12);
        assert!((b.upper - 5f64.log2()).abs() < 1e-12);
        let b = eta_sym_bounds(2, 2);
        assert!((b.lower - 1.0).abs() < 1e-12);
        assert!((b.upper - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn product_state_measures() {
        let s = QubitState::from_real(3, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(eta(&s).unwrap().abs() < 1e-12);
        assert!((eta_rel(&s).unwrap() + 2.0).abs() < 1e-12);
        let s2 = QubitState::from_real(3, &[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eta(&s2), Err(MeasureError::NotAState(_))));
    }
}
