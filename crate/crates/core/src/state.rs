//! Symmetric d-qubit tensors stored through their d+1 distinct entries.
//!
//! A symmetric tensor in `S^d C^2` is determined by `s_k`, the common value of
//! all entries with exactly `k` indices equal to the second basis vector. The
//! associated binary form is `f(x) = Σ C(d,k) s_k x0^{d-k} x1^k`.

use num_complex::Complex64;
use thiserror::Error;

use crate::binom;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("expected {expected} coefficients for d = {d}, got {got}")]
    WrongLength { d: usize, expected: usize, got: usize },
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("mode count d = {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("state is identically zero")]
    ZeroState,
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    d: usize,
    s: Vec<C64>,
    is_real: bool,
}

impl QubitState {
    pub fn new(d: usize, coeffs: Vec<C64>) -> Result<Self, StateError> {
        if d < 2 {
            return Err(StateError::DegreeTooSmall(d));
        }
        if coeffs.len() != d + 1 {
            return Err(StateError::WrongLength {
                d,
                expected: d + 1,
                got: coeffs.len(),
            });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(StateError::NonFinite { index });
        }
        let is_real = coeffs.iter().all(|c| c.im == 0.0);
        Ok(Self { d, s: coeffs, is_real })
    }

    pub fn from_real(d: usize, coeffs: &[f64]) -> Result<Self, StateError> {
        Self::new(d, coeffs.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.s
    }

    pub fn s(&self, k: usize) -> C64 {
        self.s[k]
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|c| *c == C64::new(0.0, 0.0))
    }

    /// Hilbert–Schmidt norm of the full tensor: `sqrt(Σ C(d,k)|s_k|^2)`.
    pub fn hs_norm(&self) -> f64 {
        self.s
            .iter()
            .enumerate()
            .map(|(k, c)| binom(self.d, k) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalize(&self) -> Result<Self, StateError> {
        let n = self.hs_norm();
        if n == 0.0 {
            return Err(StateError::ZeroState);
        }
        Ok(self.map(|c| c / n))
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.map(|c| c * factor)
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let s: Vec<C64> = self.s.iter().map(|&c| f(c)).collect();
        let is_real = s.iter().all(|c| c.im == 0.0);
        Self { d: self.d, s, is_real }
    }

    /// Evaluates the binary form `f(x0, x1)`.
    pub fn eval_form(&self, x0: C64, x1: C64) -> C64 {
        // Horner in the ratio would divide by x0; expand directly instead.
        let d = self.d;
        let mut p0 = vec![C64::new(1.0, 0.0); d + 1];
        let mut p1 = vec![C64::new(1.0, 0.0); d + 1];
        for k in 1..=d {
            p0[k] = p0[k - 1] * x0;
            p1[k] = p1[k - 1] * x1;
        }
        (0..=d)
            .map(|k| self.s[k] * binom(d, k) * p0[d - k] * p1[k])
            .sum()
    }

    pub fn eval_at(&self, x: UnitVector2) -> C64 {
        self.eval_form(x.x0, x.x1)
    }

    /// Transports the tensor by `U` acting on every mode, so the new form is
    /// `f'(x) = f(Uᵀx)`. Transporting by `U` then `V` equals transporting by `VU`.
    pub fn apply_unitary(&self, u: &[[C64; 2]; 2]) -> Result<Self, StateError> {
        let dev = unitary_deviation(u);
        if dev > 1e-10 {
            return Err(StateError::NotUnitary(dev));
        }
        let d = self.d;
        // Uᵀx: first component u00 x0 + u10 x1, second u01 x0 + u11 x1.
        // Forms are stored by coefficient of x0^{m-k} x1^k.
        let y0 = [u[0][0], u[1][0]];
        let y1 = [u[0][1], u[1][1]];
        let pow0 = linear_powers(y0, d);
        let pow1 = linear_powers(y1, d);
        let mut out = vec![C64::new(0.0, 0.0); d + 1];
        for j in 0..=d {
            let w = self.s[j] * binom(d, j);
            if w == C64::new(0.0, 0.0) {
                continue;
            }
            let a = &pow0[d - j];
            let b = &pow1[j];
            for (i, ai) in a.iter().enumerate() {
                for (l, bl) in b.iter().enumerate() {
                    out[i + l] += w * ai * bl;
                }
            }
        }
        for (k, c) in out.iter_mut().enumerate() {
            *c /= binom(d, k);
        }
        Self::new(d, out)
    }
}

/// Coefficient lists of `(a x0 + b x1)^m` for m = 0..=d.
fn linear_powers(lin: [C64; 2], d: usize) -> Vec<Vec<C64>> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(vec![C64::new(1.0, 0.0)]);
    for m in 1..=d {
        let prev: &Vec<C64> = &out[m - 1];
        let mut next = vec![C64::new(0.0, 0.0); m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k] += c * lin[0];
            next[k + 1] += c * lin[1];
        }
        out.push(next);
    }
    out
}

/// Largest entry of `|U^H U - I|`.
pub fn unitary_deviation(u: &[[C64; 2]; 2]) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc: C64 = u.iter().map(|row| row[i].conj() * row[j]).sum();
            if i == j {
                acc -= 1.0;
            }
            dev = dev.max(acc.norm());
        }
    }
    dev
}

/// Matrix product `a·b` of 2×2 complex matrices.
pub fn mat2_mul(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector2 {
    pub x0: C64,
    pub x1: C64,
}

impl UnitVector2 {
    /// Rescales `(x0, x1)` to unit length. Returns `None` for the zero vector.
    pub fn normalized(x0: C64, x1: C64) -> Option<Self> {
        let n = (x0.norm_sqr() + x1.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(Self { x0: x0 / n, x1: x1 / n })
    }

    pub fn norm(&self) -> f64 {
        (self.x0.norm_sqr() + self.x1.norm_sqr()).sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.x0.im == 0.0 && self.x1.im == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn construction_contracts() {
        let s = QubitState::from_real(3, &[0.3104, -0.4866, -0.2186, 0.2235]).unwrap();
        assert!(s.is_real());
        assert_eq!(
            QubitState::from_real(2, &[1.0, 2.0, 3.0, 4.0]),
            Err(StateError::WrongLength { d: 2, expected: 3, got: 4 })
        );
        assert_eq!(QubitState::from_real(1, &[1.0, 0.0]), Err(StateError::DegreeTooSmall(1)));
        assert_eq!(
            QubitState::from_real(2, &[1.0, f64::NAN, 0.0]),
            Err(StateError::NonFinite { index: 1 })
        );
        let cplx = QubitState::new(2, vec![c(1.0, 0.0), c(0.0, 1e-300), c(0.0, 0.0)]).unwrap();
        assert!(!cplx.is_real());
    }

    #[test]
    fn product_state_form() {
        let s = QubitState::from_real(3, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let x0 = c(0.3, 0.2);
        assert_relative_eq!((s.eval_form(x0, c(0.7, -0.1)) - x0 * x0 * x0).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hs_norm_values() {
        assert_eq!(QubitState::from_real(3, &[1.0, 0.0, 0.0, 0.0]).unwrap().hs_norm(), 1.0);
        let a1 = QubitState::from_real(3, &[0.3104, -0.4866, -0.2186, 0.2235]).unwrap();
        assert!((a1.hs_norm() - 1.0).abs() < 5e-4);
        let dicke = QubitState::from_real(3, &[0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0]).unwrap();
        assert_relative_eq!(dicke.hs_norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn normalize_cases() {
        let s = QubitState::from_real(3, &[2.0, 0.0, 0.0, 0.0]).unwrap().normalize().unwrap();
        assert_eq!(s.coeffs()[0], c(1.0, 0.0));
        let s = QubitState::from_real(3, &[0.0, 1.0, 0.0, 0.0]).unwrap().normalize().unwrap();
        assert_relative_eq!(s.coeffs()[1].re, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_eq!(
            QubitState::from_real(3, &[0.0; 4]).unwrap().normalize(),
            Err(StateError::ZeroState)
        );
    }

    #[test]
    fn unitary_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let s = QubitState::new(3, vec![c(0.1, 0.2), c(-0.3, 0.0), c(0.0, 0.4), c(0.5, -0.1)]).unwrap();

        let id = [[one, zero], [zero, one]];
        let t = s.apply_unitary(&id).unwrap();
        for (a, b) in s.coeffs().iter().zip(t.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }

        let swap = [[zero, one], [one, zero]];
        let t = s.apply_unitary(&swap).unwrap();
        for k in 0..=3 {
            assert!((t.coeffs()[k] - s.coeffs()[3 - k]).norm() < 1e-15);
        }

        let theta: f64 = 0.7;
        let diag = [[one, zero], [zero, C64::from_polar(1.0, theta)]];
        let dicke = QubitState::from_real(3, &[0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0]).unwrap();
        let t = dicke.apply_unitary(&diag).unwrap();
        let want = C64::from_polar(1.0 / 3f64.sqrt(), 2.0 * theta);
        assert!((t.coeffs()[2] - want).norm() < 1e-15);
        assert!(t.coeffs()[1].norm() < 1e-15 && t.coeffs()[3].norm() < 1e-15);

        let bad = [[one, one], [zero, one]];
        assert!(matches!(s.apply_unitary(&bad), Err(StateError::NotUnitary(_))));
    }

    #[test]
    fn unitary_substitution_matches_form() {
        let s = QubitState::new(4, vec![c(0.1, 0.2), c(-0.3, 0.0), c(0.0, 0.4), c(0.5, -0.1), c(0.2, 0.2)])
            .unwrap();
        let (ct, st) = (0.3f64.cos(), 0.3f64.sin());
        let u = [
            [c(ct, 0.0), C64::from_polar(st, 0.4)],
            [C64::from_polar(-st, -0.4), c(ct, 0.0)],
        ];
        let t = s.apply_unitary(&u).unwrap();
        let (x0, x1) = (c(0.3, -0.2), c(0.5, 0.6));
        let y0 = u[0][0] * x0 + u[1][0] * x1;
        let y1 = u[0][1] * x0 + u[1][1] * x1;
        assert!((t.eval_form(x0, x1) - s.eval_form(y0, y1)).norm() < 1e-14);
    }
}
