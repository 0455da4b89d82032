//! States whose fixed-point polynomial `z v - u` vanishes identically.
//!
//! This happens exactly when `φ` has two distinct projective roots that are
//! antipodal on the Riemann sphere (`w = -1/z̄`): either `{0, ∞}`, the
//! monomials `s_k x0^{d-k} x1^k`, or a finite pair
//! `φ = A (z + a)^p (z + b)^{d-p}` with `a = c e^{-is}`, `b = -e^{-is}/c`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom;
use crate::engine::{self, EngineError, Field, Method, SpectralResult, Tolerances, WitnessRoot};
use crate::poly::{self, RootOptions};
use crate::state::{QubitState, StateError, UnitVector2};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExceptionalError {
    #[error("fixed-point polynomial vanishes but φ does not have two antipodal roots ({0})")]
    ClassificationFailure(String),
    #[error("operation does not apply to this exceptional class")]
    WrongKind,
    #[error("state has complex entries")]
    NotReal,
    #[error("perturbation never left the exceptional family (last ε = {0:.3e})")]
    BracketNotReached(f64),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExceptionalClass {
    NotExceptional,
    /// `f = amplitude · C(d,k) · x0^{d-k} x1^k`.
    Monomial { amplitude: C64, k: usize },
    /// `φ = amplitude · (z + c e^{-is})^p (z - e^{-is}/c)^{d-p}` with `c > 0`.
    /// `alpha`, `beta` are the Möbius coefficients in the frame `s = 0`.
    TwoRoot { amplitude: C64, c: f64, p: usize, phase_s: f64, alpha: f64, beta: f64 },
    /// Real state with `φ = amplitude · (z^2 + 1)^p`, `d = 2p`.
    Circle { amplitude: C64, p: usize },
}

impl ExceptionalClass {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NotExceptional => "not_exceptional",
            Self::Monomial { .. } => "monomial",
            Self::TwoRoot { .. } => "two_root",
            Self::Circle { .. } => "circle",
        }
    }
}

/// Point on the unit sphere for `z` under inverse stereographic projection
/// (`None` is the point at infinity).
fn sphere(z: Option<C64>) -> [f64; 3] {
    match z {
        None => [0.0, 0.0, 1.0],
        Some(z) => {
            let r2 = z.norm_sqr();
            let den = 1.0 + r2;
            [2.0 * z.re / den, 2.0 * z.im / den, (r2 - 1.0) / den]
        }
    }
}

fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Chordal distance on the Riemann sphere, `None` standing for infinity.
fn chordal(a: Option<C64>, b: Option<C64>) -> f64 {
    dist3(sphere(a), sphere(b)) / 2.0
}

fn antipode(z: Option<C64>) -> Option<C64> {
    match z {
        None => Some(ZERO),
        Some(z) if z == ZERO => None,
        Some(z) => Some(-z.conj().inv()),
    }
}

/// Classifies `state`. `zero_tol` is the coefficient size below which the
/// fixed-point polynomial of the normalized state counts as zero.
pub fn detect_exceptional(state: &QubitState, zero_tol: f64) -> Result<ExceptionalClass, ExceptionalError> {
    let unit = state.normalize()?;
    let vanishes = engine::fixed_point_vanishes(&unit, zero_tol).map_err(|e| match e {
        EngineError::State(s) => ExceptionalError::State(s),
        other => ExceptionalError::ClassificationFailure(other.to_string()),
    })?;
    if !vanishes {
        return Ok(ExceptionalClass::NotExceptional);
    }
    let h = state.hs_norm();
    let d = unit.d();
    let phi = engine::build_phi(&unit);
    let deg = phi.degree().ok_or_else(|| ExceptionalError::ClassificationFailure("zero form".into()))?;

    // Projective roots: finite ones from φ, the rest at infinity.
    let mut pts: Vec<Option<C64>> = vec![None; d - deg];
    if deg > 0 {
        let opts = RootOptions { cluster_cap: 0.0, ..RootOptions::default() };
        let rs = poly::roots_with(&phi, 1e-8, opts).map_err(|e| ExceptionalError::ClassificationFailure(e.to_string()))?;
        for r in rs.roots {
            pts.extend(std::iter::repeat_n(Some(r.z), r.multiplicity));
        }
    }

    // Split into two groups around the farthest pair; antipodal points are as
    // far apart as the sphere allows, so this is robust to root spreading.
    let xyz: Vec<[f64; 3]> = pts.iter().map(|&z| sphere(z)).collect();
    let (mut ia, mut ib, mut best) = (0, 0, -1.0);
    for i in 0..xyz.len() {
        for j in (i + 1)..xyz.len() {
            let dd = dist3(xyz[i], xyz[j]);
            if dd > best {
                (ia, ib, best) = (i, j, dd);
            }
        }
    }
    if best < 1e-3 {
        return Err(ExceptionalError::ClassificationFailure("φ has a single projective root".into()));
    }
    let (mut ga, mut gb) = (Vec::new(), Vec::new());
    for (i, x) in xyz.iter().enumerate() {
        if dist3(*x, xyz[ia]) <= dist3(*x, xyz[ib]) {
            ga.push(i);
        } else {
            gb.push(i);
        }
    }
    let center = |g: &[usize]| -> Option<C64> {
        if g.iter().any(|&i| pts[i].is_none()) {
            return None;
        }
        let mean = g.iter().map(|&i| pts[i].unwrap()).sum::<C64>() / g.len() as f64;
        if g.len() == 1 {
            return Some(mean);
        }
        let spread = g.iter().map(|&i| (pts[i].unwrap() - mean).norm()).fold(0.0, f64::max);
        Some(poly::polish_multiple(phi.coeffs(), mean, g.len(), 2.0 * spread))
    };
    let (ca, cb) = (center(&ga), center(&gb));
    for (g, c) in [(&ga, ca), (&gb, cb)] {
        let spread = g.iter().map(|&i| chordal(pts[i], c)).fold(0.0, f64::max);
        if spread > 0.1 {
            return Err(ExceptionalError::ClassificationFailure(format!("root group spread {spread:.3e}")));
        }
    }
    let gap = chordal(cb, antipode(ca));
    if gap > 1e-6 {
        return Err(ExceptionalError::ClassificationFailure(format!("roots not antipodal (gap {gap:.3e})")));
    }

    // Monomial: roots {0, ∞}.
    if ca.is_none() || cb.is_none() {
        let k = unit.coeffs().iter().position(|c| *c != ZERO).unwrap_or(0);
        return Ok(ExceptionalClass::Monomial { amplitude: state.s(k), k });
    }

    // Higher multiplicity root is -a; ties go to the smaller modulus.
    let (ra, pa, rb) = {
        let (za, zb) = (ca.unwrap(), cb.unwrap());
        let pick_a = ga.len() > gb.len() || (ga.len() == gb.len() && za.norm() <= zb.norm());
        if pick_a { (za, ga.len(), zb) } else { (zb, gb.len(), za) }
    };
    let amplitude = phi.coeff(d) * h;
    let a = -ra;
    let c = a.norm();
    let rot = a / c; // e^{-is}
    let phase_s = -rot.arg();
    let _ = rb;
    if state.is_real() && (ra.re.abs() <= 1e-6) && (ra.im.abs() - 1.0).abs() <= 1e-6 && pa * 2 == d {
        return Ok(ExceptionalClass::Circle { amplitude, p: pa });
    }
    let (alpha, beta) = mobius_coeffs(d, pa, c);
    Ok(ExceptionalClass::TwoRoot { amplitude, c, p: pa, phase_s, alpha, beta })
}

/// `α = (d-p)c - p/c`, `β = pc - (d-p)/c`.
fn mobius_coeffs(d: usize, p: usize, c: f64) -> (f64, f64) {
    let (d, p) = (d as f64, p as f64);
    ((d - p) * c - p / c, p * c - (d - p) / c)
}

/// Closed form for `f = A C(d,k) x0^{d-k} x1^k`; the same for both fields.
pub fn norm_monomial(cls: &ExceptionalClass, d: usize) -> Result<f64, ExceptionalError> {
    match *cls {
        ExceptionalClass::Monomial { amplitude, k } => {
            let (df, kf) = (d as f64, k as f64);
            let t0 = if k == d { 1.0 } else { (1.0 - kf / df).powf((df - kf) / 2.0) };
            let t1 = if k == 0 { 1.0 } else { (kf / df).powf(kf / 2.0) };
            Ok(amplitude.norm() * binom(d, k) * t0 * t1)
        }
        _ => Err(ExceptionalError::WrongKind),
    }
}

/// Monomial closed form packaged with its witness.
pub fn monomial_result(cls: &ExceptionalClass, state: &QubitState, field: Field) -> Result<SpectralResult, ExceptionalError> {
    let ExceptionalClass::Monomial { amplitude, k } = *cls else {
        return Err(ExceptionalError::WrongKind);
    };
    let d = state.d();
    let sigma = norm_monomial(cls, d)?;
    let r0 = (1.0 - k as f64 / d as f64).sqrt();
    let r1 = (k as f64 / d as f64).sqrt();
    let phase = if k == 0 || field == Field::Real { 0.0 } else { -amplitude.arg() / k as f64 };
    let witness = UnitVector2 { x0: C64::new(r0, 0.0), x1: C64::from_polar(r1, phase) };
    let root = if r0 == 0.0 { WitnessRoot::Infinity } else { WitnessRoot::Finite(witness.x1 / witness.x0) };
    Ok(SpectralResult {
        field,
        sigma,
        witness,
        witness_root: root,
        method: Method::ExceptionalMonomial,
        bracket_halfwidth: 0.0,
        cross_check: None,
    })
}

/// Real norm of a real two-root or circle form from the fixed points of the
/// Möbius map: the roots of `β z^2 - 2d z - α = 0`.
pub fn norm_two_root_real(cls: &ExceptionalClass, state: &QubitState) -> Result<SpectralResult, ExceptionalError> {
    if !state.is_real() {
        return Err(ExceptionalError::NotReal);
    }
    let d = state.d();
    let h = state.hs_norm();
    let unit = state.normalize()?;
    let result = |sigma: f64, w: UnitVector2, root: WitnessRoot| SpectralResult {
        field: Field::Real,
        sigma,
        witness: w,
        witness_root: root,
        method: Method::ExceptionalReal,
        bracket_halfwidth: 0.0,
        cross_check: None,
    };
    match *cls {
        ExceptionalClass::Circle { amplitude, .. } => {
            Ok(result(amplitude.norm(), UnitVector2 { x0: ONE, x1: ZERO }, WitnessRoot::Finite(ZERO)))
        }
        ExceptionalClass::TwoRoot { c, p, phase_s, .. } => {
            // In the real case e^{-is} = ±1; fold the sign into c.
            let signed_c = c * phase_s.cos().signum();
            let (alpha, beta) = mobius_coeffs(d, p, signed_c);
            let df = d as f64;
            let roots: Vec<f64> = if beta.abs() <= 1e-12 * (df + alpha.abs()) {
                vec![-alpha / (2.0 * df)]
            } else {
                let disc = (df * df + alpha * beta).max(0.0).sqrt();
                vec![(df + disc) / beta, (df - disc) / beta]
            };
            let pq = engine::build_pq(&unit);
            let mut sigma = unit.s(d).norm();
            let mut w = UnitVector2 { x0: ZERO, x1: ONE };
            let mut root = WitnessRoot::Infinity;
            for t in roots {
                let z = C64::new(t, 0.0);
                let lam = engine::lambda_q_at(&pq, d, z);
                if lam > sigma {
                    sigma = lam;
                    let n = (1.0 + t * t).sqrt();
                    w = UnitVector2 { x0: C64::new(1.0 / n, 0.0), x1: C64::new(t / n, 0.0) };
                    root = WitnessRoot::Finite(z);
                }
            }
            Ok(result(sigma * h, w, root))
        }
        _ => Err(ExceptionalError::WrongKind),
    }
}

/// `(S + εT)/‖S + εT‖` with `T` the unit tensor whose form is `x0^d`
/// (the shift `φ → φ + ε` on a unit state).
pub fn shift_perturbation(unit: &QubitState, eps: f64) -> Result<QubitState, StateError> {
    let mut s = unit.coeffs().to_vec();
    s[0] += eps;
    QubitState::new(unit.d(), s)?.normalize()
}

/// Norm-preserving perturbation that rescales `s_0` by `√(1+ε)` and `s_d` by
/// `√(1-ε)`; for the forms `(z^2-1)^m / A` it leaves the family for ε > 0.
pub fn balanced_perturbation(state: &QubitState, eps: f64) -> Result<QubitState, StateError> {
    let d = state.d();
    let mut s = state.coeffs().to_vec();
    s[0] *= (1.0 + eps).sqrt();
    s[d] *= (1.0 - eps).sqrt();
    QubitState::new(d, s)
}

/// Complex norm of a two-root form by perturbing out of the family and
/// running the generic engine; the true value lies within
/// `bracket_halfwidth` of the returned one.
pub fn norm_two_root_complex(
    cls: &ExceptionalClass,
    state: &QubitState,
    eps_target: f64,
    tol: &Tolerances,
) -> Result<SpectralResult, ExceptionalError> {
    if !matches!(cls, ExceptionalClass::TwoRoot { .. } | ExceptionalClass::Circle { .. }) {
        return Err(ExceptionalError::WrongKind);
    }
    let h = state.hs_norm();
    let unit = state.normalize()?;
    let mut eps = eps_target / 2.0;
    while eps > 1e-14 {
        let pert = shift_perturbation(&unit, eps)?;
        let vanishes = engine::fixed_point_vanishes(&pert, tol.exceptional_zero).unwrap_or(true);
        if !vanishes {
            if let Ok(r) = engine::spectral_norm(&pert, Field::Complex, tol) {
                if r.method == Method::Generic {
                    let dist: f64 = pert
                        .coeffs()
                        .iter()
                        .zip(unit.coeffs())
                        .enumerate()
                        .map(|(k, (a, b))| binom(unit.d(), k) * (a - b).norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    return Ok(SpectralResult {
                        field: Field::Complex,
                        sigma: r.sigma * h,
                        witness: r.witness,
                        witness_root: r.witness_root,
                        method: Method::ExceptionalBracket,
                        bracket_halfwidth: dist * h,
                        cross_check: r.cross_check.map(|c| c * h),
                    });
                }
            }
        }
        eps /= 2.0;
    }
    Err(ExceptionalError::BracketNotReached(eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(d: usize, s: &[f64]) -> QubitState {
        QubitState::from_real(d, s).unwrap()
    }

    /// `(z^2 - 1)^m`, normalized.
    pub(crate) fn family(m: usize) -> QubitState {
        let d = 2 * m;
        let mut s = vec![0.0; d + 1];
        for i in 0..=m {
            let coeff = binom(m, i) * if (m - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            s[2 * i] = coeff / binom(d, 2 * i);
        }
        real(d, &s).normalize().unwrap()
    }

    #[test]
    fn monomial_detection() {
        let s = real(3, &[0.0, 1.0 / 3f64.sqrt(), 0.0, 0.0]);
        let cls = detect_exceptional(&s, 1e-9).unwrap();
        assert!(matches!(cls, ExceptionalClass::Monomial { k: 1, .. }));
        assert!((norm_monomial(&cls, 3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn monomial_formula_values() {
        let cls = ExceptionalClass::Monomial { amplitude: ONE, k: 2 };
        assert!((norm_monomial(&cls, 4).unwrap() - 1.5).abs() < 1e-15);
        let zero = ExceptionalClass::Monomial { amplitude: ZERO, k: 2 };
        assert_eq!(norm_monomial(&zero, 4).unwrap(), 0.0);
        assert_eq!(norm_monomial(&ExceptionalClass::NotExceptional, 4), Err(ExceptionalError::WrongKind));
    }

    #[test]
    fn family_is_two_root() {
        let cls = detect_exceptional(&family(2), 1e-9).unwrap();
        match cls {
            ExceptionalClass::TwoRoot { c, p, phase_s, alpha, beta, .. } => {
                assert!((c - 1.0).abs() < 1e-6);
                assert_eq!(p, 2);
                // Either root may be labelled -a; both put s at 0 or π.
                assert!(phase_s.sin().abs() < 1e-6);
                assert!(alpha.abs() < 1e-6 && beta.abs() < 1e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generic_state_not_exceptional() {
        let a1 = real(3, &[0.3104, -0.4866, -0.2186, 0.2235]);
        assert_eq!(detect_exceptional(&a1, 1e-9).unwrap(), ExceptionalClass::NotExceptional);
    }

    #[test]
    fn circle_detection() {
        // (z^2 + 1)^2 = 1 + 2z^2 + z^4
        let s = real(4, &[1.0, 0.0, 2.0 / 6.0, 0.0, 1.0]);
        let cls = detect_exceptional(&s, 1e-9).unwrap();
        assert!(matches!(cls, ExceptionalClass::Circle { p: 2, .. }), "{cls:?}");
        let r = norm_two_root_real(&cls, &s).unwrap();
        assert!((r.sigma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_root_real_example() {
        // (z + 2)(z - 1/2)^2 = 1/2 + (-1)z + ... expanded: z^3 + z^2 - 7/4 z + 1/2
        let phi = [0.5, -1.75, 1.0, 1.0];
        let s: Vec<f64> = phi.iter().enumerate().map(|(j, c)| c / binom(3, j)).collect();
        let st = real(3, &s);
        let cls = detect_exceptional(&st, 1e-9).unwrap();
        let r = norm_two_root_real(&cls, &st).unwrap();
        // Dense grid over the real unit circle.
        let mut best: f64 = 0.0;
        let n = 200_000;
        for i in 0..n {
            let t = std::f64::consts::PI * i as f64 / n as f64;
            best = best.max(st.eval_form(C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0)).norm());
        }
        assert!((r.sigma - best).abs() < 1e-6, "{} vs {best}", r.sigma);
        assert!((r.sigma - 1.0758).abs() < 1e-3);
    }
}
