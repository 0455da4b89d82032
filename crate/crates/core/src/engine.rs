//! Spectral norms of symmetric d-qubit states through a univariate polynomial.
//!
//! With `φ(z) = Σ C(d,j) s_j z^j` write `p = φ'/d` and `q = φ - z p`. A unit
//! vector `x = x0 (1, z)` is, up to scaling, an anti-eigenvector of the tensor
//! exactly when `z̄ q(z) = p(z)`. Eliminating the conjugate gives the
//! holomorphic condition `z v(z) = u(z)` of degree at most `(d-1)^2 + 1`, whose
//! roots contain every anti-eigen direction. The spectral norm is the largest
//! anti-eigenvalue `|q(z)| / (1+|z|^2)^{(d-2)/2}` over those directions, or
//! `|s_d|` for the direction `(0, 1)`.

use nalgebra::{Matrix2, SymmetricEigen};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom;
use crate::exceptional::{self, ExceptionalClass, ExceptionalError};
use crate::poly::{self, DensePolynomial, PolyError, RootOptions};
use crate::state::{QubitState, StateError, UnitVector2, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Complex,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Generic,
    MatrixD2,
    ExceptionalMonomial,
    ExceptionalReal,
    ExceptionalBracket,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Generic => "generic",
            Method::MatrixD2 => "matrix-d2",
            Method::ExceptionalMonomial => "exceptional-monomial",
            Method::ExceptionalReal => "exceptional-real",
            Method::ExceptionalBracket => "exceptional-bracket",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessRoot {
    Finite(C64),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exceptional(#[from] ExceptionalError),
    #[error("state lies in the exceptional family (fixed-point polynomial vanishes)")]
    ExceptionalFamily,
    #[error("real spectral norm requested for a state with complex entries")]
    NotReal,
    #[error("internal inconsistency: max over anti-eigen roots {sigma_q:.12} vs fixed-point roots {sigma_v:.12}")]
    InternalInconsistency { sigma_q: f64, sigma_v: f64 },
    #[error("witness undefined: q vanishes at the root")]
    QVanishes,
    #[error("witness undefined: s_d vanishes")]
    SdVanishes,
}

/// Tolerances used across the pipeline. All apply to the state rescaled to
/// unit Hilbert–Schmidt norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Residual tolerance handed to the root finder.
    pub root: f64,
    /// Relative residual of `z̄q(z) - p(z)` admitted for anti-eigen roots.
    pub membership: f64,
    /// Allowed gap between the `λ_q` and `λ_v` formulas for the norm.
    pub cross_check: f64,
    /// Relative `|Im z|` below which a root counts as real.
    pub real_axis: f64,
    /// Fixed-point polynomial treated as zero below this coefficient size.
    pub exceptional_zero: f64,
    /// Target half-width for the perturbation bracket on exceptional states.
    pub bracket_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-8,
            membership: 1e-6,
            cross_check: 1e-6,
            real_axis: 1e-6,
            exceptional_zero: 1e-9,
            bracket_eps: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PqPair {
    pub p: DensePolynomial,
    pub q: DensePolynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UvPair {
    pub u: DensePolynomial,
    pub v: DensePolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateRoot {
    pub z: C64,
    pub multiplicity: usize,
    pub lambda_q: f64,
    pub lambda_v: f64,
    pub in_r: bool,
    pub in_rprime: bool,
    pub in_r1: bool,
    pub in_r1prime: bool,
    /// `|z̄q(z) - p(z)|` relative to its rounding scale.
    pub membership_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub field: Field,
    pub sigma: f64,
    pub witness: UnitVector2,
    pub witness_root: WitnessRoot,
    pub method: Method,
    pub bracket_halfwidth: f64,
    /// Norm recomputed from the second formula (`λ_v` over all fixed-point
    /// roots), when that formula applies.
    pub cross_check: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub fixed_point_degree: usize,
    /// Roots in R with positive anti-eigenvalue, counted with multiplicity,
    /// plus one for the direction `(0, 1)` when it is an anti-eigenvector.
    pub mu_reported: usize,
    /// The same count without the direction `(0, 1)`.
    pub finite_count: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub nonsingular: bool,
    /// Only evaluated for nonsingular states.
    pub bounds_satisfied: Option<bool>,
}

/// Builds `p(z) = Σ C(d-1,j) s_{j+1} z^j` and `q(z) = Σ C(d-1,j) s_j z^j`.
pub fn build_pq(state: &QubitState) -> PqPair {
    let d = state.d();
    let s = state.coeffs();
    let p = (0..d).map(|j| s[j + 1] * binom(d - 1, j)).collect();
    let q = (0..d).map(|j| s[j] * binom(d - 1, j)).collect();
    PqPair { p: DensePolynomial::new(p), q: DensePolynomial::new(q) }
}

/// `φ(z) = Σ C(d,j) s_j z^j`
pub fn build_phi(state: &QubitState) -> DensePolynomial {
    let d = state.d();
    DensePolynomial::new(
        state.coeffs().iter().enumerate().map(|(j, &c)| c * binom(d, j)).collect(),
    )
}

/// `u = Σ C(d-1,j) conj(s_{j+1}) p^j q^{d-1-j}` and
/// `v = Σ C(d-1,j) conj(s_j) p^j q^{d-1-j}`.
pub fn build_uv(state: &QubitState) -> UvPair {
    uv_with_envelope(state, 1.0).0
}

/// `u`, `v` built from `p/c`, `q/c` (so both carry a factor `c^{-(d-1)}`),
/// together with the coefficientwise magnitude sums used to tell
/// cancellation from genuinely small coefficients.
fn uv_with_envelope(state: &QubitState, c: f64) -> (UvPair, Vec<f64>, Vec<f64>) {
    let d = state.d();
    let s = state.coeffs();
    let m = d - 1;
    let pq = build_pq(state);
    let p_full: Vec<C64> = (0..d).map(|k| pq.p.coeff(k) / c).collect();
    let q_full: Vec<C64> = (0..d).map(|k| pq.q.coeff(k) / c).collect();
    let p_pows = powers(&p_full, m);
    let q_pows = powers(&q_full, m);
    let p_abs = powers_abs(&p_full, m);
    let q_abs = powers_abs(&q_full, m);

    let len = m * m + 1;
    let mut u = vec![ZERO; len];
    let mut v = vec![ZERO; len];
    let mut eu = vec![0.0; len];
    let mut ev = vec![0.0; len];
    for j in 0..=m {
        let wu = s[j + 1].conj() * binom(m, j);
        let wv = s[j].conj() * binom(m, j);
        if wu == ZERO && wv == ZERO {
            continue;
        }
        let (a, b) = (&p_pows[j], &q_pows[m - j]);
        let (aa, ba) = (&p_abs[j], &q_abs[m - j]);
        let (nu, nv) = (wu.norm(), wv.norm());
        for (i, (&x, &xa)) in a.iter().zip(aa).enumerate() {
            if xa == 0.0 {
                continue;
            }
            for (l, (&y, &ya)) in b.iter().zip(ba).enumerate() {
                let t = x * y;
                let ta = xa * ya;
                u[i + l] += wu * t;
                v[i + l] += wv * t;
                eu[i + l] += nu * ta;
                ev[i + l] += nv * ta;
            }
        }
    }
    (UvPair { u: DensePolynomial::new(u), v: DensePolynomial::new(v) }, eu, ev)
}

fn powers(base: &[C64], m: usize) -> Vec<Vec<C64>> {
    let mut out = vec![vec![ONE]];
    for k in 1..=m {
        let prev = &out[k - 1];
        let mut next = vec![ZERO; prev.len() + base.len() - 1];
        for (i, &x) in prev.iter().enumerate() {
            for (j, &y) in base.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        out.push(next);
    }
    out
}

fn powers_abs(base: &[C64], m: usize) -> Vec<Vec<f64>> {
    let b: Vec<f64> = base.iter().map(|c| c.norm()).collect();
    let mut out = vec![vec![1.0]];
    for k in 1..=m {
        let prev = &out[k - 1];
        let mut next = vec![0.0; prev.len() + b.len() - 1];
        for (i, &x) in prev.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        out.push(next);
    }
    out
}

/// The fixed-point polynomial `z v(z) - u(z)` up to a positive constant
/// factor, with rounding-level coefficients removed, and the largest
/// coefficient of the unscaled polynomial.
///
/// `p` and `q` are rescaled to unit largest coefficient before the powers are
/// expanded; at `d = 32` the unscaled magnitude sums overflow.
pub fn fixed_point_polynomial(state: &QubitState) -> (DensePolynomial, f64) {
    let d = state.d();
    let pq = build_pq(state);
    let c = pq.p.max_abs_coeff().max(pq.q.max_abs_coeff());
    let c = if c > 0.0 { c } else { 1.0 };
    let (uv, eu, ev) = uv_with_envelope(state, c);
    let raw = poly::poly_axpy(-ONE, &uv.u, &uv.v.shift(1));
    let env: Vec<f64> = (0..=(d - 1) * (d - 1) + 1)
        .map(|k| eu.get(k).copied().unwrap_or(0.0) + if k > 0 { ev.get(k - 1).copied().unwrap_or(0.0) } else { 0.0 })
        .collect();
    let factor = 4.0 * (d * d) as f64 * f64::EPSILON;
    let max = raw.max_abs_coeff() * c.powi((d - 1) as i32);
    (raw.trim_envelope(&env, factor), max)
}

/// Whether the normalized state makes the fixed-point polynomial vanish.
pub fn fixed_point_vanishes(state: &QubitState, zero_tol: f64) -> Result<bool, EngineError> {
    let unit = state.normalize()?;
    let (g, max) = fixed_point_polynomial(&unit);
    Ok(g.is_zero() || max <= zero_tol)
}

/// `Σ a_k z^k` for a polynomial of nominal degree `n`, returned as
/// `(w, ln_scale)` with value `w · e^{ln_scale}`. Outside the unit disc the
/// reversed polynomial is used, so nothing overflows.
fn eval_scaled(a: &DensePolynomial, n: usize, z: C64) -> (C64, f64) {
    let r = z.norm();
    if r <= 1.0 {
        return (a.eval(z), 0.0);
    }
    let w = z.inv();
    let acc = (0..=n).fold(ZERO, |acc, k| acc * w + a.coeff(k));
    (acc * C64::from_polar(1.0, n as f64 * z.arg()), n as f64 * r.ln())
}

/// `Σ |a_k| r^k` in the same scaled form as [`eval_scaled`].
fn eval_abs_scaled(a: &DensePolynomial, n: usize, r: f64) -> (f64, f64) {
    if r <= 1.0 {
        return (a.eval_abs(r), 0.0);
    }
    let w = 1.0 / r;
    let acc = (0..=n).fold(0.0, |acc, k| acc * w + a.coeff(k).norm());
    (acc, n as f64 * r.ln())
}

/// Values of `p` and `q` at `z` sharing one scale factor `e^{ln_scale}`.
struct PqAt {
    p: C64,
    q: C64,
    p_abs: f64,
    q_abs: f64,
    ln_scale: f64,
}

fn pq_at(pq: &PqPair, d: usize, z: C64) -> PqAt {
    let (p, ln_scale) = eval_scaled(&pq.p, d - 1, z);
    let (q, _) = eval_scaled(&pq.q, d - 1, z);
    let (p_abs, _) = eval_abs_scaled(&pq.p, d - 1, z.norm());
    let (q_abs, _) = eval_abs_scaled(&pq.q, d - 1, z.norm());
    PqAt { p, q, p_abs, q_abs, ln_scale }
}

fn membership_residual(at: &PqAt, z: C64) -> f64 {
    let g = z.conj() * at.q - at.p;
    let scale = z.norm() * at.q_abs + at.p_abs;
    if scale == 0.0 {
        0.0
    } else {
        g.norm() / scale
    }
}

/// `λ_q` at an arbitrary point, safe for large `|z|`.
pub fn lambda_q_at(pq: &PqPair, d: usize, z: C64) -> f64 {
    lambda_q(d, &pq_at(pq, d, z), z)
}

fn ln_weight(d: usize, z: C64) -> f64 {
    (d as f64 - 2.0) / 2.0 * z.norm_sqr().ln_1p()
}

/// `λ_q(z) = |q(z)| / (1+|z|^2)^{(d-2)/2}`.
fn lambda_q(d: usize, at: &PqAt, z: C64) -> f64 {
    if at.q == ZERO {
        return 0.0;
    }
    (at.q.norm().ln() + at.ln_scale - ln_weight(d, z)).exp()
}

/// `λ_v(z) = |v(z)|^{1/d} / (1+|z|^2)^{(d-2)/2}`, with `v` evaluated from
/// the values of `p` and `q` rather than from its expanded coefficients.
fn lambda_v(state: &QubitState, at: &PqAt, z: C64) -> f64 {
    let d = state.d();
    let m = d - 1;
    let big = at.p.norm().max(at.q.norm());
    if big == 0.0 {
        return 0.0;
    }
    let (ph, qh) = (at.p / big, at.q / big);
    let s = state.coeffs();
    let mut acc = ZERO;
    let mut pj = ONE;
    let qpows: Vec<C64> = std::iter::successors(Some(ONE), |x| Some(x * qh)).take(m + 1).collect();
    for j in 0..=m {
        acc += s[j].conj() * binom(m, j) * pj * qpows[m - j];
        pj *= ph;
    }
    if acc == ZERO {
        return 0.0;
    }
    let ln_v = acc.norm().ln() + m as f64 * (big.ln() + at.ln_scale);
    (ln_v / d as f64 - ln_weight(d, z)).exp()
}

/// Point evaluation of `z v - u` from the values of `p` and `q`, on the
/// scale of [`fixed_point_polynomial`]. Expanding the coefficients loses the
/// small roots to cancellation once `d` is large; evaluating through `p` and
/// `q` does not.
struct FixedPointEval {
    pq: PqPair,
    dp: DensePolynomial,
    dq: DensePolynomial,
    /// `(C(m,j) conj(s_j), C(m,j) conj(s_{j+1}))`.
    w: Vec<(C64, C64)>,
    d: usize,
    ln_c: f64,
}

/// Normalized values at one point. Every field except `ln_scale` is relative
/// to `e^{ln_scale}` raised to the appropriate power.
struct FixedPointAt {
    g: C64,
    dg: C64,
    /// Magnitude bound on the rounding error of `g`.
    noise: f64,
    /// The evaluation scale `T` with `noise = 2 eps T`.
    scale: f64,
    /// `ln` of the factor turning `g` into the coefficient-scale value.
    ln_scale: f64,
}

impl FixedPointEval {
    fn new(state: &QubitState, c: f64) -> Self {
        let d = state.d();
        let m = d - 1;
        let s = state.coeffs();
        let pq = build_pq(state);
        let w = (0..=m).map(|j| (s[j].conj() * binom(m, j), s[j + 1].conj() * binom(m, j))).collect();
        Self { dp: pq.p.derivative(), dq: pq.q.derivative(), pq, w, d, ln_c: c.ln() }
    }

    fn at(&self, z: C64) -> Option<FixedPointAt> {
        let d = self.d;
        let m = d - 1;
        let r = z.norm();
        let (p, ln_l) = eval_scaled(&self.pq.p, m, z);
        let (q, _) = eval_scaled(&self.pq.q, m, z);
        let (pa, _) = eval_abs_scaled(&self.pq.p, m, r);
        let (qa, _) = eval_abs_scaled(&self.pq.q, m, r);
        let n1 = m.saturating_sub(1);
        let (dp, ln_d) = eval_scaled(&self.dp, n1, z);
        let (dq, _) = eval_scaled(&self.dq, n1, z);
        let big = p.norm().max(q.norm());
        if big == 0.0 || !big.is_finite() {
            return None;
        }
        let (ph, qh) = (p / big, q / big);
        let dscale = (ln_d - ln_l).exp() / big;
        let (dph, dqh) = (dp * dscale, dq * dscale);
        let (ep, eq) = (d as f64 * pa / big, d as f64 * qa / big);
        let (pn, qn) = (ph.norm(), qh.norm());

        let pp: Vec<C64> = std::iter::successors(Some(ONE), |x| Some(x * ph)).take(m + 1).collect();
        let qp: Vec<C64> = std::iter::successors(Some(ONE), |x| Some(x * qh)).take(m + 1).collect();
        let pa_pow: Vec<f64> = std::iter::successors(Some(1.0), |x| Some(x * pn)).take(m + 1).collect();
        let qa_pow: Vec<f64> = std::iter::successors(Some(1.0), |x| Some(x * qn)).take(m + 1).collect();

        let (mut v, mut u, mut dv, mut du) = (ZERO, ZERO, ZERO, ZERO);
        let (mut sv, mut su, mut tv, mut tu) = (0.0, 0.0, 0.0, 0.0);
        for (j, &(wv, wu)) in self.w.iter().enumerate() {
            let mono = pp[j] * qp[m - j];
            let mut dmono = ZERO;
            let mut prop = 0.0;
            if j > 0 {
                dmono += pp[j - 1] * dph * qp[m - j] * j as f64;
                prop += j as f64 * pa_pow[j - 1] * qa_pow[m - j] * ep;
            }
            if j < m {
                dmono += pp[j] * qp[m - j - 1] * dqh * (m - j) as f64;
                prop += (m - j) as f64 * pa_pow[j] * qa_pow[m - j - 1] * eq;
            }
            let mag = pa_pow[j] * qa_pow[m - j];
            v += wv * mono;
            u += wu * mono;
            dv += wv * dmono;
            du += wu * dmono;
            sv += wv.norm() * mag;
            su += wu.norm() * mag;
            tv += wv.norm() * prop;
            tu += wu.norm() * prop;
        }
        let g = z * v - u;
        let dg = v + z * dv - du;
        let scale = (m + 2) as f64 * (r * sv + su) + r * tv + tu;
        let noise = 2.0 * f64::EPSILON * scale;
        let ln_scale = m as f64 * (big.ln() + ln_l - self.ln_c);
        Some(FixedPointAt { g, dg, noise, scale, ln_scale })
    }
}

impl poly::RootEvaluator for FixedPointEval {
    fn newton(&self, z: C64) -> (C64, bool) {
        match self.at(z) {
            Some(a) => {
                let small = a.g.norm() <= a.noise;
                if a.dg == ZERO {
                    (ZERO, small)
                } else {
                    (a.g / a.dg, small)
                }
            }
            None => (ZERO, true),
        }
    }

    fn relative_residual(&self, z: C64) -> f64 {
        match self.at(z) {
            Some(a) if a.scale > 0.0 => a.g.norm() / a.scale,
            _ => 0.0,
        }
    }

    fn ln_abs_bound(&self, z: C64) -> f64 {
        match self.at(z) {
            Some(a) => a.g.norm().max(a.noise).ln() + a.ln_scale,
            None => f64::NEG_INFINITY,
        }
    }
}

/// Every root of `z v - u`, annotated with both anti-eigenvalue formulas and
/// the membership flags. λ values refer to the input scale.
pub fn candidate_roots(state: &QubitState, tol: &Tolerances) -> Result<Vec<CandidateRoot>, EngineError> {
    let h = state.hs_norm();
    let unit = state.normalize()?;
    let (g, max) = fixed_point_polynomial(&unit);
    if g.is_zero() || max <= tol.exceptional_zero {
        return Err(EngineError::ExceptionalFamily);
    }
    let d = unit.d();
    let pq = build_pq(&unit);
    let c = pq.p.max_abs_coeff().max(pq.q.max_abs_coeff());
    let ev = FixedPointEval::new(&unit, if c > 0.0 { c } else { 1.0 });
    let roots = poly::roots_with_evaluator_full(&g, &ev, tol.root, RootOptions::default())?;
    Ok(roots
        .roots
        .iter()
        .map(|r| {
            let z = r.z;
            let at = pq_at(&pq, d, z);
            let res = membership_residual(&at, z);
            let in_r = res <= tol.membership;
            let real = z.im.abs() <= tol.real_axis * (1.0 + z.re.abs());
            CandidateRoot {
                z,
                multiplicity: r.multiplicity,
                lambda_q: lambda_q(d, &at, z) * h,
                lambda_v: lambda_v(&unit, &at, z) * h,
                in_r,
                in_rprime: in_r && real,
                in_r1: true,
                in_r1prime: real,
                membership_residual: res,
            }
        })
        .collect())
}

/// Real roots of `t q(t) - p(t)`, the critical points of
/// `|φ(t)| / (1+t^2)^{d/2}` on the real line. Requires a real state.
pub fn real_critical_points(state: &QubitState, tol: &Tolerances) -> Result<Vec<f64>, EngineError> {
    let pq = build_pq(state);
    let h = poly::poly_axpy(-ONE, &pq.p, &pq.q.shift(1));
    if h.is_zero() {
        return Ok(Vec::new());
    }
    if h.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let roots = poly::roots_all(&h, tol.root)?;
    let mut out = Vec::new();
    for r in &roots.roots {
        let z = r.z;
        let near_axis = z.im.abs() <= tol.real_axis * (1.0 + z.re.abs());
        let t = refine_real_root(&h, z.re);
        let projected = {
            let n = h.coeffs().len() - 1;
            let tz = C64::new(t, 0.0);
            let (v, _) = eval_scaled(&h, n, tz);
            let (sc, _) = eval_abs_scaled(&h, n, t.abs());
            sc == 0.0 || v.norm() <= 1e3 * f64::EPSILON * (n + 1) as f64 * sc
        };
        if near_axis || projected {
            out.push(t);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    Ok(out)
}

/// A few guarded real Newton steps.
fn refine_real_root(h: &DensePolynomial, t0: f64) -> f64 {
    let n = h.coeffs().len() - 1;
    let dh = h.derivative();
    let val = |t: f64| {
        let (v, ln) = eval_scaled(h, n, C64::new(t, 0.0));
        (v.norm(), ln)
    };
    // Compare residuals on a common scale: |h(t)| / Σ|h_k||t|^k.
    let rel = |t: f64| {
        let (v, _) = val(t);
        let (sc, _) = eval_abs_scaled(h, n, t.abs());
        if sc == 0.0 { 0.0 } else { v / sc }
    };
    let mut t = t0;
    let mut best = (rel(t), t);
    for _ in 0..4 {
        let zt = C64::new(t, 0.0);
        let (v, lv) = eval_scaled(h, n, zt);
        let (dv, ld) = eval_scaled(&dh, n.saturating_sub(1), zt);
        if dv.re == 0.0 {
            break;
        }
        let next = t - v.re / dv.re * (lv - ld).exp();
        if !next.is_finite() {
            break;
        }
        t = next;
        let r = rel(t);
        if r < best.0 {
            best = (r, t);
        }
    }
    best.1
}

/// Unit vector realising the anti-eigenvalue attached to `root`.
pub fn witness(state: &QubitState, root: WitnessRoot) -> Result<UnitVector2, EngineError> {
    let d = state.d();
    match root {
        WitnessRoot::Infinity => {
            let sd = state.s(d);
            if sd == ZERO {
                return Err(EngineError::SdVanishes);
            }
            let theta = -sd.arg() / d as f64;
            Ok(UnitVector2 { x0: ZERO, x1: C64::from_polar(1.0, theta) })
        }
        WitnessRoot::Finite(z) => {
            // Only the phase of x0 matters once x0 (1, z) is normalized.
            let at = pq_at(&build_pq(state), d, z);
            if at.q == ZERO || at.q.norm() <= 1e-13 * at.q_abs {
                return Err(EngineError::QVanishes);
            }
            let x0 = C64::from_polar(1.0, -at.q.arg() / d as f64);
            let n = (1.0 + z.norm_sqr()).sqrt();
            UnitVector2::normalized(x0 / n, x0 * (z / n)).ok_or(EngineError::QVanishes)
        }
    }
}

/// Complex or real spectral norm with a witness vector.
pub fn spectral_norm(state: &QubitState, field: Field, tol: &Tolerances) -> Result<SpectralResult, EngineError> {
    if field == Field::Real && !state.is_real() {
        return Err(EngineError::NotReal);
    }
    let h = state.hs_norm();
    if h == 0.0 {
        return Err(StateError::ZeroState.into());
    }
    let unit = state.normalize()?;
    let d = unit.d();
    let mut res = if d == 2 {
        matrix_d2(&unit, field)
    } else if unit.coeffs()[..d].iter().all(|&c| c == ZERO) {
        SpectralResult {
            field,
            sigma: unit.s(d).norm(),
            witness: infinity_witness(&unit, field)?,
            witness_root: WitnessRoot::Infinity,
            method: Method::Generic,
            bracket_halfwidth: 0.0,
            cross_check: None,
        }
    } else if fixed_point_vanishes(&unit, tol.exceptional_zero)? {
        exceptional_norm(&unit, field, tol)?
    } else {
        match field {
            Field::Complex => generic_complex(&unit, tol)?,
            Field::Real => generic_real(&unit, tol)?,
        }
    };
    res.sigma *= h;
    res.bracket_halfwidth *= h;
    res.cross_check = res.cross_check.map(|c| c * h);
    Ok(res)
}

fn infinity_witness(unit: &QubitState, field: Field) -> Result<UnitVector2, EngineError> {
    match field {
        Field::Complex => witness(unit, WitnessRoot::Infinity),
        Field::Real => Ok(UnitVector2 { x0: ZERO, x1: ONE }),
    }
}

fn exceptional_norm(unit: &QubitState, field: Field, tol: &Tolerances) -> Result<SpectralResult, EngineError> {
    let cls = exceptional::detect_exceptional(unit, tol.exceptional_zero)?;
    match (cls, field) {
        (ExceptionalClass::Monomial { .. }, _) => Ok(exceptional::monomial_result(&cls, unit, field)?),
        (ExceptionalClass::NotExceptional, _) => Err(EngineError::ExceptionalFamily),
        (_, Field::Real) => Ok(exceptional::norm_two_root_real(&cls, unit)?),
        (_, Field::Complex) => Ok(exceptional::norm_two_root_complex(&cls, unit, tol.bracket_eps, tol)?),
    }
}

fn generic_complex(unit: &QubitState, tol: &Tolerances) -> Result<SpectralResult, EngineError> {
    let d = unit.d();
    let cands = candidate_roots(unit, tol)?;
    let sd = unit.s(d).norm();
    let mut sigma_q = sd;
    let mut arg: Option<C64> = None;
    let mut sigma_v = sd;
    for c in &cands {
        sigma_v = sigma_v.max(c.lambda_v);
        if c.in_r && c.lambda_q > sigma_q {
            sigma_q = c.lambda_q;
            arg = Some(c.z);
        }
    }
    if (sigma_q - sigma_v).abs() > tol.cross_check {
        return Err(EngineError::InternalInconsistency { sigma_q, sigma_v });
    }
    let (witness_vec, root) = match arg {
        Some(z) => (witness(unit, WitnessRoot::Finite(z))?, WitnessRoot::Finite(z)),
        None => (witness(unit, WitnessRoot::Infinity)?, WitnessRoot::Infinity),
    };
    Ok(SpectralResult {
        field: Field::Complex,
        sigma: sigma_q,
        witness: witness_vec,
        witness_root: root,
        method: Method::Generic,
        bracket_halfwidth: 0.0,
        cross_check: Some(sigma_v),
    })
}

fn generic_real(unit: &QubitState, tol: &Tolerances) -> Result<SpectralResult, EngineError> {
    let d = unit.d();
    let pq = build_pq(unit);
    let mut sigma = unit.s(d).norm();
    let mut arg: Option<f64> = None;
    for t in real_critical_points(unit, tol)? {
        let z = C64::new(t, 0.0);
        let lam = lambda_q(d, &pq_at(&pq, d, z), z);
        if lam > sigma {
            sigma = lam;
            arg = Some(t);
        }
    }
    // Second formula: λ_v over the real fixed-point roots (diagnostic only).
    let cross = candidate_roots(unit, tol).ok().map(|cands| {
        cands
            .iter()
            .filter(|c| c.in_r1prime)
            .map(|c| c.lambda_v)
            .fold(unit.s(d).norm(), f64::max)
    });
    let (w, root) = match arg {
        Some(t) => {
            let n = (1.0 + t * t).sqrt();
            (UnitVector2 { x0: C64::new(1.0 / n, 0.0), x1: C64::new(t / n, 0.0) }, WitnessRoot::Finite(C64::new(t, 0.0)))
        }
        None => (UnitVector2 { x0: ZERO, x1: ONE }, WitnessRoot::Infinity),
    };
    Ok(SpectralResult {
        field: Field::Real,
        sigma,
        witness: w,
        witness_root: root,
        method: Method::Generic,
        bracket_halfwidth: 0.0,
        cross_check: cross,
    })
}

/// `d = 2`: `f(x) = xᵀ M x` with `M = [[s0, s1], [s1, s2]]`.
fn matrix_d2(unit: &QubitState, field: Field) -> SpectralResult {
    let s = unit.coeffs();
    let (sigma, w) = match field {
        Field::Complex => {
            let m = Matrix2::new(s[0], s[1], s[1], s[2]);
            let svd = m.svd(true, true);
            let (imax, sigma) = if svd.singular_values[0] >= svd.singular_values[1] {
                (0, svd.singular_values[0])
            } else {
                (1, svd.singular_values[1])
            };
            let w = if sigma == 0.0 {
                UnitVector2 { x0: ONE, x1: ZERO }
            } else {
                // y ↦ conj(M y)/σ is an antilinear involution on the top
                // singular space; y + A(y) is a fixed point, so yᵀMy = σ|y|².
                let vt = svd.v_t.expect("requested");
                let v = [vt[(imax, 0)].conj(), vt[(imax, 1)].conj()];
                let a = |y: [C64; 2]| {
                    [
                        (m[(0, 0)] * y[0] + m[(0, 1)] * y[1]).conj() / sigma,
                        (m[(1, 0)] * y[0] + m[(1, 1)] * y[1]).conj() / sigma,
                    ]
                };
                let av = a(v);
                let y1 = [v[0] + av[0], v[1] + av[1]];
                let y2 = [C64::i() * (v[0] - av[0]), C64::i() * (v[1] - av[1])];
                let pick = if y1[0].norm_sqr() + y1[1].norm_sqr() >= y2[0].norm_sqr() + y2[1].norm_sqr() { y1 } else { y2 };
                UnitVector2::normalized(pick[0], pick[1]).unwrap_or(UnitVector2 { x0: ONE, x1: ZERO })
            };
            (sigma, w)
        }
        Field::Real => {
            let m = Matrix2::new(s[0].re, s[1].re, s[1].re, s[2].re);
            let eig = SymmetricEigen::new(m);
            let i = if eig.eigenvalues[0].abs() >= eig.eigenvalues[1].abs() { 0 } else { 1 };
            let col = eig.eigenvectors.column(i);
            let w = UnitVector2::normalized(C64::new(col[0], 0.0), C64::new(col[1], 0.0))
                .unwrap_or(UnitVector2 { x0: ONE, x1: ZERO });
            (eig.eigenvalues[i].abs(), w)
        }
    };
    let root = if w.x0 == ZERO { WitnessRoot::Infinity } else { WitnessRoot::Finite(w.x1 / w.x0) };
    SpectralResult {
        field,
        sigma,
        witness: w,
        witness_root: root,
        method: Method::MatrixD2,
        bracket_halfwidth: 0.0,
        cross_check: None,
    }
}

/// Whether `F(x) = (F0, F1)` with `F0 ~ q`, `F1 ~ p` vanishes only at `x = 0`,
/// tested through the resultant of the two binary forms of degree `d-1`.
pub fn is_nonsingular(state: &QubitState) -> bool {
    let d = state.d();
    let pq = build_pq(state);
    let a: Vec<C64> = (0..d).map(|k| pq.q.coeff(k)).collect();
    let b: Vec<C64> = (0..d).map(|k| pq.p.coeff(k)).collect();
    let bound = poly::sylvester_hadamard_bound(&a, &b);
    if bound == 0.0 {
        return false;
    }
    poly::sylvester_resultant(&a, &b).norm() > 1e-10 * bound
}

/// Root census of the fixed-point polynomial against the counting bounds
/// `⌈((d-1)^2 - 1)/d⌉ ≤ μ ≤ (d-1)^2 + 1`.
pub fn anti_eigen_census(state: &QubitState, tol: &Tolerances) -> Result<Census, EngineError> {
    let unit = state.normalize()?;
    let d = unit.d();
    let (g, max) = fixed_point_polynomial(&unit);
    if g.is_zero() || max <= tol.exceptional_zero {
        return Err(EngineError::ExceptionalFamily);
    }
    let cands = candidate_roots(&unit, tol)?;
    let finite_count: usize = cands
        .iter()
        .filter(|c| c.in_r && c.lambda_q > 1e-12)
        .map(|c| c.multiplicity)
        .sum();
    let at_infinity = unit.s(d - 1).norm() <= 1e-12 && unit.s(d).norm() > 1e-12;
    let mu = finite_count + usize::from(at_infinity);
    let m = (d - 1) * (d - 1);
    let lower = (m - 1).div_ceil(d);
    let upper = m + 1;
    let nonsingular = is_nonsingular(&unit);
    Ok(Census {
        fixed_point_degree: g.degree().unwrap_or(0),
        mu_reported: mu,
        finite_count,
        lower_bound: lower,
        upper_bound: upper,
        nonsingular,
        bounds_satisfied: nonsingular.then_some(lower <= mu && mu <= upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(d: usize, s: &[f64]) -> QubitState {
        QubitState::from_real(d, s).unwrap()
    }

    #[test]
    fn pq_examples() {
        let pq = build_pq(&real(3, &[1.0, 0.0, 0.0, 0.0]));
        assert!(pq.p.is_zero());
        assert_eq!(pq.q, DensePolynomial::from_real(&[1.0]));

        let pq = build_pq(&real(3, &[0.0, 0.5, 0.0, -0.5]));
        assert_eq!(pq.p, DensePolynomial::from_real(&[0.5, 0.0, -0.5]));
        assert_eq!(pq.q, DensePolynomial::from_real(&[0.0, 1.0]));

        let r = 1.0 / 3f64.sqrt();
        let pq = build_pq(&real(3, &[0.0, 0.0, r, 0.0]));
        assert_eq!(pq.p, DensePolynomial::from_real(&[0.0, 2.0 * r]));
        assert_eq!(pq.q, DensePolynomial::from_real(&[0.0, 0.0, r]));
    }

    #[test]
    fn uv_examples() {
        let uv = build_uv(&real(3, &[1.0, 0.0, 0.0, 0.0]));
        assert!(uv.u.is_zero());
        assert_eq!(uv.v, DensePolynomial::from_real(&[1.0]));

        let uv = build_uv(&real(3, &[1.0, 0.0, 0.0, 1.0]));
        assert_eq!(uv.u, DensePolynomial::monomial(ONE, 4));
        assert_eq!(uv.v, DensePolynomial::from_real(&[1.0]));
    }

    #[test]
    fn pq_relation_to_phi() {
        let s = QubitState::new(4, vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.4), C64::new(0.1, 0.0), C64::new(0.0, -0.3), C64::new(0.25, 0.05)]).unwrap();
        let pq = build_pq(&s);
        let phi = build_phi(&s);
        let dphi = phi.derivative();
        for k in 0..4 {
            assert!((dphi.coeff(k) - pq.p.coeff(k) * 4.0).norm() < 1e-14);
        }
        // q = φ - z φ'/d
        let zp = pq.p.shift(1);
        for k in 0..=4 {
            assert!((phi.coeff(k) - zp.coeff(k) - pq.q.coeff(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn product_state_and_infinity() {
        let tol = Tolerances::default();
        let r = spectral_norm(&real(3, &[0.0, 0.0, 0.0, 0.7]), Field::Complex, &tol).unwrap();
        assert!((r.sigma - 0.7).abs() < 1e-15);
        assert_eq!(r.witness_root, WitnessRoot::Infinity);
        let c = QubitState::new(3, vec![ZERO, ZERO, ZERO, C64::new(0.0, 2.0)]).unwrap();
        let r = spectral_norm(&c, Field::Complex, &tol).unwrap();
        assert!((r.sigma - 2.0).abs() < 1e-14);
        assert!((c.eval_at(r.witness) - C64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn witness_examples() {
        let s = real(3, &[1.0, 0.0, 0.0, 1.0]);
        let w = witness(&s, WitnessRoot::Finite(ZERO)).unwrap();
        assert!((w.x0 - ONE).norm() < 1e-15 && w.x1.norm() < 1e-15);
        let w = witness(&s, WitnessRoot::Infinity).unwrap();
        assert!(w.x0.norm() < 1e-15 && (w.x1 - ONE).norm() < 1e-15);

        let a2 = real(3, &[0.0, 0.5, 0.0, -0.5]);
        let w = witness(&a2, WitnessRoot::Finite(C64::i())).unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-12);
        assert!((a2.eval_at(w).norm() - 0.5f64.sqrt()).abs() < 1e-6);

        let dicke = real(3, &[0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0]);
        assert_eq!(witness(&dicke, WitnessRoot::Finite(ZERO)), Err(EngineError::QVanishes));
        assert_eq!(witness(&dicke, WitnessRoot::Infinity), Err(EngineError::SdVanishes));
    }

    #[test]
    fn nonsingularity_examples() {
        assert!(is_nonsingular(&real(3, &[1.0, 0.0, 0.0, 1.0])));
        assert!(!is_nonsingular(&real(3, &[1.0, 0.0, 0.0, 0.0])));
        assert!(!is_nonsingular(&real(3, &[0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0])));
    }

    #[test]
    fn d2_closed_forms() {
        let tol = Tolerances::default();
        // s = (1, 0, -1)/√2: f = (x0² - x1²)/√2, σ = 1/√2 both fields.
        let h = 0.5f64.sqrt();
        let s = real(2, &[h, 0.0, -h]);
        for f in [Field::Complex, Field::Real] {
            let r = spectral_norm(&s, f, &tol).unwrap();
            assert!((r.sigma - h).abs() < 1e-14);
            assert!((s.eval_at(r.witness).norm() - h).abs() < 1e-14);
            assert_eq!(r.method, Method::MatrixD2);
        }
        // s1 only: f = 2 s1 x0 x1, σ_C = σ_R = |s1|.
        let s = QubitState::new(2, vec![ZERO, C64::new(0.3, 0.4), ZERO]).unwrap();
        let r = spectral_norm(&s, Field::Complex, &tol).unwrap();
        assert!((r.sigma - 0.5).abs() < 1e-14);
        assert!((s.eval_at(r.witness).norm() - 0.5).abs() < 1e-12);
    }
}
