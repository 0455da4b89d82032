//! Dense univariate complex polynomials: arithmetic, roots and resultants.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("root iteration did not converge (best residual {residual:.3e})")]
    DidNotConverge { residual: f64 },
}

/// Coefficients indexed by power of `z`. The last stored coefficient is
/// nonzero; the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DensePolynomial {
    coeffs: Vec<C64>,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

impl DensePolynomial {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `Σ |a_k| r^k`, the scale against which rounding in `eval` is measured.
    pub fn eval_abs(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, alpha: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * alpha).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Self { coeffs: v }
    }

    pub fn mul(&self, other: &Self) -> Self {
        poly_mul(self, other)
    }

    /// Drops every coefficient whose magnitude is at most `rel · max|a_k|`.
    pub fn trim_relative(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs_coeff();
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.norm() <= cut { ZERO } else { c })
                .collect(),
        )
    }

    /// Zeroes coefficients that are indistinguishable from rounding noise:
    /// `|a_k| <= factor · envelope[k]`, where `envelope[k]` bounds the
    /// magnitude of the terms that were summed to produce `a_k`.
    pub fn trim_envelope(&self, envelope: &[f64], factor: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let env = envelope.get(k).copied().unwrap_or(0.0);
                    if c.norm() <= factor * env {
                        ZERO
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }
}

/// Coefficient convolution.
pub fn poly_mul(a: &DensePolynomial, b: &DensePolynomial) -> DensePolynomial {
    if a.is_zero() || b.is_zero() {
        return DensePolynomial::zero();
    }
    let mut out = vec![ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == ZERO {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    DensePolynomial::new(out)
}

/// `alpha·a + b`
pub fn poly_axpy(alpha: C64, a: &DensePolynomial, b: &DensePolynomial) -> DensePolynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    DensePolynomial::new((0..n).map(|k| alpha * a.coeff(k) + b.coeff(k)).collect())
}

pub fn poly_eval(p: &DensePolynomial, z: C64) -> C64 {
    p.eval(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub z: C64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Root>,
    /// Largest `|p(z)| / Σ|a_k||z|^k` over the reported roots.
    pub residual: f64,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Sweep cap for the simultaneous iteration.
    pub max_sweeps: usize,
    /// Clusters wider than this (relative to `max(1, |center|)`) are never merged.
    pub cluster_cap: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_sweeps: 600, cluster_cap: 1e-4 }
    }
}

/// Point evaluations used by the root finder. Implementations may evaluate
/// the polynomial in any numerically convenient form; values may carry an
/// arbitrary positive factor as long as it is the same for every method at a
/// given point.
pub trait RootEvaluator {
    /// Newton correction `p(z)/p'(z)` and whether `|p(z)|` is already at the
    /// rounding level of the evaluation.
    fn newton(&self, z: C64) -> (C64, bool);
    /// `|p(z)|` relative to the magnitude scale of its evaluation.
    fn relative_residual(&self, z: C64) -> f64;
    /// `ln max(|p(z)|, rounding bound)`, on the same scale as the
    /// coefficient array handed to the root finder.
    fn ln_abs_bound(&self, z: C64) -> f64;
}

/// Horner evaluation of the coefficients, reversed outside the unit disc.
struct CoeffEval<'a> {
    a: &'a [C64],
}

impl RootEvaluator for CoeffEval<'_> {
    fn newton(&self, z: C64) -> (C64, bool) {
        newton_ratio(self.a, z)
    }

    fn relative_residual(&self, z: C64) -> f64 {
        relative_residual(self.a, z)
    }

    fn ln_abs_bound(&self, z: C64) -> f64 {
        let a = self.a;
        let n = a.len() - 1;
        let eps_level = 2.0 * (n as f64 + 1.0) * f64::EPSILON;
        let r = z.norm();
        if r <= 1.0 {
            eval_slice(a, z).norm().max(eps_level * eval_abs_slice(a, r)).ln()
        } else {
            let w = z.inv();
            let v = a.iter().fold(ZERO, |acc, &c| acc * w + c).norm();
            let s = a.iter().fold(0.0, |acc, c| acc * w.norm() + c.norm());
            v.max(eps_level * s).ln() + n as f64 * r.ln()
        }
    }
}

/// An evaluator for `p`, seen through the deflation `p(z) / z^k`.
struct Deflated<'a> {
    inner: &'a dyn RootEvaluator,
    k: usize,
}

impl RootEvaluator for Deflated<'_> {
    fn newton(&self, z: C64) -> (C64, bool) {
        let (ratio, small) = self.inner.newton(z);
        if self.k == 0 || ratio == ZERO {
            return (ratio, small);
        }
        // p'/p - k/z for the quotient.
        let inv = ratio.inv() - self.k as f64 / z;
        if inv == ZERO {
            return (ZERO, small);
        }
        (inv.inv(), small)
    }

    fn relative_residual(&self, z: C64) -> f64 {
        self.inner.relative_residual(z)
    }

    fn ln_abs_bound(&self, z: C64) -> f64 {
        self.inner.ln_abs_bound(z) - self.k as f64 * z.norm().ln()
    }
}

/// All roots of `p` with multiplicities.
///
/// Exact zero low-order coefficients are split off as a root at `0`. The rest
/// is solved by Aberth–Ehrlich iteration started from the Newton polygon of
/// the coefficient magnitudes, with a companion-matrix restart if it stalls.
/// Approximations whose inclusion disks overlap are merged into one root.
///
/// `tol` bounds the accepted residual relative to the rounding scale
/// `Σ|a_k||z|^k`; roots that converge under the rounding criterion always pass.
pub fn roots_all(p: &DensePolynomial, tol: f64) -> Result<RootSet, PolyError> {
    roots_with(p, tol, RootOptions::default())
}

pub fn roots_with(p: &DensePolynomial, tol: f64, opts: RootOptions) -> Result<RootSet, PolyError> {
    p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let zero_mult = p.coeffs.iter().take_while(|&&c| c == ZERO).count();
    let ev = CoeffEval { a: &p.coeffs[zero_mult..] };
    roots_with_evaluator(p, &ev, true, tol, opts)
}

/// Roots of the polynomial whose coefficients are `p`, iterating with point
/// values from `eval` instead of the coefficients. The coefficients supply
/// the degree, the multiplicity of the root at zero, the starting points and
/// the leading coefficient; `eval` evaluates the whole polynomial, zero roots
/// included.
pub fn roots_with_evaluator_full(
    p: &DensePolynomial,
    eval: &dyn RootEvaluator,
    tol: f64,
    opts: RootOptions,
) -> Result<RootSet, PolyError> {
    roots_with_evaluator(p, eval, false, tol, opts)
}

fn roots_with_evaluator(
    p: &DensePolynomial,
    eval: &dyn RootEvaluator,
    pre_deflated: bool,
    tol: f64,
    opts: RootOptions,
) -> Result<RootSet, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let zero_mult = p.coeffs.iter().take_while(|&&c| c == ZERO).count();
    let mut roots = Vec::new();
    if zero_mult > 0 {
        roots.push(Root { z: ZERO, multiplicity: zero_mult });
    }
    let rest = &p.coeffs[zero_mult..];
    let n = deg - zero_mult;
    let defl = Deflated { inner: eval, k: if pre_deflated { 0 } else { zero_mult } };
    let mut residual: f64 = 0.0;
    if n >= 1 {
        let approx = solve_deflated(rest, &defl, tol, opts)?;
        for r in cluster(rest, &defl, &approx, opts.cluster_cap) {
            residual = residual.max(defl.relative_residual(r.z));
            roots.push(r);
        }
    }
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(RootSet { roots, residual })
}

/// Roots of a polynomial with nonzero constant and leading coefficients.
fn solve_deflated(a: &[C64], ev: &dyn RootEvaluator, tol: f64, opts: RootOptions) -> Result<Vec<C64>, PolyError> {
    let n = a.len() - 1;
    if n == 1 {
        let mut z = vec![-a[0] / a[1]];
        // One Newton step against the evaluator, which may be more accurate.
        let (ratio, _) = ev.newton(z[0]);
        if (z[0] - ratio).is_finite() && ev.relative_residual(z[0] - ratio) < ev.relative_residual(z[0]) {
            z[0] -= ratio;
        }
        return Ok(z);
    }
    let accept = tol.max(64.0 * f64::EPSILON * n as f64);
    let mut z = newton_polygon_start(a);
    if aberth(ev, &mut z, opts.max_sweeps) && worst_residual(ev, &z) <= accept {
        return Ok(z);
    }
    // Restart from companion eigenvalues; keep the better of the two runs.
    let best_first = worst_residual(ev, &z);
    if let Some(mut zc) = companion_roots(a) {
        let ok = aberth(ev, &mut zc, opts.max_sweeps);
        let worst_c = worst_residual(ev, &zc);
        if ok && worst_c <= accept {
            return Ok(zc);
        }
        if worst_c < best_first {
            z = zc;
        }
    }
    let worst = worst_residual(ev, &z);
    if worst <= accept {
        Ok(z)
    } else {
        Err(PolyError::DidNotConverge { residual: worst })
    }
}

fn eval_slice(a: &[C64], z: C64) -> C64 {
    a.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

fn eval_abs_slice(a: &[C64], r: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// `|p(z)| / Σ|a_k||z|^k`, computed on the reversed polynomial outside the unit disc.
fn relative_residual(a: &[C64], z: C64) -> f64 {
    let r = z.norm();
    if r <= 1.0 {
        let s = eval_abs_slice(a, r);
        if s == 0.0 {
            0.0
        } else {
            eval_slice(a, z).norm() / s
        }
    } else {
        let w = z.inv();
        let v = a.iter().fold(ZERO, |acc, &c| acc * w + c);
        let s = a.iter().fold(0.0, |acc, c| acc * w.norm() + c.norm());
        v.norm() / s
    }
}

fn worst_residual(ev: &dyn RootEvaluator, z: &[C64]) -> f64 {
    z.iter().map(|&zi| ev.relative_residual(zi)).fold(0.0, f64::max)
}

/// Newton correction `p(z)/p'(z)` plus a flag telling whether `|p(z)|` is
/// already at the rounding level of the evaluation.
fn newton_ratio(a: &[C64], z: C64) -> (C64, bool) {
    let n = a.len() - 1;
    let eps_level = 2.0 * (n as f64 + 1.0) * f64::EPSILON;
    let r = z.norm();
    if r <= 1.0 {
        let mut p = a[n];
        let mut dp = ZERO;
        let mut s = a[n].norm();
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + a[k];
            s = s * r + a[k].norm();
        }
        let small = p.norm() <= eps_level * s;
        if dp == ZERO {
            return (ZERO, small);
        }
        (p / dp, small)
    } else {
        // p(z) = z^n rev(w) with w = 1/z, so p/p' = z / (n - w rev'(w)/rev(w)).
        let w = z.inv();
        let rw = w.norm();
        let mut q = a[0];
        let mut dq = ZERO;
        let mut s = a[0].norm();
        for &c in &a[1..] {
            dq = dq * w + q;
            q = q * w + c;
            s = s * rw + c.norm();
        }
        let small = q.norm() <= eps_level * s;
        if q == ZERO {
            return (ZERO, true);
        }
        let denom = n as f64 - w * dq / q;
        if denom == ZERO {
            return (ZERO, small);
        }
        (z / denom, small)
    }
}

/// Gauss–Seidel Aberth sweeps. Returns `true` once every approximation is at
/// the rounding level of the evaluation; two unconditional sweeps then
/// sharpen the simple roots.
fn aberth(ev: &dyn RootEvaluator, z: &mut [C64], max_sweeps: usize) -> bool {
    let n = z.len();
    let mut converged = vec![false; n];
    for _ in 0..max_sweeps {
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (ratio, small) = ev.newton(z[i]);
            if small || ratio == ZERO {
                converged[i] = true;
                continue;
            }
            aberth_step(z, i, ratio);
        }
        if converged.iter().all(|&c| c) {
            for _ in 0..2 {
                for i in 0..n {
                    let (ratio, _) = ev.newton(z[i]);
                    if ratio != ZERO {
                        aberth_step(z, i, ratio);
                    }
                }
            }
            return true;
        }
    }
    false
}

fn aberth_step(z: &mut [C64], i: usize, ratio: C64) {
    let zi = z[i];
    let mut sum = ZERO;
    for (j, &zj) in z.iter().enumerate() {
        if j != i {
            let diff = zi - zj;
            if diff != ZERO {
                sum += diff.inv();
            }
        }
    }
    let denom = ONE - ratio * sum;
    let step = if denom == ZERO { ratio } else { ratio / denom };
    let next = zi - step;
    if next.re.is_finite() && next.im.is_finite() {
        z[i] = next;
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, log|a_k|)`; each hull edge of width m contributes m points.
fn newton_polygon_start(a: &[C64]) -> Vec<C64> {
    let n = a.len() - 1;
    let pts: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != ZERO)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly above the chord.
            let cross = (k2 as f64 - k1 as f64) * (p.1 - l1) - (l2 - l1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let offset = 0.7;
    for w in hull.windows(2) {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let m = k2 - k1;
        let radius = ((l1 - l2) / m as f64).exp();
        for j in 0..m {
            let theta = std::f64::consts::TAU * (j as f64 / m as f64 + k1 as f64 / n as f64) + offset;
            out.push(C64::from_polar(radius, theta));
        }
    }
    out
}

/// Eigenvalues of the companion matrix of the monic normalization.
fn companion_roots(a: &[C64]) -> Option<Vec<C64>> {
    let n = a.len() - 1;
    let lead = a[n];
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = ONE;
    }
    for i in 0..n {
        m[(i, n - 1)] = -a[i] / lead;
    }
    let eig = m.schur().eigenvalues()?;
    let v: Vec<C64> = eig.iter().copied().collect();
    if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Some(v)
    } else {
        None
    }
}

/// Groups approximations whose inclusion disks overlap into multiple roots.
///
/// The disk radius for `z_i` is `n·|W_i|`, with `W_i` the Weierstrass
/// correction computed from a rounding-level bound on `|p(z_i)|`. Components
/// of the overlap graph whose diameter exceeds `cap·max(1, |center|)` stay split.
fn cluster(a: &[C64], ev: &dyn RootEvaluator, z: &[C64], cap: f64) -> Vec<Root> {
    let n = z.len();
    if n == 1 {
        return vec![Root { z: z[0], multiplicity: 1 }];
    }
    let lead_ln = a[n].norm().ln();
    let radius: Vec<f64> = (0..n)
        .map(|i| {
            let zi = z[i];
            let mut ln_den = lead_ln;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    ln_den += (zi - zj).norm().ln();
                }
            }
            (n as f64).ln() + ev.ln_abs_bound(zi) - ln_den
        })
        .map(f64::exp)
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= radius[i] + radius[j] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }

    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        if g.len() == 1 {
            out.push(Root { z: z[g[0]], multiplicity: 1 });
            continue;
        }
        let center = g.iter().map(|&i| z[i]).sum::<C64>() / g.len() as f64;
        let diameter = g
            .iter()
            .flat_map(|&i| g.iter().map(move |&j| (i, j)))
            .map(|(i, j)| (z[i] - z[j]).norm())
            .fold(0.0, f64::max);
        if diameter <= cap * center.norm().max(1.0) {
            let z = polish_multiple(a, center, g.len(), diameter);
            out.push(Root { z, multiplicity: g.len() });
        } else {
            out.extend(g.iter().map(|&i| Root { z: z[i], multiplicity: 1 }));
        }
    }
    out
}

/// Newton on the `(m-1)`-th derivative, where an `m`-fold root is simple.
/// Steps are kept inside the cluster's disk.
pub(crate) fn polish_multiple(a: &[C64], center: C64, m: usize, diameter: f64) -> C64 {
    let mut dk: Vec<C64> = a.to_vec();
    for _ in 0..(m - 1) {
        dk = dk.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect();
    }
    let d1: Vec<C64> = dk.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect();
    let mut z = center;
    let mut best = eval_slice(&dk, z).norm();
    for _ in 0..8 {
        let (f, df) = (eval_slice(&dk, z), eval_slice(&d1, z));
        if df == ZERO {
            break;
        }
        let next = z - f / df;
        let val = eval_slice(&dk, next).norm();
        if !next.is_finite() || (next - center).norm() > diameter.max(f64::EPSILON * center.norm()) || val >= best {
            break;
        }
        z = next;
        best = val;
    }
    z
}

/// Determinant of the Sylvester matrix built from `a` and `b` at their
/// nominal degrees `a.len()-1` and `b.len()-1` (leading zeros are kept, which
/// is what the resultant of two binary forms needs).
pub fn sylvester_resultant(a: &[C64], b: &[C64]) -> C64 {
    let m = a.len().saturating_sub(1);
    let n = b.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return ONE;
    }
    let mut s = DMatrix::<C64>::zeros(size, size);
    for row in 0..n {
        for (k, &c) in a.iter().rev().enumerate() {
            s[(row, row + k)] = c;
        }
    }
    for row in 0..m {
        for (k, &c) in b.iter().rev().enumerate() {
            s[(n + row, row + k)] = c;
        }
    }
    s.determinant()
}

/// Product of the Euclidean row norms of the Sylvester matrix, an upper bound
/// for `|sylvester_resultant(a, b)|` (Hadamard).
pub fn sylvester_hadamard_bound(a: &[C64], b: &[C64]) -> f64 {
    let m = a.len().saturating_sub(1) as i32;
    let n = b.len().saturating_sub(1) as i32;
    let na = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    na.powi(n) * nb.powi(m)
}

/// Resultant of two nonzero polynomials at their actual degrees.
pub fn resultant(p: &DensePolynomial, q: &DensePolynomial) -> Result<C64, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(sylvester_resultant(&p.coeffs, &q.coeffs))
}
