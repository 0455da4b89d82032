mod common;

use rand::Rng;
use specnorm::exceptional::{self, detect_exceptional, norm_monomial, norm_two_root_complex, norm_two_root_real, ExceptionalClass};
use specnorm::measures::{standard_basis_sigma, standard_basis_state, BasisIndex};
use specnorm::reference::two_root_family;
use specnorm::{binom, engine, oracle, Field, Method, QubitState, Tolerances, C64};

const ZERO_TOL: f64 = 1e-9;

/// Unit state with `φ = (z + a)^p (z + b)^{d-p}`, `a = c e^{-is}`, `b = -e^{-is}/c`.
fn two_root_state(d: usize, p: usize, c: f64, s: f64) -> QubitState {
    let e = C64::from_polar(1.0, -s);
    let (a, b) = (e * c, -e / c);
    let mut phi = vec![C64::new(1.0, 0.0)];
    for root_shift in std::iter::repeat_n(a, p).chain(std::iter::repeat_n(b, d - p)) {
        let mut next = vec![C64::new(0.0, 0.0); phi.len() + 1];
        for (k, &x) in phi.iter().enumerate() {
            next[k] += x * root_shift;
            next[k + 1] += x;
        }
        phi = next;
    }
    let coeffs = phi.iter().enumerate().map(|(k, &x)| x / binom(d, k)).collect();
    QubitState::new(d, coeffs).unwrap().normalize().unwrap()
}

fn rotate(state: &QubitState, theta: f64) -> QubitState {
    let s = state.coeffs().iter().enumerate().map(|(k, &x)| x * C64::from_polar(1.0, k as f64 * theta)).collect();
    QubitState::new(state.d(), s).unwrap()
}

#[test]
fn real_closed_form_matches_angular_grid() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let d = rng.random_range(3..=10);
        let p = rng.random_range(1..d);
        let c = rng.random_range(0.2..5.0);
        let s = two_root_state(d, p, c, 0.0);
        assert!(s.is_real());
        let cls = detect_exceptional(&s, ZERO_TOL).unwrap();
        assert!(matches!(cls, ExceptionalClass::TwoRoot { .. } | ExceptionalClass::Circle { .. }), "{cls:?}");
        let r = norm_two_root_real(&cls, &s).unwrap();
        let grid = common::grid_real_max(&s, 100_000);
        assert!((r.sigma - grid).abs() < 1e-5, "d {d} p {p} c {c}: {} vs grid {grid}", r.sigma);
        assert_eq!(r.method, Method::ExceptionalReal);
        assert!((s.eval_at(r.witness).norm() - r.sigma).abs() < 1e-9);
    }
}

#[test]
fn classification_is_rotation_invariant() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let d = rng.random_range(3..=9);
        let p = rng.random_range(1..d);
        let c = rng.random_range(0.3..3.0);
        let s = two_root_state(d, p, c, rng.random_range(0.0..std::f64::consts::TAU));
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let (a, b) = (detect_exceptional(&s, ZERO_TOL).unwrap(), detect_exceptional(&rotate(&s, theta), ZERO_TOL).unwrap());
        match (a, b) {
            (
                ExceptionalClass::TwoRoot { amplitude: a1, c: c1, p: p1, .. },
                ExceptionalClass::TwoRoot { amplitude: a2, c: c2, p: p2, .. },
            ) => {
                assert_eq!(p1, p2);
                assert!((c1 - c2).abs() < 1e-6 * c1.max(1.0));
                assert!((a1.norm() - a2.norm()).abs() < 1e-6 * a1.norm());
            }
            (x, y) => assert_eq!(x.kind(), y.kind()),
        }
    }
    let mono = QubitState::from_real(5, &[0.0, 0.0, 0.3, 0.0, 0.0, 0.0]).unwrap();
    let r = detect_exceptional(&rotate(&mono, 1.1), ZERO_TOL).unwrap();
    assert!(matches!(r, ExceptionalClass::Monomial { k: 2, .. }));
}

#[test]
fn bracket_contains_closed_form() {
    let tol = Tolerances::default();
    for (m, exact) in [(2, (3.0f64 / 8.0).sqrt()), (3, 5f64.sqrt() / 4.0), (4, (35.0f64 / 128.0).sqrt())] {
        let s = two_root_family(m);
        let cls = detect_exceptional(&s, ZERO_TOL).unwrap();
        let r = norm_two_root_complex(&cls, &s, 1e-4, &tol).unwrap();
        assert_eq!(r.method, Method::ExceptionalBracket);
        assert!(r.bracket_halfwidth > 0.0 && r.bracket_halfwidth <= 1e-4);
        assert!((r.sigma - exact).abs() <= r.bracket_halfwidth, "m {m}: {} ± {}", r.sigma, r.bracket_halfwidth);
    }
}

/// A unitary moves the two antipodal roots to `0` and `∞`, so every member
/// has the norm of the basis state with profile `(d - p, p)`.
#[test]
fn bracket_contains_rotated_basis_value() {
    let tol = Tolerances::default();
    let cfg = oracle::OracleConfig::default();
    let mut rng = common::rng(13);
    for _ in 0..10 {
        let d = rng.random_range(3..=8);
        let p = rng.random_range(1..d);
        let s = two_root_state(d, p, rng.random_range(0.3..3.0), rng.random_range(0.1..3.0));
        let exact = standard_basis_sigma(d, &BasisIndex::new(d, vec![d - p, p]).unwrap()).unwrap();
        let r = engine::spectral_norm(&s, Field::Complex, &tol).unwrap();
        assert_eq!(r.method, Method::ExceptionalBracket);
        assert!((r.sigma - exact).abs() <= r.bracket_halfwidth, "d {d} p {p}: {} ± {} vs {exact}", r.sigma, r.bracket_halfwidth);
        let (o, _) = oracle::oracle_max(&s, Field::Complex, &cfg);
        assert!(o <= exact + 1e-12);
    }
}

#[test]
fn monomial_matches_basis_closed_form() {
    let tol = Tolerances::default();
    // d = 2 forms never make the fixed-point polynomial vanish.
    for d in 3..=10 {
        for k in 0..=d {
            let j = BasisIndex::new(d, vec![d - k, k]).unwrap();
            let s = standard_basis_state(d, &j).unwrap();
            let closed = standard_basis_sigma(d, &j).unwrap();
            let cls = detect_exceptional(&s, ZERO_TOL).unwrap();
            if k == 0 || k == d {
                // Product states have a single projective root.
                assert_eq!(cls, ExceptionalClass::NotExceptional);
                assert!((engine::spectral_norm(&s, Field::Complex, &tol).unwrap().sigma - closed).abs() < 1e-12);
                continue;
            }
            assert!(matches!(cls, ExceptionalClass::Monomial { k: kk, .. } if kk == k), "d {d} k {k}: {cls:?}");
            assert!((norm_monomial(&cls, d).unwrap() - closed).abs() < 1e-12);
        }
    }
}

#[test]
fn generic_states_are_not_exceptional() {
    let mut rng = common::rng(14);
    for d in 3..=8 {
        let s = common::random_state(d, &mut rng);
        assert_eq!(detect_exceptional(&s, ZERO_TOL).unwrap(), ExceptionalClass::NotExceptional);
    }
}

#[test]
fn balanced_perturbation_keeps_norm() {
    let s = two_root_family(3);
    for eps in [0.5, 0.01, 1e-4] {
        let t = exceptional::balanced_perturbation(&s, eps).unwrap();
        assert!((t.hs_norm() - 1.0).abs() < 1e-12);
    }
}
