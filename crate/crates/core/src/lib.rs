//! Spectral norms and geometric entanglement of symmetric d-qubit states.
//!
//! A symmetric tensor in `S^d C^2` is handled through its binary form
//! `f(x0, x1)`. The complex and real spectral norms (the maxima of `|f|` on the
//! unit sphere of `C^2` or `R^2`) are obtained from the roots of a single
//! univariate polynomial of degree at most `(d-1)^2 + 1`, with closed forms for
//! `d = 2`, for the degenerate family where that polynomial vanishes, and for
//! standard-basis (Dicke) states.
//!
//! ```
//! use specnorm::{engine, Field, QubitState, Tolerances};
//!
//! // The W-like Dicke state with two excitations out of three.
//! let s = QubitState::from_real(3, &[0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0]).unwrap();
//! let r = engine::spectral_norm(&s, Field::Complex, &Tolerances::default()).unwrap();
//! assert!((r.sigma - 2.0 / 3.0).abs() < 1e-10);
//! ```

pub mod engine;
pub mod exceptional;
pub mod measures;
pub mod oracle;
pub mod poly;
pub mod reference;
pub mod state;

pub use engine::{EngineError, Field, Method, SpectralResult, Tolerances, WitnessRoot};
pub use poly::{DensePolynomial, PolyError, Root, RootSet};
pub use state::{QubitState, StateError, UnitVector2, C64};

/// Binomial coefficient as a float. Exact for the sizes used here (n < 60).
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}
