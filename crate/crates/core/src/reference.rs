//! Bundled reference data: published example states with their norms and
//! root statistics, the entanglement table and the perturbation tables.

use serde::Deserialize;

use crate::engine::{self, EngineError, Field, Tolerances};
use crate::state::{QubitState, C64};

const APPENDIX: &str = include_str!("../data/appendix.toml");
const TABLES: &str = include_str!("../data/tables.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct RootRow {
    pub z: [f64; 2],
    pub lambda_q: f64,
    pub lambda_v: f64,
    pub in_r: bool,
}

impl RootRow {
    pub fn z(&self) -> C64 {
        C64::new(self.z[0], self.z[1])
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceExample {
    pub id: String,
    pub d: usize,
    /// Nonzero `s_k` as `(k, value)`.
    pub entries: Vec<(usize, f64)>,
    pub sigma_complex: f64,
    pub sigma_real: f64,
    /// Degree of the fixed-point polynomial.
    pub degree: usize,
    pub distinct_roots: usize,
    pub real_roots: usize,
    /// Distinct roots that fail the anti-eigen condition.
    pub excluded: Option<usize>,
    /// Distinct real anti-eigen roots.
    pub rprime: Option<usize>,
    #[serde(default, rename = "root")]
    pub roots: Vec<RootRow>,
}

impl ReferenceExample {
    pub fn state(&self) -> QubitState {
        let mut s = vec![0.0; self.d + 1];
        for &(k, v) in &self.entries {
            s[k] = v;
        }
        QubitState::from_real(self.d, &s).expect("bundled example is valid")
    }
}

/// What the engine reports for a reference example, in the same terms as
/// the stored values.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleCheck {
    pub sigma_complex: f64,
    pub sigma_real: f64,
    pub degree: usize,
    pub distinct_roots: usize,
    pub real_roots: usize,
    pub excluded: usize,
    pub rprime: usize,
    pub cross_check_ok: bool,
}

impl ExampleCheck {
    /// Names of the integer statistics that differ from `ex`. Fields the
    /// example leaves unstated are skipped.
    pub fn count_mismatches(&self, ex: &ReferenceExample) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |name: &str, want: Option<usize>, got: usize| {
            if let Some(w) = want {
                if w != got {
                    out.push(format!("{name} {got} (expected {w})"));
                }
            }
        };
        cmp("degree", Some(ex.degree), self.degree);
        cmp("distinct_roots", Some(ex.distinct_roots), self.distinct_roots);
        cmp("real_roots", Some(ex.real_roots), self.real_roots);
        cmp("excluded", ex.excluded, self.excluded);
        cmp("rprime", ex.rprime, self.rprime);
        out
    }
}

/// Runs both norms and the root census on a reference example.
pub fn check_example(ex: &ReferenceExample, tol: &Tolerances) -> Result<ExampleCheck, EngineError> {
    let state = ex.state();
    let c = engine::spectral_norm(&state, Field::Complex, tol)?;
    let r = engine::spectral_norm(&state, Field::Real, tol)?;
    let unit = state.normalize()?;
    let (g, _) = engine::fixed_point_polynomial(&unit);
    let cands = engine::candidate_roots(&state, tol)?;
    let cross_check_ok = c.cross_check.is_none_or(|v| (v - c.sigma).abs() <= tol.cross_check);
    Ok(ExampleCheck {
        sigma_complex: c.sigma,
        sigma_real: r.sigma,
        degree: g.degree().unwrap_or(0),
        distinct_roots: cands.len(),
        real_roots: cands.iter().filter(|c| c.in_r1prime).count(),
        excluded: cands.iter().filter(|c| !c.in_r).count(),
        rprime: cands.iter().filter(|c| c.in_rprime).count(),
        cross_check_ok,
    })
}

#[derive(Debug, Deserialize)]
struct AppendixFile {
    example: Vec<ReferenceExample>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct EntanglementRow {
    pub d: usize,
    pub eta: f64,
    pub eta_rel: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PerturbationTable {
    /// `d = 2m`.
    pub m: usize,
    pub exact: f64,
    /// One value per entry of [`Tables::eps`].
    pub sigma: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Tables {
    pub eps: Vec<f64>,
    pub entanglement: Vec<EntanglementRow>,
    pub perturbation: Vec<PerturbationTable>,
}

pub fn examples() -> Vec<ReferenceExample> {
    toml::from_str::<AppendixFile>(APPENDIX).expect("bundled data parses").example
}

pub fn example(id: &str) -> Option<ReferenceExample> {
    examples().into_iter().find(|e| e.id.eq_ignore_ascii_case(id))
}

pub fn tables() -> Tables {
    toml::from_str(TABLES).expect("bundled data parses")
}

/// The unit state with `φ = (z^2 - 1)^m / A(m)`, `d = 2m`.
pub fn two_root_family(m: usize) -> QubitState {
    let d = 2 * m;
    let mut s = vec![0.0; d + 1];
    for i in 0..=m {
        let sign = if (m - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        s[2 * i] = sign * crate::binom(m, i) / crate::binom(d, 2 * i);
    }
    QubitState::from_real(d, &s).and_then(|st| st.normalize()).expect("nonzero")
}
