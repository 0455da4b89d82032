//! The `compute`, `oracle` and `census` reports.

use std::fmt::Write as _;

use serde::Serialize;
use specnorm::engine::{self, Census, CandidateRoot};
use specnorm::exceptional::{detect_exceptional, ExceptionalClass};
use specnorm::measures::MeasureReport;
use specnorm::oracle::{oracle_max, OracleConfig};
use specnorm::{EngineError, Field, QubitState, SpectralResult, Tolerances, UnitVector2, WitnessRoot, C64};

use crate::error::CliError;

/// Distance from unit norm below which η is reported.
const UNIT_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Request {
    pub fields: Vec<Field>,
    pub tol: Tolerances,
    pub roots: bool,
    pub oracle: bool,
    pub oracle_cfg: OracleConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub d: usize,
    pub s: Vec<[f64; 2]>,
}

impl InputEcho {
    fn of(state: &QubitState) -> Self {
        Self { d: state.d(), s: state.coeffs().iter().map(|c| [c.re, c.im]).collect() }
    }
}

fn pair(c: C64) -> [f64; 2] {
    [c.re, c.im]
}

fn witness_pairs(w: &UnitVector2) -> [[f64; 2]; 2] {
    [pair(w.x0), pair(w.x1)]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum RootPoint {
    Finite([f64; 2]),
    Named(&'static str),
}

impl From<WitnessRoot> for RootPoint {
    fn from(r: WitnessRoot) -> Self {
        match r {
            WitnessRoot::Finite(z) => RootPoint::Finite(pair(z)),
            WitnessRoot::Infinity => RootPoint::Named("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldReport {
    pub field: Field,
    pub sigma: f64,
    pub method: &'static str,
    pub witness: [[f64; 2]; 2],
    pub witness_root: RootPoint,
    pub bracket_halfwidth: f64,
    pub cross_check: Option<f64>,
}

impl From<&SpectralResult> for FieldReport {
    fn from(r: &SpectralResult) -> Self {
        Self {
            field: r.field,
            sigma: r.sigma,
            method: r.method.as_str(),
            witness: witness_pairs(&r.witness),
            witness_root: r.witness_root.into(),
            bracket_halfwidth: r.bracket_halfwidth,
            cross_check: r.cross_check,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    pub z: [f64; 2],
    pub multiplicity: usize,
    pub lambda_q: f64,
    pub lambda_v: f64,
    pub in_r: bool,
    pub real: bool,
    pub membership_residual: f64,
}

impl From<&CandidateRoot> for RootReport {
    fn from(c: &CandidateRoot) -> Self {
        Self {
            z: pair(c.z),
            multiplicity: c.multiplicity,
            lambda_q: c.lambda_q,
            lambda_v: c.lambda_v,
            in_r: c.in_r,
            real: c.in_r1prime,
            membership_residual: c.membership_residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub fixed_point_degree: usize,
    pub mu_reported: usize,
    pub finite_count: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub nonsingular: bool,
    pub bounds_satisfied: Option<bool>,
}

impl From<Census> for CensusReport {
    fn from(c: Census) -> Self {
        Self {
            fixed_point_degree: c.fixed_point_degree,
            mu_reported: c.mu_reported,
            finite_count: c.finite_count,
            lower_bound: c.lower_bound,
            upper_bound: c.upper_bound,
            nonsingular: c.nonsingular,
            bounds_satisfied: c.bounds_satisfied,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub field: Field,
    pub value: f64,
    pub argmax: [[f64; 2]; 2],
    pub restarts: usize,
    pub seed: u64,
}

fn run_oracle(state: &QubitState, field: Field, cfg: &OracleConfig) -> OracleReport {
    let (value, x) = oracle_max(state, field, cfg);
    OracleReport { field, value, argmax: witness_pairs(&x), restarts: cfg.restarts, seed: cfg.seed }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: InputEcho,
    pub hs_norm: f64,
    pub sigma_complex: Option<f64>,
    pub sigma_real: Option<f64>,
    pub results: Vec<FieldReport>,
    pub eta: Option<f64>,
    pub eta_rel: Option<f64>,
    pub exceptional: ExceptionalClass,
    pub census: Option<CensusReport>,
    pub roots: Option<Vec<RootReport>>,
    pub oracle: Option<Vec<OracleReport>>,
    pub tolerances: Tolerances,
}

fn check_fields(state: &QubitState, req: &Request) -> Result<(), CliError> {
    if req.fields.contains(&Field::Real) && !state.is_real() {
        return Err(CliError::Input("real field requested for a state with complex entries".into()));
    }
    if state.is_zero() {
        return Err(CliError::Input("the zero state has no normalized form".into()));
    }
    Ok(())
}

fn census(state: &QubitState, tol: &Tolerances) -> Result<Option<CensusReport>, CliError> {
    match engine::anti_eigen_census(state, tol) {
        Ok(c) => Ok(Some(c.into())),
        Err(EngineError::ExceptionalFamily) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn compute(state: &QubitState, req: &Request) -> Result<Report, CliError> {
    check_fields(state, req)?;
    let tol = &req.tol;
    let results = req
        .fields
        .iter()
        .map(|&f| engine::spectral_norm(state, f, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let sigma_of = |f: Field| results.iter().find(|r| r.field == f).map(|r| r.sigma);
    let hs = state.hs_norm();
    let measures = match sigma_of(Field::Complex) {
        Some(s) if (hs - 1.0).abs() <= UNIT_TOL && state.d() >= 1 => Some(MeasureReport::from_sigma(state.d(), s)),
        _ => None,
    };
    let exceptional = detect_exceptional(state, tol.exceptional_zero).map_err(|e| CliError::Engine(e.to_string()))?;
    let roots = if req.roots {
        match engine::candidate_roots(state, tol) {
            Ok(c) => Some(c.iter().map(RootReport::from).collect()),
            Err(EngineError::ExceptionalFamily) => Some(Vec::new()),
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let oracle = req.oracle.then(|| req.fields.iter().map(|&f| run_oracle(state, f, &req.oracle_cfg)).collect());
    Ok(Report {
        tool: "specnorm",
        version: env!("CARGO_PKG_VERSION"),
        input: InputEcho::of(state),
        hs_norm: hs,
        sigma_complex: sigma_of(Field::Complex),
        sigma_real: sigma_of(Field::Real),
        results: results.iter().map(FieldReport::from).collect(),
        eta: measures.map(|m| m.eta),
        eta_rel: measures.map(|m| m.eta_rel),
        exceptional,
        census: census(state, tol)?,
        roots,
        oracle,
        tolerances: *tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOnly {
    pub input: InputEcho,
    pub oracle: Vec<OracleReport>,
}

pub fn oracle(state: &QubitState, req: &Request) -> Result<OracleOnly, CliError> {
    check_fields(state, req)?;
    let oracle = req.fields.iter().map(|&f| run_oracle(state, f, &req.oracle_cfg)).collect();
    Ok(OracleOnly { input: InputEcho::of(state), oracle })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusOnly {
    pub input: InputEcho,
    pub exceptional: ExceptionalClass,
    pub census: Option<CensusReport>,
}

pub fn census_only(state: &QubitState, req: &Request) -> Result<CensusOnly, CliError> {
    check_fields(state, req)?;
    let exceptional = detect_exceptional(state, req.tol.exceptional_zero).map_err(|e| CliError::Engine(e.to_string()))?;
    Ok(CensusOnly { input: InputEcho::of(state), exceptional, census: census(state, &req.tol)? })
}

fn fmt_c(z: [f64; 2]) -> String {
    let sign = if z[1] < 0.0 && format!("{:.6}", -z[1]) != "0.000000" { '-' } else { '+' };
    format!("{:.6} {sign} {:.6}i", z[0], z[1].abs())
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Complex => "complex",
        Field::Real => "real",
    }
}

pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "d = {}   hs_norm = {:.10}   exceptional = {}", r.input.d, r.hs_norm, r.exceptional.kind());
    let _ = writeln!(out, "{:<8} {:>14} {:>10}  {:<22} witness root", "field", "sigma", "±", "method");
    for f in &r.results {
        let root = match &f.witness_root {
            RootPoint::Finite(z) => fmt_c(*z),
            RootPoint::Named(n) => n.to_string(),
        };
        let _ = writeln!(out, "{:<8} {:>14.10} {:>10.2e}  {:<22} {root}", field_name(f.field), f.sigma, f.bracket_halfwidth, f.method);
    }
    if let (Some(e), Some(er)) = (r.eta, r.eta_rel) {
        let _ = writeln!(out, "eta = {e:.6}   eta_rel = {er:.6}");
    }
    if let Some(c) = &r.census {
        let _ = writeln!(
            out,
            "census: degree {}  mu {}  bounds [{}, {}]  nonsingular {}",
            c.fixed_point_degree, c.mu_reported, c.lower_bound, c.upper_bound, c.nonsingular
        );
    }
    if let Some(roots) = &r.roots {
        let _ = writeln!(out, "{:<30} {:<8} {:>10} {:>10}  in R", "z", "field", "lambda_q", "lambda_v");
        for root in roots {
            let kind = if root.real { "real" } else { "complex" };
            let mult = if root.multiplicity > 1 { format!(" (x{})", root.multiplicity) } else { String::new() };
            let _ = writeln!(
                out,
                "{:<30} {:<8} {:>10.6} {:>10.6}  {}{mult}",
                fmt_c(root.z),
                kind,
                root.lambda_q,
                root.lambda_v,
                if root.in_r { "yes" } else { "no" }
            );
        }
    }
    if let Some(o) = &r.oracle {
        for x in o {
            let _ = writeln!(out, "oracle {:<8} {:.10} ({} restarts, seed {})", field_name(x.field), x.value, x.restarts, x.seed);
        }
    }
    out
}

pub fn render_oracle_table(r: &OracleOnly) -> String {
    r.oracle
        .iter()
        .map(|x| format!("{:<8} {:.10} ({} restarts, seed {})\n", field_name(x.field), x.value, x.restarts, x.seed))
        .collect()
}

pub fn render_census_table(r: &CensusOnly) -> String {
    match &r.census {
        Some(c) => format!(
            "degree {}  mu {}  finite {}  bounds [{}, {}]  nonsingular {}  satisfied {}\n",
            c.fixed_point_degree,
            c.mu_reported,
            c.finite_count,
            c.lower_bound,
            c.upper_bound,
            c.nonsingular,
            c.bounds_satisfied.map_or("n/a".to_string(), |b| b.to_string())
        ),
        None => format!("exceptional ({}): fixed-point polynomial vanishes\n", r.exceptional.kind()),
    }
}
