//! Regenerates the bundled reference tables and compares against the stored values.

use std::fmt::Write as _;

use serde::Serialize;
use specnorm::engine;
use specnorm::exceptional::{balanced_perturbation, detect_exceptional, norm_two_root_real};
use specnorm::measures::{self, standard_basis_state, BasisIndex};
use specnorm::reference::{check_example, examples, tables, two_root_family};
use specnorm::{Field, Tolerances};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Table1,
    Tables2To4,
    AppendixA,
}

impl Target {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "table1" => Ok(Target::Table1),
            "tables2to4" => Ok(Target::Tables2To4),
            "appendixA" | "appendixa" => Ok(Target::AppendixA),
            other => Err(CliError::UnknownTarget(other.to_string())),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Target::Table1 => "table1",
            Target::Tables2To4 => "tables2to4",
            Target::AppendixA => "appendixA",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub item: String,
    /// `None` for rows printed for reference only.
    pub computed: Option<f64>,
    pub expected: f64,
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub ok: Option<bool>,
}

impl Row {
    fn checked(item: String, computed: f64, expected: f64, tolerance: f64) -> Self {
        let dev = (computed - expected).abs();
        Self { item, computed: Some(computed), expected, deviation: Some(dev), tolerance: Some(tolerance), ok: Some(dev <= tolerance) }
    }

    fn reference(item: String, expected: f64) -> Self {
        Self { item, computed: None, expected, deviation: None, tolerance: None, ok: None }
    }

    fn count(item: String, computed: usize, expected: usize) -> Self {
        Self::checked(item, computed as f64, expected as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproduction {
    pub target: &'static str,
    pub rows: Vec<Row>,
    pub failures: usize,
}

fn table1(tol: &Tolerances) -> Result<Vec<Row>, CliError> {
    let t = tables();
    let mut rows = Vec::new();
    for e in &t.entanglement {
        if e.d == 3 {
            let s = standard_basis_state(3, &BasisIndex::new(3, vec![1, 2]).expect("valid")).expect("valid");
            let r = measures::report(&s, tol).map_err(|e| CliError::Engine(e.to_string()))?;
            rows.push(Row::checked("d 3 eta".into(), r.eta, e.eta, 1e-4));
            rows.push(Row::checked("d 3 eta_rel".into(), r.eta_rel, e.eta_rel, 1e-4));
        } else {
            rows.push(Row::reference(format!("d {} eta", e.d), e.eta));
            rows.push(Row::reference(format!("d {} eta_rel", e.d), e.eta_rel));
        }
    }
    Ok(rows)
}

fn tables2to4(tol: &Tolerances) -> Result<Vec<Row>, CliError> {
    let t = tables();
    let mut rows = Vec::new();
    for table in &t.perturbation {
        let d = 2 * table.m;
        let s = two_root_family(table.m);
        let cls = detect_exceptional(&s, tol.exceptional_zero).map_err(|e| CliError::Engine(e.to_string()))?;
        let exact = norm_two_root_real(&cls, &s).map_err(|e| CliError::Engine(e.to_string()))?;
        rows.push(Row::checked(format!("d {d} exact"), exact.sigma, table.exact, 1e-9));
        for (eps, want) in t.eps.iter().zip(&table.sigma) {
            let p = balanced_perturbation(&s, *eps).map_err(|e| CliError::Engine(e.to_string()))?;
            let r = engine::spectral_norm(&p, Field::Complex, tol)?;
            rows.push(Row::checked(format!("d {d} eps {eps}"), r.sigma, *want, 5e-5));
        }
    }
    Ok(rows)
}

fn appendix(tol: &Tolerances) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for ex in examples() {
        let c = check_example(&ex, tol)?;
        let id = &ex.id;
        rows.push(Row::checked(format!("{id} sigma_complex"), c.sigma_complex, ex.sigma_complex, 5e-4));
        rows.push(Row::checked(format!("{id} sigma_real"), c.sigma_real, ex.sigma_real, 5e-4));
        rows.push(Row::count(format!("{id} degree"), c.degree, ex.degree));
        rows.push(Row::count(format!("{id} distinct_roots"), c.distinct_roots, ex.distinct_roots));
        rows.push(Row::count(format!("{id} real_roots"), c.real_roots, ex.real_roots));
        if let Some(x) = ex.excluded {
            rows.push(Row::count(format!("{id} excluded"), c.excluded, x));
        }
        if let Some(x) = ex.rprime {
            rows.push(Row::count(format!("{id} rprime"), c.rprime, x));
        }
    }
    Ok(rows)
}

pub fn run(target: Target, tol: &Tolerances) -> Result<Reproduction, CliError> {
    let rows = match target {
        Target::Table1 => table1(tol)?,
        Target::Tables2To4 => tables2to4(tol)?,
        Target::AppendixA => appendix(tol)?,
    };
    let failures = rows.iter().filter(|r| r.ok == Some(false)).count();
    Ok(Reproduction { target: target.name(), rows, failures })
}

pub fn render_table(r: &Reproduction) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<26} {:>14} {:>12} {:>10} {:>8}  status", "item", "computed", "expected", "|dev|", "tol");
    for row in &r.rows {
        // Counts carry a zero tolerance and print as integers.
        let (pc, pe) = if row.tolerance == Some(0.0) { (0, 0) } else { (8, 6) };
        let num = |x: Option<f64>, prec: usize| x.map_or("-".to_string(), |v| format!("{v:.prec$}"));
        let dev = row.deviation.map_or("-".to_string(), |v| format!("{v:.2e}"));
        let tol = row.tolerance.map_or("-".to_string(), |v| format!("{v:.0e}"));
        let status = match row.ok {
            Some(true) => "ok",
            Some(false) => "DEVIATES",
            None => "reference",
        };
        let _ = writeln!(out, "{:<26} {:>14} {:>12} {:>10} {:>8}  {status}", row.item, num(row.computed, pc), num(Some(row.expected), pe), dev, tol);
    }
    let _ = writeln!(out, "{}: {} checked, {} outside tolerance", r.target, r.rows.iter().filter(|x| x.ok.is_some()).count(), r.failures);
    out
}
