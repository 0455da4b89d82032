//! Coefficient documents: `{"d": 3, "s": [[re, im], ...]}`, a bare array of
//! `[re, im]` pairs, or a bare array of reals.

use std::path::Path;

use serde_json::Value;
use specnorm::measures::{standard_basis_state, BasisIndex};
use specnorm::{QubitState, C64};

use crate::error::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn entry(v: &Value) -> Result<C64, CliError> {
    match v {
        Value::Number(n) => n.as_f64().map(|x| C64::new(x, 0.0)).ok_or_else(|| bad("non-finite coefficient")),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or_else(|| bad("coefficient pair must hold two numbers"))?;
            let im = pair[1].as_f64().ok_or_else(|| bad("coefficient pair must hold two numbers"))?;
            Ok(C64::new(re, im))
        }
        other => Err(bad(format!("coefficient must be a number or [re, im], got {other}"))),
    }
}

fn coeff_list(v: &Value) -> Result<Vec<C64>, CliError> {
    let arr = v.as_array().ok_or_else(|| bad("coefficients must be an array"))?;
    arr.iter().map(entry).collect()
}

/// Parses one coefficient document. `d_flag` must agree with the document.
pub fn parse_document(v: &Value, d_flag: Option<usize>) -> Result<QubitState, CliError> {
    let (d_doc, s) = match v {
        Value::Object(map) => {
            let s = coeff_list(map.get("s").ok_or_else(|| bad("missing field `s`"))?)?;
            let d = match map.get("d") {
                Some(d) => Some(d.as_u64().ok_or_else(|| bad("`d` must be a nonnegative integer"))? as usize),
                None => None,
            };
            (d, s)
        }
        Value::Array(_) => (None, coeff_list(v)?),
        _ => return Err(bad("expected an object or an array")),
    };
    if s.len() < 2 {
        return Err(bad("need at least two coefficients (d >= 1)"));
    }
    let d = s.len() - 1;
    for given in [d_doc, d_flag].into_iter().flatten() {
        if given != d {
            return Err(bad(format!("d = {given} but {} coefficients given", s.len())));
        }
    }
    if s.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(bad("coefficients must be finite"));
    }
    QubitState::new(d, s).map_err(|e| bad(e.to_string()))
}

/// `arg` is parsed as inline JSON when it looks like JSON, otherwise read as a path.
pub fn load_coeffs(arg: &str, d_flag: Option<usize>) -> Result<QubitState, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| bad(format!("cannot read {arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    parse_document(&v, d_flag)
}

/// `--dicke d j1,j2`.
pub fn dicke(d: &str, j: &str) -> Result<QubitState, CliError> {
    let d: usize = d.trim().parse().map_err(|_| bad(format!("bad degree `{d}`")))?;
    let parts = j
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| bad(format!("bad profile `{j}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let idx = BasisIndex::new(d, parts).map_err(|e| bad(e.to_string()))?;
    standard_basis_state(d, &idx).map_err(|e| bad(e.to_string()))
}
