mod error;
mod input;
mod json;
mod report;
mod reproduce;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use specnorm::oracle::OracleConfig;
use specnorm::{Field, QubitState, Tolerances};

use crate::error::CliError;
use crate::report::Request;

#[derive(Parser)]
#[command(name = "specnorm", version, about = "Spectral norms and geometric entanglement of symmetric qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: norms, witnesses, entanglement, classification, census.
    Compute(RunArgs),
    /// Multi-start lower bound only.
    Oracle(RunArgs),
    /// Anti-eigenvector count against its bounds.
    Census(RunArgs),
    /// Recompute a bundled reference table: table1, tables2to4 or appendixA.
    Reproduce {
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Complex,
    Real,
}

#[derive(Args)]
struct RunArgs {
    /// Degree; must match the number of coefficients when both are given.
    #[arg(long)]
    d: Option<usize>,
    /// Coefficient document, inline JSON or a path.
    #[arg(long, conflicts_with_all = ["dicke", "batch"])]
    coeffs: Option<String>,
    /// Basis state with profile `j1,j2`.
    #[arg(long, num_args = 2, value_names = ["D", "J1,J2"], conflicts_with = "batch")]
    dicke: Option<Vec<String>>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "complex")]
    field: Vec<FieldArg>,
    /// Root-finder residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Include the candidate root table.
    #[arg(long)]
    roots: bool,
    /// Also run the multi-start oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// One coefficient document per line; reports come out in input order.
    #[arg(long)]
    batch: Option<PathBuf>,
}

#[derive(Clone, Copy)]
enum Kind {
    Compute,
    Oracle,
    Census,
}

impl RunArgs {
    fn request(&self) -> Result<Request, CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Input(format!("--tol must be positive, got {}", self.tol)));
        }
        let mut fields: Vec<Field> = Vec::new();
        for f in &self.field {
            let f = match f {
                FieldArg::Complex => Field::Complex,
                FieldArg::Real => Field::Real,
            };
            if !fields.contains(&f) {
                fields.push(f);
            }
        }
        let tol = Tolerances { root: self.tol, ..Tolerances::default() };
        let mut oracle_cfg = OracleConfig::default();
        if let Some(seed) = self.seed {
            oracle_cfg.seed = seed;
        }
        Ok(Request { fields, tol, roots: self.roots, oracle: self.oracle, oracle_cfg })
    }

    fn state(&self) -> Result<QubitState, CliError> {
        match (&self.coeffs, &self.dicke) {
            (Some(c), None) => input::load_coeffs(c, self.d),
            (None, Some(dj)) => {
                let s = input::dicke(&dj[0], &dj[1])?;
                match self.d {
                    Some(d) if d != s.d() => Err(CliError::Input(format!("--d {d} disagrees with --dicke degree {}", s.d()))),
                    _ => Ok(s),
                }
            }
            _ => Err(CliError::Input("give one of --coeffs, --dicke or --batch".into())),
        }
    }
}

fn emit<T: serde::Serialize>(v: &T, format: Format, compact: bool, table: fn(&T) -> String) -> String {
    match (format, compact) {
        (Format::Table, _) => table(v),
        (Format::Json, true) => json::to_string_compact(v),
        (Format::Json, false) => json::to_string_pretty(v),
    }
}

fn render(kind: Kind, state: &QubitState, req: &Request, format: Format, compact: bool) -> Result<String, CliError> {
    Ok(match kind {
        Kind::Compute => emit(&report::compute(state, req)?, format, compact, report::render_table),
        Kind::Oracle => emit(&report::oracle(state, req)?, format, compact, report::render_oracle_table),
        Kind::Census => emit(&report::census_only(state, req)?, format, compact, report::render_census_table),
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SPECNORM_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Input(format!("SPECNORM_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::Input("SPECNORM_THREADS must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Input(e.to_string()))
}

/// Runs every line; failures become `{"line", "error", "exit_code"}` records.
/// Returns the worst exit code.
fn run_batch(kind: Kind, args: &RunArgs, path: &PathBuf) -> Result<i32, CliError> {
    let req = args.request()?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    let pool = thread_pool()?;
    let outputs: Vec<(String, i32)> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(i, line)| {
                let result = serde_json::from_str::<Value>(line)
                    .map_err(|e| CliError::Input(format!("invalid JSON: {e}")))
                    .and_then(|v| input::parse_document(&v, args.d))
                    .and_then(|s| render(kind, &s, &req, Format::Json, true));
                match result {
                    Ok(s) => (s, 0),
                    Err(e) => {
                        let rec = json!({ "line": i + 1, "error": e.to_string(), "exit_code": e.exit_code() });
                        (rec.to_string(), e.exit_code())
                    }
                }
            })
            .collect()
    });
    let mut out = std::io::stdout().lock();
    let mut worst = 0;
    for (s, code) in outputs {
        writeln!(out, "{s}")?;
        worst = worst.max(code);
    }
    Ok(worst)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (kind, args) = match cli.command {
        Command::Compute(a) => (Kind::Compute, a),
        Command::Oracle(a) => (Kind::Oracle, a),
        Command::Census(a) => (Kind::Census, a),
        Command::Reproduce { target, format } => {
            let target = reproduce::Target::parse(&target)?;
            let r = reproduce::run(target, &Tolerances::default())?;
            let text = match format {
                Format::Table => reproduce::render_table(&r),
                Format::Json => json::to_string_pretty(&r) + "\n",
            };
            print!("{text}");
            return if r.failures > 0 { Err(CliError::Deviation(r.failures)) } else { Ok(0) };
        }
    };
    if let Some(path) = &args.batch {
        return run_batch(kind, &args, path);
    }
    let req = args.request()?;
    let state = args.state()?;
    let mut text = render(kind, &state, &req, args.format, false)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    print!("{text}");
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("specnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
