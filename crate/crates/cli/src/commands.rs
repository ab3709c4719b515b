//! Subcommand bodies. Each returns rendered output or a failure carrying its
//! exit code.

use std::io::Write;

use rayon::prelude::*;

use polya_core::corpus::{canonical_triples, FieldFilter};
use polya_core::oracle::{j2_with, ker_order_with, polya_order_with, Oracle};
use polya_core::quadratic::{ambiguous_oracle_quad, polya_order_quad};
use polya_core::{polya_report, BiquadField, Error, OracleConfig, QuadraticField};

use crate::args::{Cli, Command, Common};
use crate::format::render;
use crate::record::{OutputRecord, QuadRecord, VerifyStatus};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Domain(_) => EXIT_INPUT,
            Error::Budget(_) => EXIT_BUDGET,
            Error::Inconsistency(_) => EXIT_MISMATCH,
        };
        Self { code, message: e.to_string() }
    }
}

fn config(common: &Common) -> Result<OracleConfig, Failure> {
    let base = OracleConfig::from_env().map_err(Failure::input)?;
    Ok(match common.budget {
        Some(b) => OracleConfig { budget: b, ..base },
        None => base,
    })
}

fn status_code(statuses: impl IntoIterator<Item = VerifyStatus>) -> i32 {
    let mut code = EXIT_OK;
    for s in statuses {
        match s {
            VerifyStatus::Mismatch => return EXIT_MISMATCH,
            VerifyStatus::BudgetExceeded => code = EXIT_BUDGET,
            _ => {}
        }
    }
    code
}

/// Outcome of a verification run: a budget error marks the row instead of
/// aborting, and an internal inconsistency counts as a mismatch.
fn verdict(check: Result<bool, Error>) -> Result<VerifyStatus, Failure> {
    match check {
        Ok(true) => Ok(VerifyStatus::Ok),
        Ok(false) | Err(Error::Inconsistency(_)) => Ok(VerifyStatus::Mismatch),
        Err(Error::Budget(_)) => Ok(VerifyStatus::BudgetExceeded),
        Err(e) => Err(e.into()),
    }
}

pub fn quad_record(d: i64, verify: bool, cfg: &OracleConfig) -> Result<QuadRecord, Failure> {
    let k = QuadraticField::new(d)?;
    let mut rec = QuadRecord::new(&k, polya_order_quad(&k));
    if verify {
        let oracle = ambiguous_oracle_quad(&k, cfg);
        rec.po_oracle = oracle.as_ref().ok().copied();
        rec.verify_status = verdict(oracle.map(|n| n == rec.po))?;
    }
    Ok(rec)
}

pub fn biquad_record(d1: i64, d2: i64, chain: bool, verify: bool, cfg: &OracleConfig) -> Result<OutputRecord, Failure> {
    let k = BiquadField::new(d1, d2)?;
    let report = polya_report(&k, cfg)?;
    let mut rec = OutputRecord::new(&k, &report, chain);
    if verify {
        let mut oracle = Oracle::new(&k, cfg);
        let check = (|| -> Result<bool, Error> {
            let po = polya_order_with(&mut oracle)?;
            let ker = ker_order_with(&mut oracle)?;
            let coker = 1u64 << j2_with(&mut oracle)?;
            Ok(po == report.po_k && ker == report.ker && coker == report.coker)
        })();
        rec.verify_status = verdict(check)?;
    }
    Ok(rec)
}

pub fn scan_records(
    bound: i64,
    filter: FieldFilter,
    chain: bool,
    verify: bool,
    jobs: Option<usize>,
    cfg: &OracleConfig,
) -> Result<Vec<OutputRecord>, Failure> {
    if bound < 2 {
        return Err(Failure::input(format!("--bound must be at least 2, got {bound}")));
    }
    let triples = canonical_triples(bound, filter);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Failure::input("--jobs must be positive"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::input(e.to_string()))?;
    // indexed collection keeps canonical order whatever the completion order
    let results: Vec<Result<OutputRecord, Failure>> =
        pool.install(|| triples.par_iter().map(|t| biquad_record(t[0], t[1], chain, verify, cfg)).collect());
    results.into_iter().collect()
}

/// Execute a parsed command, writing data to `out` and diagnostics to `err`.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute_inner(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

fn execute_inner(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Quad { d, common } => {
            let cfg = config(common)?;
            let rec = quad_record(*d, common.verify, &cfg)?;
            emit(out, &render(std::slice::from_ref(&rec), common.output_format()).map_err(Failure::input)?)?;
            Ok(status_code([rec.verify_status]))
        }
        Command::Biquad { d1, d2, chain, common } => {
            let cfg = config(common)?;
            let rec = biquad_record(*d1, *d2, *chain, common.verify, &cfg)?;
            emit(out, &render(std::slice::from_ref(&rec), common.output_format()).map_err(Failure::input)?)?;
            Ok(status_code([rec.verify_status]))
        }
        Command::Scan { bound, real_only, imag_only, chain, out: path, jobs, common } => {
            let cfg = config(common)?;
            let filter = match (real_only, imag_only) {
                (true, _) => FieldFilter::Real,
                (_, true) => FieldFilter::Imaginary,
                _ => FieldFilter::All,
            };
            let records = scan_records(*bound, filter, *chain, common.verify, *jobs, &cfg)?;
            let text = render(&records, common.output_format()).map_err(Failure::input)?;
            match path {
                Some(p) => std::fs::write(p, text)
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display())))?,
                None => emit(out, &text)?,
            }
            Ok(status_code(records.iter().map(|r| r.verify_status)))
        }
    }
}
