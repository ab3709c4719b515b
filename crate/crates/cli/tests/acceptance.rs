//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Time limits are pinned below.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polya_core::corpus::{canonical_triples, FieldFilter};
use polya_core::exact::is_squarefree;
use polya_core::oracle::{j2_with, ker_order_with, polya_order_with, Oracle};
use polya_core::quadratic::{ambiguous_oracle_quad, polya_order_quad};
use polya_core::{chain_indices, ker_order, polya_report, BiquadField, Error, OracleConfig, QuadraticField};

const QUAD_SWEEP_BOUND: i64 = 150;
const QUAD_SWEEP_LIMIT: Duration = Duration::from_secs(60);
const STRUCTURE_BOUND: i64 = 20;
const STRUCTURE_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_BOUND: i64 = 15;
const ORACLE_LIMIT: Duration = Duration::from_secs(900);
const DETERMINISM_BOUND: &str = "10";

type Outcome = Result<String, String>;

fn fields(bound: i64) -> Result<Vec<BiquadField>, String> {
    canonical_triples(bound, FieldFilter::All)
        .into_iter()
        .map(|t| BiquadField::new(t[0], t[1]).map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn within(limit: Duration, start: Instant, summary: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{summary}, but took {took:.1?} (limit {limit:?})"))
    } else {
        Ok(format!("{summary} in {took:.1?}"))
    }
}

/// `|Po(k)| = 2^(s-1-ν)` against the class-counting oracle for every
/// squarefree `d` with `2 ≤ |d| ≤ 150`.
fn quadratic_sweep() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut count = 0;
    for d in (-QUAD_SWEEP_BOUND..=QUAD_SWEEP_BOUND).filter(|d| d.abs() >= 2 && is_squarefree(*d)) {
        let k = QuadraticField::new(d).map_err(|e| e.to_string())?;
        let formula = 1u64 << (k.s - 1 - k.nu as u32);
        let oracle = ambiguous_oracle_quad(&k, &cfg).map_err(|e| format!("d = {d}: {e}"))?;
        if oracle != formula || polya_order_quad(&k) != formula {
            return Err(format!("d = {d}: oracle {oracle}, formula {formula}"));
        }
        count += 1;
    }
    within(QUAD_SWEEP_LIMIT, start, format!("{count} fields agree"))
}

/// Ramification, discriminant and unit-index identities on `|dᵢ| ≤ 20`.
fn structural_identities() -> Outcome {
    let start = Instant::now();
    let all = fields(STRUCTURE_BOUND)?;
    for k in &all {
        let p = &k.profile;
        let s: u32 = k.subfields.iter().map(|q| q.s).sum();
        if s != 2 * p.s_k + p.i2 {
            return Err(format!("{:?}: s₁+s₂+s₃ = {s}, 2s_K+i₂ = {}", k.d, 2 * p.s_k + p.i2));
        }
        let conductor: i64 = k.subfields.iter().map(|q| q.disc).product();
        if k.disc != conductor {
            return Err(format!("{:?}: basis discriminant {} ≠ {conductor}", k.d, k.disc));
        }
        let cap = if k.is_real { 4 } else { 2 };
        if cap % k.units.q_k != 0 {
            return Err(format!("{:?}: q_K = {} does not divide {cap}", k.d, k.units.q_k));
        }
        if p.product_e != 1 << (p.s_k + p.i2) {
            return Err(format!("{:?}: ∏e = {} ≠ 2^(s_K+i₂)", k.d, p.product_e));
        }
    }
    within(STRUCTURE_LIMIT, start, format!("{} fields satisfy all four identities", all.len()))
}

struct OracleRow {
    d: [i64; 3],
    ker: (u64, u64),
    po: (u64, u64),
    coker: (u64, u64),
    decomposition_holds: bool,
}

/// Formula and oracle values of `|Ker ψ|`, `|Po(K)|` and `|Coker ψ|` on the
/// `|dᵢ| ≤ 15` corpus, computed once and shared by two criteria.
fn oracle_rows() -> Result<(Vec<OracleRow>, Duration), String> {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut rows = Vec::new();
    for k in fields(ORACLE_BOUND)? {
        let budget = |e: Error| match e {
            Error::Budget(m) => format!("{:?}: budget exceeded ({m})", k.d),
            e => format!("{:?}: {e}", k.d),
        };
        let r = polya_report(&k, &cfg).map_err(budget)?;
        let mut oracle = Oracle::new(&k, &cfg);
        let po = polya_order_with(&mut oracle).map_err(budget)?;
        let ker = ker_order_with(&mut oracle).map_err(budget)?;
        let coker = 1u64 << j2_with(&mut oracle).map_err(budget)?;
        let sub: u64 = r.po_sub.iter().product();
        rows.push(OracleRow {
            d: k.d,
            ker: (r.ker, ker),
            po: (r.po_k, po),
            coker: (r.coker, coker),
            decomposition_holds: r.po_k * r.ker == sub * r.coker,
        });
    }
    Ok((rows, start.elapsed()))
}

fn kernel_vs_oracle(rows: &[OracleRow], took: Duration) -> Outcome {
    if let Some(r) = rows.iter().find(|r| r.ker.0 != r.ker.1) {
        return Err(format!("{:?}: formula {}, oracle {}", r.d, r.ker.0, r.ker.1));
    }
    if took > ORACLE_LIMIT {
        return Err(format!("oracle corpus took {took:.1?} (limit {ORACLE_LIMIT:?})"));
    }
    Ok(format!("{} fields agree, 0 budget_exceeded, oracle corpus {took:.1?}", rows.len()))
}

fn polya_vs_oracle(rows: &[OracleRow]) -> Outcome {
    for r in rows {
        if r.po.0 != r.po.1 {
            return Err(format!("{:?}: formula {}, oracle {}", r.d, r.po.0, r.po.1));
        }
        if r.coker.0 != r.coker.1 {
            return Err(format!("{:?}: cokernel formula {}, oracle {}", r.d, r.coker.0, r.coker.1));
        }
        if !r.decomposition_holds {
            return Err(format!("{:?}: po_K·ker ≠ ∏po_sub·coker", r.d));
        }
    }
    Ok(format!("{} fields agree and decompose", rows.len()))
}

/// `(H₃:H₂)(H₂:H₁)(H₁:H₀) = 2^(s_K)`, with `(H₁:H₀) = 2` exactly when
/// `√-1 ∈ K`.
fn chain_telescope() -> Outcome {
    let all = fields(STRUCTURE_BOUND)?;
    for k in &all {
        let c = chain_indices(k).map_err(|e| format!("{:?}: {e}", k.d))?;
        if c.h3_h2 * c.h2_h1 * c.h1_h0 != 1 << k.profile.s_k || c.h3_h0 != 1 << k.profile.s_k {
            return Err(format!("{:?}: {c:?} with s_K = {}", k.d, k.profile.s_k));
        }
        let expect = if k.d.contains(&-1) { 2 } else { 4 };
        if c.h1_h0 != expect {
            return Err(format!("{:?}: (H₁:H₀) = {}, expected {expect}", k.d, c.h1_h0));
        }
    }
    Ok(format!("{} fields telescope", all.len()))
}

/// Oracle values first, then the formula path must reproduce them.
fn named_fields() -> Outcome {
    let cfg = OracleConfig::default();
    let mut summary = Vec::new();
    for (d1, d2, want_q, want_nu, want_i2) in [(-1, 2, 2, None, None), (-1, -3, 2, Some(1), None), (2, 3, 4, Some(2), Some(1))]
    {
        let k = BiquadField::new(d1, d2).map_err(|e| e.to_string())?;
        let mut oracle = Oracle::new(&k, &cfg);
        let po = polya_order_with(&mut oracle).map_err(|e| e.to_string())?;
        let ker = ker_order_with(&mut oracle).map_err(|e| e.to_string())?;
        let j2 = j2_with(&mut oracle).map_err(|e| e.to_string())?;
        // q_K read off |Ker ψ| = ∏e/q_K or ∏e/(2q_K)
        let all_nu_zero = k.subfields.iter().all(|s| s.nu == 0);
        let den = if k.is_real && all_nu_zero { ker } else { 2 * ker };
        let q_oracle = k.profile.product_e / den;
        if po != 1 || q_oracle != want_q {
            return Err(format!("Q(√{d1},√{d2}): oracle |Po| = {po}, q_K = {q_oracle}"));
        }
        if (d1, d2) == (-1, 2) && j2 != 0 {
            return Err(format!("Q(√-1,√2): oracle j₂ = {j2}"));
        }
        let r = polya_report(&k, &cfg).map_err(|e| e.to_string())?;
        let formula_ok = r.po_k == po
            && r.q_k as u64 == q_oracle
            && r.j2 == j2
            && ker_order(&k).map_err(|e| e.to_string())? == ker
            && want_nu.map_or(true, |n| r.nu_k == n)
            && want_i2.map_or(true, |i| r.i2 == i);
        if !formula_ok {
            return Err(format!("Q(√{d1},√{d2}): formula path {r:?}"));
        }
        summary.push(format!("Q(√{d1},√{d2}) q_K={} ν_K={} |Po|={po}", r.q_k, r.nu_k));
    }
    Ok(summary.join("; "))
}

fn scan_json(jobs: &str) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_polya"))
        .args(["scan", "--bound", DETERMINISM_BOUND, "--json", "--jobs", jobs])
        .env_remove("POLYA_ORACLE_BUDGET")
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("scan exited with {:?}", o.status.code()));
    }
    Ok(o.stdout)
}

/// `scan --bound 10 --json` is byte-identical across runs and worker counts.
fn determinism() -> Outcome {
    let reference = scan_json("1")?;
    for jobs in ["1", "2", "8"] {
        if scan_json(jobs)? != reference {
            return Err(format!("output with --jobs {jobs} differs"));
        }
    }
    let lines = reference.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{lines} rows, {} bytes, identical over 4 runs", reference.len()))
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("quadratic ambiguous-class sweep, 2 ≤ |d| ≤ 150", quadratic_sweep()),
        ("structural identities, |dᵢ| ≤ 20", structural_identities()),
    ];
    match oracle_rows() {
        Ok((rows, took)) => {
            results.push(("kernel order vs oracle, |dᵢ| ≤ 15", kernel_vs_oracle(&rows, took)));
            results.push(("Pólya order vs oracle and decomposition, |dᵢ| ≤ 15", polya_vs_oracle(&rows)));
        }
        Err(e) => {
            results.push(("kernel order vs oracle, |dᵢ| ≤ 15", Err(e.clone())));
            results.push(("Pólya order vs oracle and decomposition, |dᵢ| ≤ 15", Err(e)));
        }
    }
    results.push(("unit chain telescopes, |dᵢ| ≤ 20", chain_telescope()));
    results.push(("named fields, oracle then formula", named_fields()));
    results.push(("scan determinism across runs and worker counts", determinism()));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
