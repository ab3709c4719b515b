//! Exhaustive principality search and strongly ambiguous class counting in
//! quadratic fields, with no reference to the closed formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{QuadElement, QuadIdeal, QuadraticField};
use crate::error::{Error, Result};
use crate::exact::{isqrt_big, perfect_square};
use crate::oracle::OracleConfig;

/// The prime ideal `(p, ω - t)` above a ramified prime `p`.
pub fn ramified_prime_ideal(k: &QuadraticField, p: u64) -> Result<QuadIdeal> {
    if k.disc.rem_euclid(p as i64) != 0 {
        return Err(Error::Domain(format!("{p} is unramified in Q(√{})", k.d)));
    }
    let (tr, nm) = k.omega_trace_norm();
    let p_i = p as i64;
    let t = (0..p_i)
        .find(|&t| (t * t - tr * t + nm).rem_euclid(p_i) == 0)
        .expect("the minimal polynomial of ω has a root modulo a ramified prime");
    QuadIdeal::from_generators(k, &[(BigInt::from(p), BigInt::zero()), (BigInt::from(-t), BigInt::one())])
}

/// A generator of `ideal`, or `None` when the ideal is provably nonprincipal.
///
/// Any generator can be moved by a power of `ε` so that both conjugates are at
/// most `√(ε·N)` in absolute value; this bounds the `√d` coordinate, and for
/// each value of it the rational coordinate solves a quadratic equation.
pub fn principality_quad(k: &QuadraticField, ideal: &QuadIdeal, cfg: &OracleConfig) -> Result<Option<QuadElement>> {
    let (prim, g) = ideal.primitive_part();
    let n = prim.norm();
    let scale = |e: QuadElement| e.mul(&QuadElement::from_int(k.d, g.clone()));
    if n.is_one() {
        return Ok(Some(scale(QuadElement::from_int(k.d, 1))));
    }
    let (tr, nm) = k.omega_trace_norm();
    // |√d-coordinate| ≤ √(n·ε/|d|); v is that coordinate times 1 or 2
    let stretch: BigInt = match &k.fundamental_unit {
        Some(e) => {
            let approx = e.to_f64().ceil();
            approx.to_u128().map(BigInt::from).unwrap_or_else(|| {
                // far beyond f64 range: (x + y·(⌊√d⌋+1))/den + 1 still bounds ε
                let r = isqrt_big(&BigInt::from(k.d)) + 1;
                (&e.x + &e.y * r) / BigInt::from(e.den) + 1
            }) + 1
        }
        None => BigInt::one(),
    };
    let factor = if tr == 1 { 4 } else { 1 };
    let vmax: BigInt = isqrt_big(&(&n * &stretch * factor / BigInt::from(k.d.unsigned_abs()))) + 1;
    if vmax > BigInt::from(cfg.budget) {
        return Err(Error::Budget(format!("quadratic search range {vmax} exceeds budget {}", cfg.budget)));
    }
    let vmax = vmax.to_i64().unwrap();
    let targets: &[i64] = if k.is_real { &[1, -1] } else { &[1] };
    let (tr, nm) = (BigInt::from(tr), BigInt::from(nm));
    for v in 0..=vmax {
        let v = BigInt::from(v);
        for &sigma in targets {
            // u² + tr·v·u + (nm·v² - σn) = 0
            let disc = &tr * &tr * &v * &v - BigInt::from(4) * (&nm * &v * &v - &n * sigma);
            let Some(root) = perfect_square(&disc) else { continue };
            for r in [root.clone(), -root] {
                let twice_u = -&tr * &v + r;
                if twice_u.is_odd() {
                    continue;
                }
                let u = twice_u / 2;
                if prim.contains(&u, &v) {
                    return Ok(Some(scale(QuadElement::from_omega_coords(k.d, &u, &v))));
                }
            }
        }
    }
    Ok(None)
}

/// First-seen representatives of the strongly ambiguous classes, scanning
/// products of distinct ramified primes in lexicographic exponent order.
pub fn ambiguous_class_reps_quad(k: &QuadraticField, cfg: &OracleConfig) -> Result<Vec<QuadIdeal>> {
    if k.disc.unsigned_abs() > cfg.quad_disc_bound {
        return Err(Error::Budget(format!(
            "|disc| = {} exceeds the quadratic oracle bound {}",
            k.disc.unsigned_abs(),
            cfg.quad_disc_bound
        )));
    }
    let primes: Vec<QuadIdeal> =
        k.ramified_primes.iter().map(|&p| ramified_prime_ideal(k, p)).collect::<Result<_>>()?;
    let s = primes.len();
    let mut reps: Vec<QuadIdeal> = Vec::new();
    for idx in 0u32..(1 << s) {
        let mut ideal = QuadIdeal::unit(k);
        for (j, p) in primes.iter().enumerate() {
            if idx >> (s - 1 - j) & 1 == 1 {
                ideal = ideal.mul(p);
            }
        }
        let mut known = false;
        for r in &reps {
            let quotient = ideal.mul(&r.conj()).primitive_part().0;
            if principality_quad(k, &quotient, cfg)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(ideal);
        }
    }
    Ok(reps)
}

/// Number of strongly ambiguous ideal classes, counted directly.
pub fn ambiguous_oracle_quad(k: &QuadraticField, cfg: &OracleConfig) -> Result<u64> {
    Ok(ambiguous_class_reps_quad(k, cfg)?.len() as u64)
}
