//! Formula-free verification: ideal-lattice arithmetic in `O_K`, radicals of
//! ramified primes, principality search, and direct counts of `|Po(K)|` and
//! `|Ker ψ|` from strongly ambiguous ideals.

mod lattice;
mod reduce;
mod search;

pub use lattice::{extend_quad_ideal, ideal_mul, ideal_pow, pi2_ideal, radical_mod_p, IdealLattice};
pub use reduce::{fincke_pohst, lll_exact, lll_float};
pub use search::principality_k;

use std::collections::HashMap;

use crate::biquad::{BiquadElement, BiquadField};
use crate::error::{inconsistent, Result};
use crate::quadratic::ambiguous_class_reps_quad;

pub const BUDGET_ENV: &str = "POLYA_ORACLE_BUDGET";

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    /// Enumeration nodes allowed per principality test; also caps the
    /// number of search cells and the quadratic search range.
    pub budget: u64,
    /// Largest `|Δ|` accepted by the quadratic class-counting oracle.
    pub quad_disc_bound: u64,
    /// Width of a search cell in units of `ln`.
    pub cell_width: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: 50_000_000, quad_disc_bound: 1_000_000, cell_width: 0.5 }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget, ..Self::default() }
    }

    /// Default configuration, with the budget taken from
    /// `POLYA_ORACLE_BUDGET` when set.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(Self::with_budget)
                .map_err(|e| format!("{BUDGET_ENV}={v:?}: {e}")),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// Principality tests against one field, memoized by Hermite normal form.
pub struct Oracle<'a> {
    pub field: &'a BiquadField,
    pub cfg: &'a OracleConfig,
    cache: HashMap<IdealLattice, Option<BiquadElement>>,
}

impl<'a> Oracle<'a> {
    pub fn new(field: &'a BiquadField, cfg: &'a OracleConfig) -> Self {
        Self { field, cfg, cache: HashMap::new() }
    }

    pub fn generator(&mut self, a: &IdealLattice) -> Result<Option<BiquadElement>> {
        let (prim, g) = a.primitive_part();
        if let Some(hit) = self.cache.get(&prim) {
            return Ok(hit.clone().map(|e| e.mul(&BiquadElement::from_int(self.field.radicals, g))));
        }
        let gen = principality_k(self.field, &prim, self.cfg)?;
        self.cache.insert(prim, gen.clone());
        Ok(gen.map(|e| e.mul(&BiquadElement::from_int(self.field.radicals, g))))
    }

    pub fn is_principal(&mut self, a: &IdealLattice) -> Result<bool> {
        Ok(self.generator(a)?.is_some())
    }

    /// `a ~ b`, decided by principality of the integral ideal
    /// `a·σ₁(b)·σ₂(b)·σ₃(b) = a·b⁻¹·N(b)`.
    pub fn same_class(&mut self, a: &IdealLattice, b: &IdealLattice) -> Result<bool> {
        let mut prod = a.clone();
        for i in 1..=3 {
            prod = ideal_mul(self.field, &prod, &b.conj(self.field, i))?.primitive_part().0;
        }
        self.is_principal(&prod)
    }

    /// First-seen class representatives among `ideals`.
    pub fn class_representatives(&mut self, ideals: &[IdealLattice]) -> Result<Vec<IdealLattice>> {
        let mut reps: Vec<IdealLattice> = Vec::new();
        for a in ideals {
            let mut known = false;
            for r in &reps {
                if self.same_class(a, r)? {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(a.clone());
            }
        }
        Ok(reps)
    }
}

/// All products `∏ rad(pO_K)^mₚ` with `0 ≤ mₚ < eₚ`, in lexicographic
/// exponent order over the ramified primes in increasing order.
pub fn ambiguous_ideals(field: &BiquadField) -> Result<Vec<IdealLattice>> {
    let mut out = vec![IdealLattice::unit(field)];
    for (&p, dec) in &field.profile.ramified {
        let rad = radical_mod_p(field, p)?;
        let mut powers = vec![IdealLattice::unit(field)];
        for _ in 1..dec.e {
            let next = ideal_mul(field, powers.last().unwrap(), &rad)?;
            powers.push(next);
        }
        let mut next = Vec::with_capacity(out.len() * powers.len());
        for a in &out {
            for pw in &powers {
                next.push(ideal_mul(field, a, pw)?);
            }
        }
        out = next;
    }
    Ok(out)
}

/// `|Po(K)|` by counting the classes of the strongly ambiguous ideals.
pub fn polya_order_oracle(field: &BiquadField, cfg: &OracleConfig) -> Result<u64> {
    let mut oracle = Oracle::new(field, cfg);
    polya_order_with(&mut oracle)
}

pub fn polya_order_with(oracle: &mut Oracle<'_>) -> Result<u64> {
    let ideals = ambiguous_ideals(oracle.field)?;
    Ok(oracle.class_representatives(&ideals)?.len() as u64)
}

/// `|Ker ψ|` by extending representatives of each `Po(kᵢ)` to `O_K` and
/// counting the triples whose product becomes principal.
pub fn ker_order_oracle(field: &BiquadField, cfg: &OracleConfig) -> Result<u64> {
    let mut oracle = Oracle::new(field, cfg);
    ker_order_with(&mut oracle)
}

pub fn ker_order_with(oracle: &mut Oracle<'_>) -> Result<u64> {
    let field = oracle.field;
    let mut extended: Vec<Vec<IdealLattice>> = Vec::with_capacity(3);
    for (i, k) in field.subfields.iter().enumerate() {
        let reps = ambiguous_class_reps_quad(k, oracle.cfg)?;
        extended.push(reps.iter().map(|r| extend_quad_ideal(field, i, r)).collect::<Result<_>>()?);
    }
    let mut images = Vec::new();
    for a in &extended[0] {
        for b in &extended[1] {
            let ab = ideal_mul(field, a, b)?;
            for c in &extended[2] {
                images.push(ideal_mul(field, &ab, c)?.primitive_part().0);
            }
        }
    }
    let mut principal = 0u64;
    for img in &images {
        if oracle.is_principal(img)? {
            principal += 1;
        }
    }
    let classes = oracle.class_representatives(&images)?.len() as u64;
    let domain = images.len() as u64;
    if principal * classes != domain {
        return inconsistent(format!(
            "kernel size {principal} times image size {classes} differs from |domain| = {domain}"
        ));
    }
    Ok(principal)
}

/// `j₂` through the oracle.
pub fn j2_with(oracle: &mut Oracle<'_>) -> Result<u32> {
    if oracle.field.profile.i2 == 0 {
        return Ok(0);
    }
    let pi2 = pi2_ideal(oracle.field)?;
    Ok(u32::from(!oracle.is_principal(&pi2)?))
}
