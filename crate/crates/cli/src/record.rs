//! Flat output rows for single fields, shared by every output format.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use polya_core::{BiquadField, PolyaReport, QuadElement, QuadraticField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyStatus {
    Unchecked,
    Ok,
    Mismatch,
    BudgetExceeded,
}

impl VerifyStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unchecked => "unchecked",
            Self::Ok => "ok",
            Self::Mismatch => "mismatch",
            Self::BudgetExceeded => "budget_exceeded",
        }
    }
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VerifyStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Self::Unchecked, Self::Ok, Self::Mismatch, Self::BudgetExceeded]
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown verify status {s:?}"))
    }
}

/// One biquadratic field. Chain indices are present only when requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub d1: i64,
    pub d2: i64,
    pub d3: i64,
    pub disc1: i64,
    pub disc2: i64,
    pub disc3: i64,
    pub s1: u32,
    pub s2: u32,
    pub s3: u32,
    pub s_k: u32,
    pub i2: u32,
    pub e2: u32,
    pub j2: u32,
    pub q_k: u32,
    pub mu_order: u32,
    /// Norm of the fundamental unit of each subfield, 0 for imaginary ones.
    pub lambda1: i8,
    pub lambda2: i8,
    pub lambda3: i8,
    pub nu_k: u32,
    pub po1: u64,
    pub po2: u64,
    pub po3: u64,
    pub ker: u64,
    pub coker: u64,
    pub po_k: u64,
    pub h3_h0: Option<u64>,
    pub h2_h1: Option<u64>,
    pub h1_h0: Option<u64>,
    pub h3_h2: Option<u64>,
    pub verify_status: VerifyStatus,
}

impl OutputRecord {
    pub fn new(k: &BiquadField, r: &PolyaReport, with_chain: bool) -> Self {
        let sub = &k.subfields;
        let lambda = k.units.lambda.map(|l| l.unwrap_or(0));
        let chain = with_chain.then_some(r.chain);
        Self {
            d1: k.d[0],
            d2: k.d[1],
            d3: k.d[2],
            disc1: sub[0].disc,
            disc2: sub[1].disc,
            disc3: sub[2].disc,
            s1: sub[0].s,
            s2: sub[1].s,
            s3: sub[2].s,
            s_k: r.s_k,
            i2: r.i2,
            e2: k.profile.e2,
            j2: r.j2,
            q_k: r.q_k,
            mu_order: k.units.mu_order,
            lambda1: lambda[0],
            lambda2: lambda[1],
            lambda3: lambda[2],
            nu_k: r.nu_k,
            po1: r.po_sub[0],
            po2: r.po_sub[1],
            po3: r.po_sub[2],
            ker: r.ker,
            coker: r.coker,
            po_k: r.po_k,
            h3_h0: chain.map(|c| c.h3_h0),
            h2_h1: chain.map(|c| c.h2_h1),
            h1_h0: chain.map(|c| c.h1_h0),
            h3_h2: chain.map(|c| c.h3_h2),
            verify_status: VerifyStatus::Unchecked,
        }
    }
}

/// One quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRecord {
    pub d: i64,
    pub disc: i64,
    pub s: u32,
    /// Fundamental unit as `x+y*sqrt(d)` or `(x+y*sqrt(d))/2`; absent for
    /// imaginary fields.
    pub unit: Option<String>,
    /// Norm of the fundamental unit, 0 for imaginary fields.
    pub lambda: i8,
    pub nu: u8,
    pub po: u64,
    pub po_oracle: Option<u64>,
    pub verify_status: VerifyStatus,
}

/// Compact rendering without spaces, so it survives whitespace tables.
pub fn compact_unit(e: &QuadElement) -> String {
    let sign = if e.y.is_negative() { '-' } else { '+' };
    let body = format!("{}{sign}{}*sqrt({})", e.x, e.y.abs(), e.field_d);
    if e.den == 1 {
        body
    } else {
        format!("({body})/{}", e.den)
    }
}

impl QuadRecord {
    pub fn new(k: &QuadraticField, po: u64) -> Self {
        Self {
            d: k.d,
            disc: k.disc,
            s: k.s,
            unit: k.fundamental_unit.as_ref().map(compact_unit),
            lambda: k.lambda.unwrap_or(0),
            nu: k.nu,
            po,
            po_oracle: None,
            verify_status: VerifyStatus::Unchecked,
        }
    }
}
