//! Closed formulas for `|Coker ψ|`, `|Ker ψ|`, `|Po(K)|` and the indices of
//! the chain `H₀ ⊆ H₁ ⊆ H₂ ⊆ H₃`, where `ψ : Po(k₁)×Po(k₂)×Po(k₃) → Po(K)`
//! extends ideals from the subfields.

use super::BiquadField;
use crate::error::{inconsistent, Result};
use crate::oracle::OracleConfig;
use crate::quadratic::polya_order_quad;

/// `q · 2^exp` as an integer, failing when it is not one.
fn scaled_power(q: u64, exp: i64, what: &str) -> Result<u64> {
    if exp >= 0 {
        return Ok(q << exp);
    }
    let div = 1u64 << (-exp);
    if q % div != 0 {
        return inconsistent(format!("{what} = {q}·2^{exp} is not an integer"));
    }
    Ok(q / div)
}

/// `|Coker ψ| = 2^j₂`.
pub fn coker_order(k: &BiquadField, cfg: &OracleConfig) -> Result<u64> {
    Ok(1 << k.j2(cfg)?)
}

/// `|Ker ψ| = ∏eₚ / q_K` when `K` is real with `ν₁ = ν₂ = ν₃ = 0`, and
/// `∏eₚ / (2·q_K)` otherwise.
pub fn ker_order(k: &BiquadField) -> Result<u64> {
    let q = k.units.q_k as u64;
    let all_nu_zero = k.subfields.iter().all(|s| s.nu == 0);
    let den = if k.is_real && all_nu_zero { q } else { 2 * q };
    let num = k.profile.product_e;
    if num % den != 0 {
        return inconsistent(format!("|Ker ψ| = {num}/{den} is not an integer"));
    }
    Ok(num / den)
}

/// `|Po(K)|` from `q_K`, `s_K`, `j₂` and `ν_K`, checked against
/// `∏|Po(kᵢ)| · |Coker ψ| / |Ker ψ|`.
pub fn polya_order(k: &BiquadField, cfg: &OracleConfig) -> Result<u64> {
    polya_order_with_j2(k, k.j2(cfg)?)
}

pub(crate) fn polya_order_with_j2(k: &BiquadField, j2: u32) -> Result<u64> {
    let nu = k.units.nu_k as i64;
    let nu_term = if k.is_real { nu.max(1) } else { nu };
    let exp = k.profile.s_k as i64 + j2 as i64 - 2 - nu_term;
    let po = scaled_power(k.units.q_k as u64, exp, "|Po(K)|")?;
    let sub: u64 = k.subfields.iter().map(polya_order_quad).product();
    let ker = ker_order(k)?;
    if po * ker != sub << j2 {
        return inconsistent(format!(
            "|Po(K)| = {po} disagrees with ∏|Po(kᵢ)|·|Coker|/|Ker| = {sub}·{}/{ker}",
            1 << j2
        ));
    }
    Ok(po)
}

/// Indices of `H₀ ⊆ H₁ ⊆ H₂ ⊆ H₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChainIndices {
    pub h3_h0: u64,
    pub h2_h1: u64,
    pub h1_h0: u64,
    pub h3_h2: u64,
}

pub fn chain_indices(k: &BiquadField) -> Result<ChainIndices> {
    let s_k = k.profile.s_k as i64;
    let u = &k.units;
    let h3_h0 = 1u64 << s_k;
    let h2_h1 = u.index_star_over_pm_squares as u64;
    let h1_h0 = if u.has_sqrt_minus1 { 2 } else { 4 };
    let shift = if k.is_real { s_k - 5 } else { s_k - 3 };
    let h3_h2 = scaled_power(u.index_units_over_star as u64, shift, "(H₃ : H₂)")?;
    if h3_h2 * h2_h1 * h1_h0 != h3_h0 {
        return inconsistent(format!("chain indices {h3_h2}·{h2_h1}·{h1_h0} do not telescope to {h3_h0}"));
    }
    let sub: u64 = k.subfields.iter().map(polya_order_quad).product();
    let ker = ker_order(k)?;
    if sub % h3_h2 != 0 || sub / h3_h2 != ker {
        return inconsistent(format!("∏|Po(kᵢ)| / (H₃ : H₂) = {sub}/{h3_h2} differs from |Ker ψ| = {ker}"));
    }
    Ok(ChainIndices { h3_h0, h2_h1, h1_h0, h3_h2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyaReport {
    pub d: [i64; 3],
    pub po_sub: [u64; 3],
    pub ker: u64,
    pub coker: u64,
    pub po_k: u64,
    pub chain: ChainIndices,
    pub s_k: u32,
    pub i2: u32,
    pub j2: u32,
    pub q_k: u32,
    pub nu_k: u32,
    pub product_e: u64,
}

pub fn polya_report(k: &BiquadField, cfg: &OracleConfig) -> Result<PolyaReport> {
    let j2 = k.j2(cfg)?;
    let po_sub = std::array::from_fn(|i| polya_order_quad(&k.subfields[i]));
    let ker = ker_order(k)?;
    let coker = 1u64 << j2;
    let po_k = polya_order_with_j2(k, j2)?;
    let chain = chain_indices(k)?;
    Ok(PolyaReport {
        d: k.d,
        po_sub,
        ker,
        coker,
        po_k,
        chain,
        s_k: k.profile.s_k,
        i2: k.profile.i2,
        j2,
        q_k: k.units.q_k,
        nu_k: k.units.nu_k,
        product_e: k.profile.product_e,
    })
}
