//! Principality of ideals of `O_K` by bounded enumeration.
//!
//! A generator `α` of `a` may be multiplied by any unit of the subgroup
//! generated by `-1` and the subfield fundamental units. That subgroup has
//! finite index in `O_K^×`, and its log lattice is spanned by mutually
//! orthogonal vectors, so every generator has a translate whose log vector
//! lies in an explicit box around `(ln N(a)/4, …)`. The box is cut into cells;
//! in each cell every embedding of the translate is bounded, which confines it
//! to an ellipsoid that is enumerated with Fincke–Pohst after LLL reduction.
//! Candidates are accepted only after an exact norm check, and exhausting the
//! budget is reported as an error, never as "nonprincipal".

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::lattice::IdealLattice;
use super::reduce::{apply_transform, big_to_f64, fincke_pohst, lll_exact, lll_float};
use super::OracleConfig;
use crate::biquad::{BiquadElement, BiquadField, EMBEDDING_SIGNS};
use crate::error::{invalid, Error, Result};

/// Relative widening of every embedding bound, absorbing floating-point
/// error in regulators and logarithms.
const BOUND_SLACK: f64 = 1e-7;
/// Relative widening of the enumeration radius.
const RADIUS_SLACK: f64 = 1e-6;

/// One axis of the unit box: its half-width and the sign of the axis
/// direction at each embedding.
struct Axis {
    half_width: f64,
    signs: [f64; 4],
}

fn unit_axes(field: &BiquadField) -> Vec<Axis> {
    (0..3)
        .filter_map(|i| {
            let r = field.subfields[i].regulator()?;
            Some(Axis { half_width: r / 2.0, signs: EMBEDDING_SIGNS.map(|s| s[i + 1] as f64) })
        })
        .collect()
}

/// Real and imaginary parts of every embedding, as rows of a `8 × 4` matrix
/// acting on coefficient vectors over `basis` (scaled coordinates).
fn embedding_forms(field: &BiquadField, basis: &[[BigInt; 4]; 4]) -> [[[f64; 4]; 2]; 4] {
    let mut out = [[[0.0; 4]; 2]; 4];
    for (k, b) in basis.iter().enumerate() {
        let v = b.clone().map(|x| big_to_f64(&x));
        for (j, o) in out.iter_mut().enumerate() {
            let (re, im) = field.radicals.embed_scaled_f64(&v, j);
            o[0][k] = re;
            o[1][k] = im;
        }
    }
    out
}

/// Weighted Gram matrix `Σⱼ wⱼ·|σⱼ(x)|²`.
fn weighted_gram(forms: &[[[f64; 4]; 2]; 4], weights: &[f64; 4]) -> [[f64; 4]; 4] {
    let mut g = [[0.0; 4]; 4];
    for (j, f) in forms.iter().enumerate() {
        for part in f {
            for a in 0..4 {
                for b in 0..4 {
                    g[a][b] += weights[j] * part[a] * part[b];
                }
            }
        }
    }
    g
}

fn weighted_rows(forms: &[[[f64; 4]; 2]; 4], weights: &[f64; 4]) -> Vec<Vec<f64>> {
    (0..4)
        .map(|k| {
            forms
                .iter()
                .enumerate()
                .flat_map(|(j, f)| f.iter().map(move |part| part[k] * weights[j].sqrt()))
                .collect()
        })
        .collect()
}

/// A generator of `a`, or `None` if `a` is provably nonprincipal.
pub fn principality_k(field: &BiquadField, a: &IdealLattice, cfg: &OracleConfig) -> Result<Option<BiquadElement>> {
    if a.field_d != field.d {
        return invalid("ideal belongs to a different field");
    }
    let (prim, g) = a.primitive_part();
    let scale = |e: BiquadElement| e.mul(&BiquadElement::from_int(field.radicals, g.clone()));
    if prim.norm.is_one() {
        return Ok(Some(scale(BiquadElement::one(field.radicals))));
    }
    let n = prim.norm.clone();
    let target = &n * 256;

    // T2-reduce the ideal basis exactly so that floating-point embeddings of
    // later combinations stay accurate
    let mut basis: [[BigInt; 4]; 4] = std::array::from_fn(|k| field.w_to_scaled(&prim.basis[k]));
    let t2_weights = [1, field.d[0].abs(), field.d[1].abs(), field.d[2].abs()].map(BigInt::from);
    lll_exact(&mut basis, &t2_weights);
    let forms = embedding_forms(field, &basis);

    let axes = unit_axes(field);
    let cell_width = cfg.cell_width;
    let counts: Vec<usize> = axes.iter().map(|ax| ((2.0 * ax.half_width / cell_width).ceil() as usize).max(1)).collect();
    let total_cells: u64 = counts.iter().map(|&c| c as u64).product();
    if total_cells > cfg.budget {
        return Err(Error::Budget(format!("{total_cells} cells exceed budget {}", cfg.budget)));
    }
    let log_center = big_to_f64(&n).ln() / 4.0;
    let mut budget = cfg.budget;
    let mut found: Option<BiquadElement> = None;
    for cell in 0..total_cells {
        let mut idx = cell;
        let mut log_bound = [log_center; 4];
        for (ax, &c) in axes.iter().zip(&counts) {
            let step = 2.0 * ax.half_width / c as f64;
            let lo = -ax.half_width + (idx % c as u64) as f64 * step;
            idx /= c as u64;
            for j in 0..4 {
                log_bound[j] += (lo * ax.signs[j]).max((lo + step) * ax.signs[j]);
            }
        }
        // |σⱼ(α)| ≤ Bⱼ for all j implies Σⱼ |σⱼ(α)|²/Bⱼ² ≤ 4
        let weights = log_bound.map(|l| (-2.0 * (l + BOUND_SLACK)).exp());
        let u = lll_float(&weighted_rows(&forms, &weights));
        let reduced = apply_transform(&u, &basis);
        let reduced_forms = embedding_forms(field, &reduced);
        let gram = weighted_gram(&reduced_forms, &weights);
        let radius = 4.0 * (1.0 + RADIUS_SLACK);
        let ctrl = fincke_pohst(&gram, radius, &mut budget, &mut |x| {
            let v: [BigInt; 4] = std::array::from_fn(|m| (0..4).map(|k| &reduced[k][m] * x[k]).sum());
            if field.radicals.norm(&v).abs() == target {
                found = Some(BiquadElement::from_scaled(field.radicals, &v));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if ctrl.is_break() {
            break;
        }
    }
    Ok(found.map(scale))
}
