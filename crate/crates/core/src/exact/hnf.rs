//! Hermite normal form of integer row lattices.
//!
//! The form used throughout is lower triangular: row `i` has zeros in every
//! column after `i`, a positive pivot in column `i`, and every entry below a
//! pivot is reduced into `[0, pivot)`. With column 0 holding the coefficient
//! of `1`, row 0 is the smallest positive rational integer in the lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{inconsistent, Result};

/// Lower-triangular HNF of the lattice spanned by `rows`, each of length `n`.
/// Fails when the rows do not span a full-rank lattice.
pub fn hnf_lower(rows: &[Vec<BigInt>], n: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for col in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if nz.is_empty() {
                return inconsistent("lattice is not of full rank");
            }
            let piv = *nz.iter().min_by_key(|&&i| work[i][col].abs()).unwrap();
            if nz.len() == 1 {
                let mut row = work.swap_remove(piv);
                if row[col].is_negative() {
                    row.iter_mut().for_each(|x| *x = -&*x);
                }
                out[col] = Some(row);
                break;
            }
            let prow = work[piv].clone();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = work[i][col].div_floor(&prow[col]);
                for (x, p) in work[i].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
            }
        }
    }
    let mut h: Vec<Vec<BigInt>> = out.into_iter().map(|r| r.unwrap()).collect();
    for k in 1..n {
        for i in (0..k).rev() {
            let q = h[k][i].div_floor(&h[i][i]);
            if !q.is_zero() {
                let ri = h[i].clone();
                for (x, p) in h[k].iter_mut().zip(&ri) {
                    *x -= &q * p;
                }
            }
        }
    }
    Ok(h)
}

/// Index of a lower-triangular lattice in `Z^n`.
pub fn hnf_det(h: &[Vec<BigInt>]) -> BigInt {
    h.iter().enumerate().map(|(i, r)| r[i].clone()).product()
}

/// Coordinates of `v` with respect to the lower-triangular basis `h`, if `v`
/// lies in the lattice.
pub fn hnf_solve(h: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut rest = v.to_vec();
    let mut coords = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let (q, r) = rest[i].div_rem(&h[i][i]);
        if !r.is_zero() {
            return None;
        }
        for (x, p) in rest.iter_mut().zip(&h[i]) {
            *x -= &q * p;
        }
        coords[i] = q;
    }
    Some(coords)
}

/// Greatest common divisor of all entries.
pub fn content(h: &[Vec<BigInt>]) -> BigInt {
    let g = h.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}
