//! Lattice reduction and short-vector enumeration for the principality
//! search: exact LLL under a diagonal integer inner product, floating-point
//! LLL with exact integer transforms, and Fincke–Pohst enumeration.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn dot_weighted(x: &[BigInt; 4], y: &[BigInt; 4], w: &[BigInt; 4]) -> BigInt {
    (0..4).map(|m| &x[m] * &y[m] * &w[m]).sum()
}

fn gram_schmidt(b: &[[BigInt; 4]], w: &[BigInt; 4]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar_sq = vec![BigRational::zero(); n];
    // r[i][j] = <b_i, b*_j>, computed from the Gram matrix
    let mut r = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut v = BigRational::from_integer(dot_weighted(&b[i], &b[j], w));
            for k in 0..j {
                v -= &mu[j][k] * &r[i][k];
            }
            r[i][j] = v;
            if j < i {
                mu[i][j] = &r[i][j] / &bstar_sq[j];
            }
        }
        bstar_sq[i] = r[i][i].clone();
    }
    (mu, bstar_sq)
}

/// LLL-reduce `b` (δ = 3/4) for the inner product `Σ wₘ·xₘ·yₘ`, exactly.
pub fn lll_exact(b: &mut [[BigInt; 4]], w: &[BigInt; 4]) {
    let n = b.len();
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(b, w);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (mu, bs) = gram_schmidt(b, w);
        let lhs = &bs[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bs[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Floating-point LLL (δ = 0.99) on the rows of `y`, returning the integer
/// transform `u` with reduced rows `u · y`.
pub fn lll_float(y: &[Vec<f64>]) -> [[i64; 4]; 4] {
    let n = y.len();
    let mut y: Vec<Vec<f64>> = y.to_vec();
    let mut u = [[0i64; 4]; 4];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gso = |y: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut nrm = vec![0.0; n];
        for i in 0..n {
            let mut v = y[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&y[i], &bs[j]) / nrm[j];
                for (a, b) in v.iter_mut().zip(&bs[j]) {
                    *a -= mu[i][j] * b;
                }
            }
            nrm[i] = dot(&v, &v);
            bs.push(v);
        }
        (mu, nrm)
    };
    let mut k = 1;
    let mut steps = 0;
    while k < n && steps < 10_000 {
        steps += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&y);
            let q = mu[k][j].round();
            if q != 0.0 && q.abs() < 1e15 {
                let qi = q as i64;
                let yj = y[j].clone();
                for (a, b) in y[k].iter_mut().zip(&yj) {
                    *a -= q * b;
                }
                let uj = u[j];
                for (a, b) in u[k].iter_mut().zip(&uj) {
                    *a -= qi * b;
                }
            }
        }
        let (mu, nrm) = gso(&y);
        if nrm[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1] {
            k += 1;
        } else {
            y.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    u
}

/// Enumerate nonzero integer vectors `x` (one of each pair `±x`) with
/// `xᵀ·gram·x ≤ bound`, calling `visit` on each. Each visited tree node
/// consumes one unit of `budget`.
pub fn fincke_pohst(
    gram: &[[f64; 4]; 4],
    bound: f64,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[i64; 4]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    const N: usize = 4;
    let mut q = *gram;
    for i in 0..N {
        if q[i][i] <= 0.0 || !q[i][i].is_finite() {
            return Err(Error::Inconsistency("quadratic form is not positive definite".into()));
        }
        for j in i + 1..N {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..N {
            for l in k..N {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut x = [0i64; N];
    let ctrl = descend(&q, N - 1, bound, true, &mut x, budget, visit)?;
    Ok(ctrl)
}

fn descend(
    q: &[[f64; 4]; 4],
    i: usize,
    remaining: f64,
    all_zero_above: bool,
    x: &mut [i64; 4],
    budget: &mut u64,
    visit: &mut dyn FnMut(&[i64; 4]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    if *budget == 0 {
        return Err(Error::Budget("enumeration node budget exhausted".into()));
    }
    *budget -= 1;
    let center: f64 = -(i + 1..4).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let reach = (remaining.max(0.0) / q[i][i]).sqrt() * (1.0 + 1e-9) + 1e-9;
    let mut lo = (center - reach).ceil();
    let hi = (center + reach).floor();
    if all_zero_above {
        lo = lo.max(0.0);
    }
    if !(lo.is_finite() && hi.is_finite()) || hi - lo > 1e12 {
        return Err(Error::Budget("enumeration range too large".into()));
    }
    let (lo, hi) = (lo as i64, hi as i64);
    for v in lo..=hi {
        let t = v as f64 - center;
        let rest = remaining - q[i][i] * t * t;
        if rest < -1e-9 * remaining.abs().max(1.0) {
            continue;
        }
        x[i] = v;
        let zero_here = all_zero_above && v == 0;
        if i == 0 {
            if !zero_here {
                if let ControlFlow::Break(()) = visit(x) {
                    return Ok(ControlFlow::Break(()));
                }
            }
        } else if let ControlFlow::Break(()) = descend(q, i - 1, rest, zero_here, x, budget, visit)? {
            return Ok(ControlFlow::Break(()));
        }
    }
    x[i] = 0;
    Ok(ControlFlow::Continue(()))
}

/// `u · b` for an integer transform `u`.
pub fn apply_transform(u: &[[i64; 4]; 4], b: &[[BigInt; 4]; 4]) -> [[BigInt; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|m| (0..4).map(|k| &b[k][m] * u[i][k]).sum()))
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}
