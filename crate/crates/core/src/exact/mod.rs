//! Exact integer primitives: squarefree decomposition, trial-division
//! factoring, the Kronecker symbol, and interval enclosures of embeddings.

mod hnf;
mod interval;

pub use hnf::{content, hnf_det, hnf_lower, hnf_solve};

pub use interval::{
    refine_embedding, ComplexInterval, Dyadic, DyadicInterval, EmbeddingVector, Enclosure,
    FixedInterval, RadicalForm,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};

/// `input = squarefree_part · square_part²`, with `squarefree_part` carrying
/// the sign of the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquarefreeDecomposition {
    pub input: i64,
    pub square_part: u64,
    pub squarefree_part: i64,
}

pub fn squarefree_decompose(n: i64) -> Result<SquarefreeDecomposition> {
    if n == 0 {
        return invalid("squarefree decomposition of zero");
    }
    let mut d: u64 = 1;
    let mut f: u64 = 1;
    for (p, e) in factorize(n.unsigned_abs()) {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    let d = if n < 0 { -(d as i64) } else { d as i64 };
    Ok(SquarefreeDecomposition {
        input: n,
        square_part: f,
        squarefree_part: d,
    })
}

pub fn squarefree_part(n: i64) -> Result<i64> {
    Ok(squarefree_decompose(n)?.squarefree_part)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Prime factorization by trial division; `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Floor square root of a non-negative big integer.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Ceiling square root of a non-negative big integer.
pub fn isqrt_big_ceil(n: &BigInt) -> BigInt {
    let s = isqrt_big(n);
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

pub fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = isqrt_big(n);
    (&(&s * &s) == n).then_some(s)
}

/// The Kronecker symbol `(a | n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if a == 0 && n == 0 {
        return invalid("kronecker symbol (0 | 0) is undefined");
    }
    // (2 | b) for odd b, indexed by b mod 8
    const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let mut a = a as i128;
    let mut b = n as i128;
    if b == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    if a % 2 == 0 && b % 2 == 0 {
        return Ok(0);
    }
    let mut v = 0;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    let mut k: i8 = if v % 2 == 0 { 1 } else { TAB2[(a & 7) as usize] };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return Ok(if b > 1 { 0 } else { k });
        }
        let mut v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}
