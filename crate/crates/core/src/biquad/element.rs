//! Exact elements of `K = Q(√d₁, √d₂)` over the radical basis
//! `(1, √d₁, √d₂, √d₃)` with principal complex square roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{isqrt_u128, RadicalForm};
use crate::quadratic::QuadElement;

/// Multiplication constants of the radical basis: `√dᵢ·√dⱼ = c·√dₗ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Radicals {
    pub d: [i64; 3],
    pub c12: i64,
    pub c13: i64,
    pub c23: i64,
}

/// Sign patterns on `(1, √d₁, √d₂, √d₃)` for the four embeddings, indexed
/// by the signs of `√d₁, √d₂` in the order `++, +-, -+, --`.
pub const EMBEDDING_SIGNS: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

/// Sign patterns of `σ₁, σ₂, σ₃`: `σᵢ` fixes `√dᵢ` and negates the others.
pub const GALOIS_SIGNS: [[i8; 4]; 3] = [[1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

fn product_constant(a: i64, b: i64, c: i64) -> i64 {
    let prod = a as i128 * b as i128;
    let f2 = prod / c as i128;
    debug_assert_eq!(f2 * c as i128, prod);
    let f = isqrt_u128(f2 as u128) as i64;
    debug_assert_eq!(f as i128 * f as i128, f2);
    if a < 0 && b < 0 {
        -f
    } else {
        f
    }
}

impl Radicals {
    pub fn new(d: [i64; 3]) -> Self {
        Self {
            d,
            c12: product_constant(d[0], d[1], d[2]),
            c13: product_constant(d[0], d[2], d[1]),
            c23: product_constant(d[1], d[2], d[0]),
        }
    }

    /// Product of two coordinate vectors over the radical basis.
    pub fn mul(&self, a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
        let [d1, d2, d3] = self.d;
        [
            &a[0] * &b[0] + &a[1] * &b[1] * d1 + &a[2] * &b[2] * d2 + &a[3] * &b[3] * d3,
            &a[0] * &b[1] + &a[1] * &b[0] + (&a[2] * &b[3] + &a[3] * &b[2]) * self.c23,
            &a[0] * &b[2] + &a[2] * &b[0] + (&a[1] * &b[3] + &a[3] * &b[1]) * self.c13,
            &a[0] * &b[3] + &a[3] * &b[0] + (&a[1] * &b[2] + &a[2] * &b[1]) * self.c12,
        ]
    }

    /// `N_{K/Q}` of a coordinate vector, via `N_{K/k₁}(a) = P + Q·√d₁`.
    pub fn norm(&self, a: &[BigInt; 4]) -> BigInt {
        let [d1, d2, d3] = self.d;
        let p = &a[0] * &a[0] + &a[1] * &a[1] * d1 - &a[2] * &a[2] * d2 - &a[3] * &a[3] * d3;
        let q = BigInt::from(2) * (&a[0] * &a[1] - &a[2] * &a[3] * self.c23);
        &p * &p - &q * &q * d1
    }

    /// Same as [`Radicals::norm`] with `i128` arithmetic, `None` on overflow.
    pub fn norm_i128(&self, a: &[i128; 4]) -> Option<i128> {
        let [d1, d2, d3] = self.d.map(|x| x as i128);
        let sq = |x: i128| x.checked_mul(x);
        let p = sq(a[0])?
            .checked_add(sq(a[1])?.checked_mul(d1)?)?
            .checked_sub(sq(a[2])?.checked_mul(d2)?)?
            .checked_sub(sq(a[3])?.checked_mul(d3)?)?;
        let q = a[0].checked_mul(a[1])?.checked_sub(a[2].checked_mul(a[3])?.checked_mul(self.c23 as i128)?)?;
        let q = q.checked_mul(2)?;
        sq(p)?.checked_sub(sq(q)?.checked_mul(d1)?)
    }

    /// True when `v/4` lies in `O_K`: the relative trace and norm down to
    /// `Q(√d₁)` must both be integral there.
    pub fn scaled_is_integral(&self, v: &[BigInt; 4]) -> bool {
        let [d1, d2, d3] = self.d;
        let trace_norm = &v[0] * &v[0] - &v[1] * &v[1] * d1;
        if !trace_norm.is_multiple_of(&BigInt::from(4)) {
            return false;
        }
        let p = &v[0] * &v[0] + &v[1] * &v[1] * d1 - &v[2] * &v[2] * d2 - &v[3] * &v[3] * d3;
        let q = BigInt::from(2) * (&v[0] * &v[1] - &v[2] * &v[3] * self.c23);
        if !p.is_multiple_of(&BigInt::from(8)) {
            return false;
        }
        (&p * &p - &q * &q * d1).is_multiple_of(&BigInt::from(256))
    }

    pub fn apply_signs(v: &[BigInt; 4], signs: &[i8; 4]) -> [BigInt; 4] {
        std::array::from_fn(|k| if signs[k] < 0 { -&v[k] } else { v[k].clone() })
    }

    /// `(re, im)` of the embedding `j` of `v/4`, in floating point.
    pub fn embed_scaled_f64(&self, v: &[f64; 4], j: usize) -> (f64, f64) {
        let signs = EMBEDDING_SIGNS[j];
        let (mut re, mut im) = (v[0], 0.0);
        for k in 1..4 {
            let d = self.d[k - 1];
            let t = signs[k] as f64 * v[k] * (d.unsigned_abs() as f64).sqrt();
            if d > 0 {
                re += t;
            } else {
                im += t;
            }
        }
        (re / 4.0, im / 4.0)
    }

    /// Index of the embedding complex conjugate to `j` (itself when real).
    pub fn conjugate_embedding(&self, j: usize) -> usize {
        let mut s = EMBEDDING_SIGNS[j];
        for k in 1..3 {
            if self.d[k - 1] < 0 {
                s[k] = -s[k];
            }
        }
        EMBEDDING_SIGNS.iter().position(|t| t[1] == s[1] && t[2] == s[2]).unwrap()
    }
}

/// `coords[0] + coords[1]·√d₁ + coords[2]·√d₂ + coords[3]·√d₃`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiquadElement {
    pub radicals: Radicals,
    pub coords: [BigRational; 4],
}

impl BiquadElement {
    pub fn new(radicals: Radicals, coords: [BigRational; 4]) -> Self {
        Self { radicals, coords }
    }

    pub fn from_int(radicals: Radicals, n: impl Into<BigInt>) -> Self {
        let mut coords: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        coords[0] = BigRational::from_integer(n.into());
        Self { radicals, coords }
    }

    pub fn one(radicals: Radicals) -> Self {
        Self::from_int(radicals, 1)
    }

    /// The element `v/4`.
    pub fn from_scaled(radicals: Radicals, v: &[BigInt; 4]) -> Self {
        let four = BigInt::from(4);
        Self { radicals, coords: std::array::from_fn(|k| BigRational::new(v[k].clone(), four.clone())) }
    }

    /// `4·self` as an integer vector, if its coordinates have denominators
    /// dividing 4.
    pub fn to_scaled(&self) -> Option<[BigInt; 4]> {
        let four = BigRational::from_integer(BigInt::from(4));
        let v: Vec<BigRational> = self.coords.iter().map(|c| c * &four).collect();
        if v.iter().all(|c| c.is_integer()) {
            Some(std::array::from_fn(|k| v[k].to_integer()))
        } else {
            None
        }
    }

    /// Embed an element of the subfield `Q(√dᵢ)`, `i ∈ {0, 1, 2}`.
    pub fn from_quad(radicals: Radicals, i: usize, e: &QuadElement) -> Self {
        debug_assert_eq!(radicals.d[i], e.field_d);
        let (a, b) = e.rational_coords();
        let mut coords: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        coords[0] = a;
        coords[i + 1] = b;
        Self { radicals, coords }
    }

    fn split(&self) -> ([BigInt; 4], BigInt) {
        let den = self.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        (std::array::from_fn(|k| self.coords[k].numer() * (&den / self.coords[k].denom())), den)
    }

    fn join(radicals: Radicals, v: [BigInt; 4], den: &BigInt) -> Self {
        Self { radicals, coords: v.map(|x| BigRational::new(x, den.clone())) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, da) = self.split();
        let (b, db) = o.split();
        Self::join(self.radicals, self.radicals.mul(&a, &b), &(da * db))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { radicals: self.radicals, coords: std::array::from_fn(|k| &self.coords[k] + &o.coords[k]) }
    }

    pub fn neg(&self) -> Self {
        Self { radicals: self.radicals, coords: std::array::from_fn(|k| -&self.coords[k]) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.radicals);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `σᵢ(self)` for `i ∈ {1, 2, 3}`.
    pub fn conj(&self, i: usize) -> Self {
        let s = GALOIS_SIGNS[i - 1];
        Self {
            radicals: self.radicals,
            coords: std::array::from_fn(|k| if s[k] < 0 { -&self.coords[k] } else { self.coords[k].clone() }),
        }
    }

    pub fn norm(&self) -> BigRational {
        let (a, den) = self.split();
        BigRational::new(self.radicals.norm(&a), den.pow(4))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.to_scaled().is_some_and(|v| self.radicals.scaled_is_integral(&v))
    }

    pub fn radical_form(&self) -> RadicalForm {
        let mut radicands = vec![1];
        radicands.extend(self.radicals.d);
        RadicalForm { coeffs: self.coords.to_vec(), radicands }
    }
}

impl fmt::Display for BiquadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*sqrt({})", self.radicals.d[k - 1])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
