//! Quadratic fields `Q(√d)`: discriminant, ramification, fundamental units,
//! the closed formula `|Po(k)| = 2^(s-1-ν)`, and a formula-free oracle that
//! counts strongly ambiguous ideal classes directly.

mod ideal;
mod oracle;

pub use ideal::QuadIdeal;
pub use oracle::{ambiguous_class_reps_quad, ambiguous_oracle_quad, principality_quad, ramified_prime_ideal};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{isqrt_big, prime_divisors, squarefree_part};

/// `(x + y√d) / den` with `den ∈ {1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub field_d: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub den: u8,
}

impl QuadElement {
    pub fn new(field_d: i64, x: impl Into<BigInt>, y: impl Into<BigInt>, den: u8) -> Result<Self> {
        let (mut x, mut y) = (x.into(), y.into());
        let mut den = den;
        match den {
            1 => {}
            2 => {
                if x.is_even() && y.is_even() {
                    x /= 2;
                    y /= 2;
                    den = 1;
                } else if field_d.rem_euclid(4) != 1 || x.is_odd() != y.is_odd() {
                    return invalid(format!("({x} + {y}√{field_d})/2 is not integral"));
                }
            }
            _ => return invalid("denominator must be 1 or 2"),
        }
        Ok(Self { field_d, x, y, den })
    }

    pub fn from_int(field_d: i64, n: impl Into<BigInt>) -> Self {
        Self { field_d, x: n.into(), y: BigInt::zero(), den: 1 }
    }

    /// `(x² - d·y²) / den²`, an integer for integral elements.
    pub fn norm(&self) -> BigInt {
        let num = &self.x * &self.x - BigInt::from(self.field_d) * &self.y * &self.y;
        num / BigInt::from(self.den as u32 * self.den as u32)
    }

    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.x / BigInt::from(self.den)
    }

    pub fn conj(&self) -> Self {
        Self { field_d: self.field_d, x: self.x.clone(), y: -&self.y, den: self.den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field_d, o.field_d);
        let d = BigInt::from(self.field_d);
        let x = &self.x * &o.x + d * &self.y * &o.y;
        let y = &self.x * &o.y + &self.y * &o.x;
        let den = self.den * o.den;
        if den == 4 {
            // (x + y√d)/4 of two half-integral factors is integral or half-integral
            let e = Self::new(self.field_d, x / 2, y / 2, 2);
            return e.expect("product of integral elements is integral");
        }
        Self::new(self.field_d, x, y, den).expect("product of integral elements is integral")
    }

    pub fn neg(&self) -> Self {
        Self { field_d: self.field_d, x: -&self.x, y: -&self.y, den: self.den }
    }

    /// Value under the embedding sending `√d` to the positive root (real part
    /// only for imaginary fields).
    pub fn to_f64(&self) -> f64 {
        let s = (self.field_d.unsigned_abs() as f64).sqrt();
        let y = if self.field_d > 0 { self.y.to_f64().unwrap_or(f64::NAN) * s } else { 0.0 };
        (self.x.to_f64().unwrap_or(f64::NAN) + y) / self.den as f64
    }

    /// Rational coordinates `(a, b)` with the element equal to `a + b√d`.
    pub fn rational_coords(&self) -> (BigRational, BigRational) {
        let den = BigInt::from(self.den);
        (BigRational::new(self.x.clone(), den.clone()), BigRational::new(self.y.clone(), den))
    }

    /// Coordinates over the integral basis `(1, ω)`.
    pub fn omega_coords(&self) -> (BigInt, BigInt) {
        if self.field_d.rem_euclid(4) == 1 {
            // (x + y√d)/den = u + v(1+√d)/2 with v = 2y/den, u = (x - y)/den
            let v = BigInt::from(2) * &self.y / BigInt::from(self.den);
            let u = (&self.x - &self.y) / BigInt::from(self.den);
            (u, v)
        } else {
            (self.x.clone(), self.y.clone())
        }
    }

    pub fn from_omega_coords(field_d: i64, u: &BigInt, v: &BigInt) -> Self {
        if field_d.rem_euclid(4) == 1 {
            Self::new(field_d, BigInt::from(2) * u + v, v.clone(), 2).expect("integral by construction")
        } else {
            Self { field_d, x: u.clone(), y: v.clone(), den: 1 }
        }
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { '-' } else { '+' };
        let body = format!("{} {} {}*sqrt({})", self.x, sign, self.y.abs(), self.field_d);
        if self.den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    pub d: i64,
    pub disc: i64,
    pub is_real: bool,
    pub ramified_primes: Vec<u64>,
    pub s: u32,
    pub fundamental_unit: Option<QuadElement>,
    /// Norm of the fundamental unit; `None` for imaginary fields.
    pub lambda: Option<i8>,
    pub nu: u8,
}

impl QuadraticField {
    pub fn new(d_raw: i64) -> Result<Self> {
        if d_raw == 0 {
            return invalid("d must be nonzero");
        }
        let d = squarefree_part(d_raw)?;
        if d == 1 {
            return invalid(format!("{d_raw} is a perfect square"));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let ramified_primes = prime_divisors(disc.unsigned_abs());
        let s = ramified_primes.len() as u32;
        let is_real = d > 0;
        let (fundamental_unit, lambda) = if is_real {
            let e = cf_fundamental_unit(d);
            let n = e.norm();
            let l = if n.is_one() { 1 } else { -1 };
            (Some(e), Some(l))
        } else {
            (None, None)
        };
        let nu = u8::from(lambda == Some(1));
        Ok(Self { d, disc, is_real, ramified_primes, s, fundamental_unit, lambda, nu })
    }

    /// `ω = √d` or `(1 + √d)/2`, generator of the ring of integers over `Z`.
    pub fn omega(&self) -> QuadElement {
        QuadElement::from_omega_coords(self.d, &BigInt::zero(), &BigInt::one())
    }

    /// `(trace, norm)` of `ω`, so `ω² = trace·ω - norm`.
    pub fn omega_trace_norm(&self) -> (i64, i64) {
        if self.d.rem_euclid(4) == 1 {
            (1, (1 - self.d) / 4)
        } else {
            (0, -self.d)
        }
    }

    /// Unit index `(O_k^× : O*_k)`: 2 for real fields whose fundamental unit
    /// has norm -1, else 1.
    pub fn star_index(&self) -> u32 {
        if self.lambda == Some(-1) {
            2
        } else {
            1
        }
    }

    /// `ln ε` for real fields.
    pub fn regulator(&self) -> Option<f64> {
        self.fundamental_unit.as_ref().map(|e| ln_quad_positive(e))
    }
}

/// Natural log of a positive real quadratic number `(x + y√d)/den`, robust for
/// coordinates far beyond `f64` range.
pub(crate) fn ln_quad_positive(e: &QuadElement) -> f64 {
    let bits = e.x.bits().max(e.y.bits());
    let shift = bits.saturating_sub(60) as u32;
    let x = (&e.x >> shift).to_f64().unwrap();
    let y = (&e.y >> shift).to_f64().unwrap();
    let v = (x + y * (e.field_d as f64).sqrt()) / e.den as f64;
    v.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn quad_construct(d_raw: i64) -> Result<QuadraticField> {
    QuadraticField::new(d_raw)
}

pub fn fundamental_unit(k: &QuadraticField) -> Result<QuadElement> {
    k.fundamental_unit
        .clone()
        .ok_or_else(|| Error::Domain(format!("Q(√{}) is imaginary and has no fundamental unit", k.d)))
}

/// Closed-form `|Po(k)| = 2^(s - 1 - ν)`.
pub fn polya_order_quad(k: &QuadraticField) -> u64 {
    1u64 << (k.s - 1 - k.nu as u32)
}

/// For a fundamental unit of norm `+1`, the pair `(ρ, r)` with `ρ ∈ O_k`,
/// `r = N(ρ) ∈ Z` and `ε = ρ²/r`.
pub fn norm_one_witness(k: &QuadraticField) -> Result<Option<(QuadElement, BigInt)>> {
    let e = fundamental_unit(k)?;
    if k.lambda != Some(1) {
        return Ok(None);
    }
    let rho = QuadElement::new(k.d, &e.x + BigInt::from(e.den), e.y.clone(), e.den)?;
    let r = rho.norm();
    Ok(Some((rho, r)))
}

/// Fundamental unit from the periodic continued fraction of `√d`
/// (`d ≢ 1 mod 4`) or `(1 + √d)/2` (`d ≡ 1 mod 4`).
fn cf_fundamental_unit(d: i64) -> QuadElement {
    let half = d.rem_euclid(4) == 1;
    let dd = BigInt::from(d);
    let root = isqrt_big(&dd);
    let (mut p, mut q) = if half { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
    let q0 = q.clone();
    let (mut a_prev, mut a_cur) = (BigInt::zero(), BigInt::one());
    let (mut b_prev, mut b_cur) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&p + &root).div_floor(&q);
        let a_next = &a * &a_cur + &a_prev;
        let b_next = &a * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        p = &a * &q - &p;
        q = (&dd - &p * &p) / &q;
        if q == q0 {
            break;
        }
    }
    if half {
        let x = BigInt::from(2) * &a_cur - &b_cur;
        QuadElement::new(d, x, b_cur, 2).expect("continued fraction yields an integral unit")
    } else {
        QuadElement { field_d: d, x: a_cur, y: b_cur, den: 1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(d: i64, x: i64, y: i64, den: u8) -> QuadElement {
        QuadElement::new(d, x, y, den).unwrap()
    }

    #[test]
    fn construct_examples() {
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!((k.disc, k.ramified_primes.clone(), k.s, k.nu), (-4, vec![2], 1, 0));
        let k = QuadraticField::new(3).unwrap();
        assert_eq!((k.disc, k.ramified_primes.clone(), k.s), (12, vec![2, 3], 2));
        assert_eq!(QuadraticField::new(12).unwrap(), k);
        assert!(QuadraticField::new(4).is_err());
        assert!(QuadraticField::new(0).is_err());
    }

    #[test]
    fn unit_examples() {
        let cases = [(2, el(2, 1, 1, 1), -1), (3, el(3, 2, 1, 1), 1), (5, el(5, 1, 1, 2), -1), (6, el(6, 5, 2, 1), 1)];
        for (d, e, l) in cases {
            let k = QuadraticField::new(d).unwrap();
            assert_eq!(fundamental_unit(&k).unwrap(), e);
            assert_eq!(k.lambda, Some(l));
        }
        let k = QuadraticField::new(139).unwrap();
        assert_eq!(fundamental_unit(&k).unwrap(), el(139, 77563250, 6578829, 1));
        assert!(fundamental_unit(&QuadraticField::new(-7).unwrap()).is_err());
    }

    /// Smallest unit > 1 by scanning `y`, for comparison with the continued
    /// fraction route. Units `(x + y√d)/2` satisfy `x² - d·y² = ±4`.
    fn brute_unit(d: i64) -> QuadElement {
        let (den, targets) = if d.rem_euclid(4) == 1 { (2u8, [-4i64, 4]) } else { (1, [-1, 1]) };
        for y in 1i64.. {
            for t in targets {
                let v = d * y * y + t;
                if v <= 0 {
                    continue;
                }
                let x = (v as f64).sqrt().round() as i64;
                if x * x == v {
                    return el(d, x, y, den);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn unit_matches_brute_force_below_100() {
        for d in 2..100i64 {
            if !crate::exact::is_squarefree(d) {
                continue;
            }
            let k = QuadraticField::new(d).unwrap();
            let e = k.fundamental_unit.clone().unwrap();
            assert_eq!(e, brute_unit(d), "d = {d}");
            assert!(e.norm().abs().is_one());
            assert!(e.to_f64() > 1.0);
        }
    }

    #[test]
    fn polya_formula_examples() {
        assert_eq!(polya_order_quad(&QuadraticField::new(-1).unwrap()), 1);
        assert_eq!(polya_order_quad(&QuadraticField::new(-5).unwrap()), 2);
        assert_eq!(polya_order_quad(&QuadraticField::new(3).unwrap()), 1);
    }

    #[test]
    fn norm_one_witness_squares_back() {
        for d in [3i64, 6, 7, 11, 14, 15, 21, 30, 33, 35, 46, 94] {
            let k = QuadraticField::new(d).unwrap();
            let (rho, r) = norm_one_witness(&k).unwrap().unwrap();
            let e = k.fundamental_unit.clone().unwrap();
            let sq = rho.mul(&rho);
            let (a, b) = sq.rational_coords();
            let (ea, eb) = e.rational_coords();
            let r = BigRational::from_integer(r);
            assert_eq!(a / &r, ea, "d = {d}");
            assert_eq!(b / &r, eb, "d = {d}");
        }
        assert!(norm_one_witness(&QuadraticField::new(2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn omega_coordinates_round_trip() {
        for d in [-7i64, -5, 2, 5, 13] {
            for (x, y) in [(3i64, 1i64), (-4, 6), (0, 2)] {
                let den = if d.rem_euclid(4) == 1 && (x - y) % 2 == 0 && x % 2 != 0 { 2 } else { 1 };
                let e = el(d, x, y, den);
                let (u, v) = e.omega_coords();
                assert_eq!(QuadElement::from_omega_coords(d, &u, &v), e);
            }
        }
    }
}
