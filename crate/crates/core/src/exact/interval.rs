//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! [`FixedInterval`] is the working type: both endpoints are integers at a
//! common binary scale, and every operation rounds the lower endpoint down and
//! the upper endpoint up. [`refine_embedding`] turns those working enclosures
//! into canonical grid cells, so enclosures at increasing precision nest.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{isqrt_big, isqrt_big_ceil};

fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    // `>>` on BigInt rounds toward negative infinity
    x >> s
}

fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

/// Closed interval `[lo, hi] · 2^(-scale)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl FixedInterval {
    pub fn zero(scale: u32) -> Self {
        Self {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            scale,
        }
    }

    pub fn from_int(n: &BigInt, scale: u32) -> Self {
        let v = n << scale;
        Self {
            lo: v.clone(),
            hi: v,
            scale,
        }
    }

    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        let num = q.numer() << scale;
        let den = q.denom();
        Self {
            lo: num.div_floor(den),
            hi: num.div_ceil(den),
            scale,
        }
    }

    /// Enclosure of `√m` for `m ≥ 0`.
    pub fn sqrt_int(m: u64, scale: u32) -> Self {
        let v = BigInt::from(m) << (2 * scale);
        Self {
            lo: isqrt_big(&v),
            hi: isqrt_big_ceil(&v),
            scale,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Width in units of `2^(-scale)`.
    pub fn width_units(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// True when the width is strictly below one (as a real number).
    pub fn narrower_than_one(&self) -> bool {
        self.width_units() < (BigInt::one() << self.scale)
    }

    /// Integers lying in the interval.
    pub fn integers(&self) -> (BigInt, BigInt) {
        (ceil_shr(&self.lo, self.scale), floor_shr(&self.hi, self.scale))
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            scale: self.scale,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.scale, o.scale);
        Self {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            scale: self.scale,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.scale, o.scale);
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Self {
            lo: floor_shr(lo, self.scale),
            hi: ceil_shr(hi, self.scale),
            scale: self.scale,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Self { lo: b, hi: a, scale: self.scale }
        } else {
            Self { lo: a, hi: b, scale: self.scale }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        debug_assert!(k.is_positive());
        Self {
            lo: self.lo.div_floor(k),
            hi: self.hi.div_ceil(k),
            scale: self.scale,
        }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            Self { lo: BigInt::zero(), hi: m.hi, scale: m.scale }
        } else {
            m
        }
    }

    /// Square root, with negative parts of the interval clamped to zero.
    pub fn sqrt(&self) -> Self {
        let clamp = |x: &BigInt| if x.is_negative() { BigInt::zero() } else { x.clone() };
        let lo = clamp(&self.lo) << self.scale;
        let hi = clamp(&self.hi) << self.scale;
        Self {
            lo: isqrt_big(&lo),
            hi: isqrt_big_ceil(&hi),
            scale: self.scale,
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            scale: self.scale,
        }
    }

    pub fn mid_f64(&self) -> f64 {
        let m: BigInt = (&self.lo + &self.hi) >> 1u32;
        big_to_f64_scaled(&m, self.scale)
    }

    pub fn hi_f64(&self) -> f64 {
        big_to_f64_scaled(&self.hi, self.scale)
    }

    pub fn lo_f64(&self) -> f64 {
        big_to_f64_scaled(&self.lo, self.scale)
    }

    /// Magnitude bound `max(|lo|, |hi|)` rounded up to an integer.
    pub fn abs_ceil(&self) -> BigInt {
        let a = ceil_shr(&self.lo.abs(), self.scale);
        let b = ceil_shr(&self.hi.abs(), self.scale);
        a.max(b)
    }
}

fn big_to_f64_scaled(m: &BigInt, scale: u32) -> f64 {
    let bits = m.bits();
    if bits > 900 {
        let drop = (bits - 900) as u32;
        let top = (m >> drop).to_f64().unwrap_or(f64::NAN);
        return top * 2f64.powi(drop as i32 - scale as i32);
    }
    let f = m.to_f64().unwrap_or(f64::NAN);
    f * 2f64.powi(-(scale as i32))
}

/// Rectangular complex enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: FixedInterval,
    pub im: FixedInterval,
}

impl ComplexInterval {
    pub fn real(re: FixedInterval) -> Self {
        let s = re.scale;
        Self { re, im: FixedInterval::zero(s) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn neg(&self) -> Self {
        Self { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale_real(&self, k: &FixedInterval) -> Self {
        Self { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn abs_sq(&self) -> FixedInterval {
        self.re.square().add(&self.im.square())
    }

    /// Enclosure of the principal square root. When the imaginary part is
    /// exactly zero and the real part negative, the root on the positive
    /// imaginary axis is returned.
    pub fn sqrt(&self) -> Self {
        if self.im.is_exact() && self.im.lo.is_zero() {
            if !self.re.is_negative() {
                return Self::real(self.re.sqrt());
            }
            return Self { re: FixedInterval::zero(self.re.scale), im: self.re.neg().sqrt() };
        }
        let r = self.abs_sq().sqrt();
        let two = BigInt::from(2);
        let re = r.add(&self.re).div_int(&two).sqrt();
        let im_mag = r.sub(&self.re).div_int(&two).sqrt();
        let im = if self.im.is_positive() {
            im_mag
        } else if self.im.is_negative() {
            im_mag.neg()
        } else {
            im_mag.hull(&im_mag.neg())
        };
        Self { re, im }
    }
}

/// `mantissa · 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Self { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mantissa.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(self.exponent.clamp(-1100, 1100) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        let one = BigInt::one();
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u32)
        } else {
            BigRational::new(self.mantissa.clone(), one << (-self.exponent) as u32)
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn exact_zero() -> Self {
        Self { lo: Dyadic::zero(), hi: Dyadic::zero() }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn width(&self) -> BigRational {
        self.hi.to_rational() - self.lo.to_rational()
    }
}

/// Enclosure of one embedding value; `im` is exactly zero for real embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingVector {
    pub precision_bits: u32,
    pub values: Vec<Enclosure>,
}

/// `Σ coeffs[k] · √radicands[k]`, principal roots, with distinct squarefree
/// radicands (`1` for the rational part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalForm {
    pub coeffs: Vec<BigRational>,
    pub radicands: Vec<i64>,
}

impl RadicalForm {
    /// Value under the embedding that sends `√radicands[k]` to
    /// `signs[k] · √radicands[k]`.
    pub fn enclose(&self, signs: &[i8], scale: u32) -> ComplexInterval {
        let mut re = FixedInterval::zero(scale);
        let mut im = FixedInterval::zero(scale);
        for ((c, &m), &s) in self.coeffs.iter().zip(&self.radicands).zip(signs) {
            if c.is_zero() {
                continue;
            }
            let c = if s < 0 { -c } else { c.clone() };
            let coeff = FixedInterval::from_rational(&c, scale);
            let term = if m.unsigned_abs() == 1 {
                coeff
            } else {
                coeff.mul(&FixedInterval::sqrt_int(m.unsigned_abs(), scale))
            };
            if m > 0 {
                re = re.add(&term);
            } else {
                im = im.add(&term);
            }
        }
        ComplexInterval { re, im }
    }

    fn component_terms(&self, signs: &[i8], imaginary: bool) -> Vec<(BigRational, u64)> {
        self.coeffs
            .iter()
            .zip(&self.radicands)
            .zip(signs)
            .filter(|((c, &m), _)| !c.is_zero() && (m < 0) == imaginary)
            .map(|((c, &m), &s)| (if s < 0 { -c } else { c.clone() }, m.unsigned_abs()))
            .collect()
    }
}

/// Enclose every embedding of `x` in the canonical grid cell of width
/// `2^(E - precision_bits)`, where `2^E ≤ |value| < 2^(E+1)`.
///
/// Cells at precision `p + 1` subdivide cells at precision `p`, so repeated
/// calls with growing precision return nested intervals.
pub fn refine_embedding(x: &RadicalForm, embeddings: &[Vec<i8>], precision_bits: u32) -> EmbeddingVector {
    let values = embeddings
        .iter()
        .map(|signs| Enclosure {
            re: enclose_component(&x.component_terms(signs, false), precision_bits),
            im: enclose_component(&x.component_terms(signs, true), precision_bits),
        })
        .collect();
    EmbeddingVector { precision_bits, values }
}

fn floor_log2_rational(q: &BigRational) -> i64 {
    let n = q.numer().abs();
    let d = q.denom();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // adjust so that 2^e ≤ n/d < 2^(e+1)
    let pow = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u32)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u32)
        }
    };
    let v = BigRational::new(n, d.clone());
    while pow(e) > v {
        e -= 1;
    }
    while pow(e + 1) <= v {
        e += 1;
    }
    e
}

fn cell(index: BigInt, exp: i64) -> DyadicInterval {
    DyadicInterval {
        lo: Dyadic { mantissa: index.clone(), exponent: exp },
        hi: Dyadic { mantissa: index + 1, exponent: exp },
    }
}

fn enclose_component(terms: &[(BigRational, u64)], p: u32) -> DyadicInterval {
    if terms.is_empty() {
        return DyadicInterval::exact_zero();
    }
    let rational_only = terms.iter().all(|(_, m)| *m == 1);
    if rational_only {
        let q: BigRational = terms.iter().map(|(c, _)| c.clone()).sum();
        if q.is_zero() {
            return DyadicInterval::exact_zero();
        }
        let exp = floor_log2_rational(&q) - p as i64;
        let scaled = q / Dyadic { mantissa: BigInt::one(), exponent: exp }.to_rational();
        let idx = scaled.floor().to_integer();
        if BigRational::from_integer(idx.clone()) == scaled {
            let d = Dyadic { mantissa: idx, exponent: exp };
            return DyadicInterval { lo: d.clone(), hi: d };
        }
        return cell(idx, exp);
    }
    // Irrational value (distinct squarefree radicands are independent over Q):
    // refine until both endpoints fall in the same grid cell.
    let mut w = p + 64;
    loop {
        let mut acc = FixedInterval::zero(w);
        for (c, m) in terms {
            let coeff = FixedInterval::from_rational(c, w);
            let t = if *m == 1 { coeff } else { coeff.mul(&FixedInterval::sqrt_int(*m, w)) };
            acc = acc.add(&t);
        }
        if acc.is_positive() || acc.is_negative() {
            let e_of = |x: &BigInt| x.abs().bits() as i64 - 1 - w as i64;
            let (e_lo, e_hi) = (e_of(&acc.lo), e_of(&acc.hi));
            if e_lo == e_hi {
                let exp = e_lo - p as i64;
                // index = floor(x / 2^exp) with x = v·2^-w
                let shift = w as i64 + exp;
                let idx = |v: &BigInt| {
                    if shift >= 0 {
                        floor_shr(v, shift as u32)
                    } else {
                        v << (-shift) as u32
                    }
                };
                let (a, b) = (idx(&acc.lo), idx(&acc.hi));
                let b_on_edge = shift >= 0 && (&b << shift as u32) == acc.hi;
                if a == b || (b_on_edge && &a + 1 == b) {
                    return cell(a, exp);
                }
            }
        }
        w *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn dec(s: &str) -> BigRational {
        let (i, f) = s.split_once('.').unwrap();
        let den = BigInt::from(10).pow(f.len() as u32);
        BigRational::new(format!("{i}{f}").parse::<BigInt>().unwrap(), den)
    }

    fn sqrt2() -> RadicalForm {
        RadicalForm { coeffs: vec![q(0, 1), q(1, 1)], radicands: vec![1, 2] }
    }

    #[test]
    fn sqrt2_at_ten_bits() {
        let e = refine_embedding(&sqrt2(), &[vec![1, 1]], 10);
        let v = &e.values[0].re;
        assert!(dec("1.4130") <= v.lo.to_rational());
        assert!(v.hi.to_rational() <= dec("1.4151"));
        assert_eq!(e.values[0].im, DyadicInterval::exact_zero());
    }

    #[test]
    fn zero_is_exact() {
        let z = RadicalForm { coeffs: vec![q(0, 1), q(0, 1)], radicands: vec![1, 5] };
        for p in [1, 10, 200] {
            let e = refine_embedding(&z, &[vec![1, 1], vec![1, -1]], p);
            for v in &e.values {
                assert_eq!(v.re, DyadicInterval::exact_zero());
                assert_eq!(v.im, DyadicInterval::exact_zero());
            }
        }
    }

    #[test]
    fn golden_ratio_at_twenty_bits() {
        let phi = RadicalForm { coeffs: vec![q(1, 2), q(1, 2)], radicands: vec![1, 5] };
        let e = refine_embedding(&phi, &[vec![1, 1], vec![1, -1]], 20);
        assert!(e.values[0].re.contains(&dec("1.6180339")));
        assert!(e.values[0].re.contains(&dec("1.61803398874989")));
        assert!(e.values[1].re.contains(&dec("-0.61803398874989")));
    }

    #[test]
    fn imaginary_radicals_land_in_the_imaginary_part() {
        let x = RadicalForm { coeffs: vec![q(3, 1), q(1, 1)], radicands: vec![1, -2] };
        let e = refine_embedding(&x, &[vec![1, 1], vec![1, -1]], 30);
        assert!(e.values[0].re.contains(&q(3, 1)));
        assert!(e.values[0].im.contains(&dec("1.414213562373")));
        assert!(e.values[1].im.contains(&dec("-1.414213562373")));
    }

    #[test]
    fn nested_and_halving_on_fixed_set() {
        let forms = [
            sqrt2(),
            RadicalForm { coeffs: vec![q(1, 2), q(1, 2)], radicands: vec![1, 5] },
            RadicalForm { coeffs: vec![q(-7, 3), q(5, 4), q(1, 9)], radicands: vec![1, 3, 7] },
            RadicalForm { coeffs: vec![q(1, 1), q(-1, 1)], radicands: vec![1, 2] },
        ];
        let embs = vec![vec![1, 1, 1], vec![1, -1, -1], vec![1, 1, -1], vec![1, -1, 1]];
        for f in &forms {
            let signs: Vec<Vec<i8>> = embs.iter().map(|s| s[..f.coeffs.len()].to_vec()).collect();
            let mut prev: Option<EmbeddingVector> = None;
            for p in [8, 16, 32, 64, 128] {
                let cur = refine_embedding(f, &signs, p);
                let reference = refine_embedding(f, &signs, 400);
                for (a, r) in cur.values.iter().zip(&reference.values) {
                    assert!(r.re.is_subset_of(&a.re));
                }
                if let Some(pr) = &prev {
                    for (a, b) in cur.values.iter().zip(&pr.values) {
                        assert!(a.re.is_subset_of(&b.re), "not nested at {p}");
                        assert!(a.re.width() * BigRational::from_integer(2.into()) <= b.re.width());
                    }
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn fixed_interval_sqrt_and_mul_are_outward() {
        let s = 80;
        let two = FixedInterval::sqrt_int(2, s);
        let sq = two.mul(&two);
        let (lo, hi) = sq.integers();
        assert!(lo <= BigInt::from(2) && BigInt::from(2) <= hi);
        assert!(sq.lo <= BigInt::from(2) << s && BigInt::from(2) << s <= sq.hi);
        let z = ComplexInterval { re: FixedInterval::from_int(&(-4).into(), s), im: FixedInterval::zero(s) };
        let r = z.sqrt();
        assert!(r.im.lo <= BigInt::from(2) << s && BigInt::from(2) << s <= r.im.hi);
    }
}
