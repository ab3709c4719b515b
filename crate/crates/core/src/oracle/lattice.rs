//! Integral ideals of `O_K` as rank-4 lattices in Hermite normal form over
//! the integral basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::biquad::{BiquadElement, BiquadField};
use crate::error::{inconsistent, invalid, Error, Result};
use crate::exact::{content, hnf_det, hnf_lower, hnf_solve};
use crate::quadratic::QuadIdeal;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealLattice {
    pub field_d: [i64; 3],
    pub basis: [[BigInt; 4]; 4],
    pub norm: BigInt,
}

fn unit_vector(k: usize) -> [BigInt; 4] {
    std::array::from_fn(|i| if i == k { BigInt::one() } else { BigInt::zero() })
}

impl IdealLattice {
    fn from_rows(field: &BiquadField, rows: &[Vec<BigInt>]) -> Result<Self> {
        let h = hnf_lower(rows, 4)?;
        let norm = hnf_det(&h);
        Ok(Self { field_d: field.d, basis: std::array::from_fn(|k| std::array::from_fn(|m| h[k][m].clone())), norm })
    }

    /// The ideal generated by elements given in integral-basis coordinates.
    pub fn from_generators(field: &BiquadField, gens: &[[BigInt; 4]]) -> Result<Self> {
        let mut rows = Vec::with_capacity(4 * gens.len());
        for g in gens {
            for k in 0..4 {
                rows.push(field.w_mul(g, &unit_vector(k)).to_vec());
            }
        }
        Self::from_rows(field, &rows)
    }

    pub fn from_elements(field: &BiquadField, gens: &[BiquadElement]) -> Result<Self> {
        let w: Vec<[BigInt; 4]> = gens
            .iter()
            .map(|g| field.element_to_w(g).ok_or_else(|| Error::InvalidInput(format!("{g} is not in O_K"))))
            .collect::<Result<_>>()?;
        Self::from_generators(field, &w)
    }

    /// Lattice with the given `Z`-basis; fails unless it is an ideal.
    pub fn from_basis(field: &BiquadField, rows: &[[BigInt; 4]]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
        let lat = Self::from_rows(field, &rows)?;
        if !lat.is_ideal(field) {
            return invalid("lattice is not closed under multiplication by O_K");
        }
        Ok(lat)
    }

    pub fn unit(field: &BiquadField) -> Self {
        Self::principal_int(field, &BigInt::one())
    }

    pub fn principal_int(field: &BiquadField, n: &BigInt) -> Self {
        let basis = std::array::from_fn(|k| std::array::from_fn(|m| if k == m { n.clone() } else { BigInt::zero() }));
        Self { field_d: field.d, basis, norm: n.pow(4) }
    }

    pub fn contains(&self, w: &[BigInt; 4]) -> bool {
        let h: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.to_vec()).collect();
        hnf_solve(&h, w).is_some()
    }

    pub fn contains_element(&self, field: &BiquadField, e: &BiquadElement) -> bool {
        field.element_to_w(e).is_some_and(|w| self.contains(&w))
    }

    pub fn is_ideal(&self, field: &BiquadField) -> bool {
        self.basis.iter().all(|b| (0..4).all(|k| self.contains(&field.w_mul(b, &unit_vector(k)))))
    }

    /// `σᵢ(self)`, `i ∈ {1, 2, 3}`.
    pub fn conj(&self, field: &BiquadField, i: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = self.basis.iter().map(|b| field.w_conj(i, b).to_vec()).collect();
        Self::from_rows(field, &rows).expect("conjugation preserves rank")
    }

    pub fn is_galois_stable(&self, field: &BiquadField) -> bool {
        (1..=3).all(|i| self.conj(field, i) == *self)
    }

    /// Largest rational integer `g` with `self ⊆ g·O_K`.
    pub fn content(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.to_vec()).collect();
        content(&rows)
    }

    /// `self / g` and `g` for `g` the content.
    pub fn primitive_part(&self) -> (Self, BigInt) {
        let g = self.content();
        if g.is_one() {
            return (self.clone(), g);
        }
        let basis = self.basis.clone().map(|r| r.map(|x| x / &g));
        let norm = &self.norm / g.pow(4);
        (Self { field_d: self.field_d, basis, norm }, g)
    }

    pub fn basis_elements(&self, field: &BiquadField) -> Vec<BiquadElement> {
        self.basis.iter().map(|b| field.element_from_w(b)).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm.is_one()
    }
}

pub fn ideal_mul(field: &BiquadField, a: &IdealLattice, b: &IdealLattice) -> Result<IdealLattice> {
    if a.field_d != field.d || b.field_d != field.d {
        return invalid("ideals belong to different fields");
    }
    let n = &a.norm * &b.norm;
    let mut rows = Vec::with_capacity(20);
    for x in &a.basis {
        for y in &b.basis {
            rows.push(field.w_mul(x, y).to_vec());
        }
    }
    // N(ab)·O_K ⊆ ab keeps intermediate entries small
    for k in 0..4 {
        rows.push(unit_vector(k).map(|x| x * &n).to_vec());
    }
    IdealLattice::from_rows(field, &rows)
}

pub fn ideal_pow(field: &BiquadField, a: &IdealLattice, e: u32) -> Result<IdealLattice> {
    let mut out = IdealLattice::unit(field);
    for _ in 0..e {
        out = ideal_mul(field, &out, a)?;
    }
    Ok(out)
}

/// Ideal of `O_K` generated by an ideal of the subfield `Q(√dᵢ)`.
pub fn extend_quad_ideal(field: &BiquadField, i: usize, a: &QuadIdeal) -> Result<IdealLattice> {
    if a.d != field.d[i] {
        return invalid(format!("ideal of Q(√{}) is not an ideal of subfield {i}", a.d));
    }
    let gens: Vec<BiquadElement> =
        a.basis_elements().iter().map(|e| BiquadElement::from_quad(field.radicals, i, e)).collect();
    IdealLattice::from_elements(field, &gens)
}

/// Null space of the `n × n` matrix `a` acting on row vectors, modulo `p`.
fn left_kernel_mod_p(a: &[[u64; 4]; 4], p: u64) -> Vec<[u64; 4]> {
    // augment [A | I] and row reduce the A part; rows whose A part vanishes
    // carry kernel vectors in the identity part
    let mut m: Vec<[u64; 8]> = (0..4)
        .map(|i| std::array::from_fn(|c| if c < 4 { a[i][c] % p } else { u64::from(c - 4 == i) }))
        .collect();
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut r = 0;
    for c in 0..4 {
        let Some(piv) = (r..4).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..4 {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for col in 0..8 {
                    m[i][col] = (m[i][col] + p * p - f * m[r][col] % p) % p;
                }
            }
        }
        r += 1;
    }
    m[r..].iter().map(|row| std::array::from_fn(|k| row[4 + k])).collect()
}

/// `rad(p·O_K)`: the kernel of `x ↦ x^(p^k)` on `O_K/p` (with `p^k ≥ 4`,
/// so every nilpotent is killed), lifted and combined with `p·O_K`.
pub fn radical_mod_p(field: &BiquadField, p: u64) -> Result<IdealLattice> {
    let Some(dec) = field.profile.ramified.get(&p).copied() else {
        return Err(Error::Domain(format!("{p} is unramified in K")));
    };
    let pb = BigInt::from(p);
    let mut q = p;
    while q < 4 {
        q *= p;
    }
    let mut frob = [[0u64; 4]; 4];
    for (a, row) in frob.iter_mut().enumerate() {
        let x = unit_vector(a);
        let mut acc = unit_vector(0);
        for _ in 0..q {
            acc = field.w_mul(&acc, &x).map(|c| c.mod_floor(&pb));
        }
        *row = acc.map(|c| c.to_u64().unwrap());
    }
    let mut rows: Vec<Vec<BigInt>> =
        left_kernel_mod_p(&frob, p).iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    rows.extend((0..4).map(|k| unit_vector(k).map(|x| x * &pb).to_vec()));
    let rad = IdealLattice::from_rows(field, &rows)?;
    if rad.norm != pb.pow(4 / dec.e) {
        return inconsistent(format!("rad({p}O_K) has norm {} instead of {p}^{}", rad.norm, 4 / dec.e));
    }
    if ideal_pow(field, &rad, dec.e)? != IdealLattice::principal_int(field, &pb) {
        return inconsistent(format!("rad({p}O_K)^{} ≠ {p}O_K", dec.e));
    }
    Ok(rad)
}

/// The prime above 2 when 2 is totally ramified.
pub fn pi2_ideal(field: &BiquadField) -> Result<IdealLattice> {
    if field.profile.i2 != 1 {
        return Err(Error::Domain("2 is not totally ramified in K".into()));
    }
    radical_mod_p(field, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_ideal_is_identity() {
        let k = BiquadField::new(-5, 3).unwrap();
        let r = radical_mod_p(&k, 3).unwrap();
        assert_eq!(ideal_mul(&k, &r, &IdealLattice::unit(&k)).unwrap(), r);
    }

    #[test]
    fn pi2_in_zeta8() {
        let k = BiquadField::new(-1, 2).unwrap();
        let p = pi2_ideal(&k).unwrap();
        assert_eq!(p.norm, BigInt::from(2));
        let z = BiquadElement::new(k.radicals, [q(1, 1), q(1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(z.norm(), q(2, 1));
        assert!(p.contains_element(&k, &z));
        assert_eq!(ideal_pow(&k, &p, 4).unwrap(), IdealLattice::principal_int(&k, &BigInt::from(2)));
    }

    #[test]
    fn radical_of_three_in_zeta12() {
        let k = BiquadField::new(-1, -3).unwrap();
        let r = radical_mod_p(&k, 3).unwrap();
        assert_eq!(r.norm, BigInt::from(9));
        assert_eq!(ideal_mul(&k, &r, &r).unwrap(), IdealLattice::principal_int(&k, &BigInt::from(3)));
        assert!(r.is_galois_stable(&k));
    }

    #[test]
    fn pi2_squared_is_extended_subfield_prime() {
        let k = BiquadField::new(2, 3).unwrap();
        let p = pi2_ideal(&k).unwrap();
        let p2 = ideal_mul(&k, &p, &p).unwrap();
        for (i, sub) in k.subfields.iter().enumerate() {
            let prime = crate::quadratic::ramified_prime_ideal(sub, 2).unwrap();
            assert_eq!(extend_quad_ideal(&k, i, &prime).unwrap(), p2, "subfield {}", sub.d);
        }
    }

    #[test]
    fn unramified_primes_are_rejected() {
        let k = BiquadField::new(2, 3).unwrap();
        assert!(radical_mod_p(&k, 5).is_err());
        assert!(pi2_ideal(&BiquadField::new(-1, -3).unwrap()).is_err());
    }
}
