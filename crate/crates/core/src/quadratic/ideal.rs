//! Integral ideals of a quadratic order as 2×2 Hermite-form lattices
//! `Z·a + Z·(b + c·ω)` over the basis `(1, ω)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{QuadElement, QuadraticField};
use crate::error::{invalid, Result};
use crate::exact::{content, hnf_lower, hnf_solve};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    pub d: i64,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    trace: i64,
    norm_omega: i64,
}

impl QuadIdeal {
    pub fn unit(k: &QuadraticField) -> Self {
        Self::principal_int(k, &BigInt::one())
    }

    pub fn principal_int(k: &QuadraticField, n: &BigInt) -> Self {
        let (trace, norm_omega) = k.omega_trace_norm();
        Self { d: k.d, a: n.clone(), b: BigInt::zero(), c: n.clone(), trace, norm_omega }
    }

    /// Ideal generated by elements given in `(1, ω)` coordinates.
    pub fn from_generators(k: &QuadraticField, gens: &[(BigInt, BigInt)]) -> Result<Self> {
        let (trace, norm_omega) = k.omega_trace_norm();
        let proto = Self { d: k.d, a: BigInt::one(), b: BigInt::zero(), c: BigInt::one(), trace, norm_omega };
        let mut rows = Vec::new();
        for (u, v) in gens {
            let (x, y) = proto.times_omega(u, v);
            rows.push(vec![u.clone(), v.clone()]);
            rows.push(vec![x, y]);
        }
        proto.with_rows(&rows)
    }

    /// Ideal with the given `Z`-basis; fails if the lattice is not an ideal.
    pub fn from_basis(k: &QuadraticField, rows: &[(BigInt, BigInt)]) -> Result<Self> {
        let (trace, norm_omega) = k.omega_trace_norm();
        let proto = Self { d: k.d, a: BigInt::one(), b: BigInt::zero(), c: BigInt::one(), trace, norm_omega };
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|(u, v)| vec![u.clone(), v.clone()]).collect();
        let lat = proto.with_rows(&rows)?;
        for (u, v) in lat.basis() {
            let (x, y) = lat.times_omega(&u, &v);
            if !lat.contains(&x, &y) {
                return invalid("lattice is not closed under multiplication by ω");
            }
        }
        Ok(lat)
    }

    fn with_rows(&self, rows: &[Vec<BigInt>]) -> Result<Self> {
        let h = hnf_lower(rows, 2)?;
        Ok(Self {
            d: self.d,
            a: h[0][0].clone(),
            b: h[1][0].clone(),
            c: h[1][1].clone(),
            trace: self.trace,
            norm_omega: self.norm_omega,
        })
    }

    fn times_omega(&self, u: &BigInt, v: &BigInt) -> (BigInt, BigInt) {
        (-v * self.norm_omega, u + v * self.trace)
    }

    fn product(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let vv = &x.1 * &y.1;
        (&x.0 * &y.0 - &vv * self.norm_omega, &x.0 * &y.1 + &x.1 * &y.0 + vv * self.trace)
    }

    pub fn basis(&self) -> [(BigInt, BigInt); 2] {
        [(self.a.clone(), BigInt::zero()), (self.b.clone(), self.c.clone())]
    }

    pub fn basis_elements(&self) -> [QuadElement; 2] {
        let [(u0, v0), (u1, v1)] = self.basis();
        [QuadElement::from_omega_coords(self.d, &u0, &v0), QuadElement::from_omega_coords(self.d, &u1, &v1)]
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn contains(&self, u: &BigInt, v: &BigInt) -> bool {
        let h = vec![vec![self.a.clone(), BigInt::zero()], vec![self.b.clone(), self.c.clone()]];
        hnf_solve(&h, &[u.clone(), v.clone()]).is_some()
    }

    pub fn contains_element(&self, e: &QuadElement) -> bool {
        let (u, v) = e.omega_coords();
        self.contains(&u, &v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut rows = Vec::with_capacity(4);
        for x in self.basis() {
            for y in o.basis() {
                let (u, v) = self.product(&x, &y);
                rows.push(vec![u, v]);
            }
        }
        self.with_rows(&rows).expect("product of nonzero ideals has full rank")
    }

    pub fn conj(&self) -> Self {
        let rows: Vec<Vec<BigInt>> =
            self.basis().iter().map(|(u, v)| vec![u + v * self.trace, -v]).collect();
        self.with_rows(&rows).expect("conjugate of a full-rank lattice has full rank")
    }

    /// Largest rational integer `g` with the ideal contained in `g·O_k`.
    pub fn content(&self) -> BigInt {
        content(&[vec![self.a.clone(), self.b.clone(), self.c.clone()]])
    }

    /// The ideal divided by its content, and the content.
    pub fn primitive_part(&self) -> (Self, BigInt) {
        let g = self.content();
        if g.is_one() {
            return (self.clone(), g);
        }
        let mut p = self.clone();
        p.a = p.a.div_floor(&g);
        p.b = p.b.div_floor(&g);
        p.c = p.c.div_floor(&g);
        (p, g)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }
}
