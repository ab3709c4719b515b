//! Biquadratic fields `K = Q(√d₁, √d₂)`: integral basis, ramification,
//! unit index and the closed formulas for the Pólya group and its
//! decomposition through the three quadratic subfields.

mod element;
mod formulas;
mod profile;
mod units;

pub use element::{BiquadElement, Radicals, EMBEDDING_SIGNS, GALOIS_SIGNS};
pub use formulas::{chain_indices, coker_order, ker_order, polya_order, polya_report, ChainIndices, PolyaReport};
pub use profile::{PrimeDecomposition, RamificationProfile};
pub use units::{is_square_in_k, StarCase, UnitStructure};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{inconsistent, invalid, Result};
use crate::exact::{hnf_det, hnf_lower, hnf_solve, perfect_square, prime_divisors, squarefree_part};
use crate::oracle::{pi2_ideal, principality_k, OracleConfig};
use crate::quadratic::QuadraticField;

/// Sorted triple `(d₁, d₂, d₃)` of squarefree integers determining `K`.
pub fn canonical_triple(d1_raw: i64, d2_raw: i64) -> Result<[i64; 3]> {
    if d1_raw == 0 || d2_raw == 0 {
        return invalid("radicands must be nonzero");
    }
    let a = squarefree_part(d1_raw)?;
    let b = squarefree_part(d2_raw)?;
    if a == 1 || b == 1 {
        return invalid(format!("({d1_raw}, {d2_raw}) includes a perfect square"));
    }
    if a == b {
        return invalid(format!("({d1_raw}, {d2_raw}) generate the same quadratic field"));
    }
    let prod = a.checked_mul(b).ok_or_else(|| crate::Error::InvalidInput("radicands too large".into()))?;
    let mut t = [a, b, squarefree_part(prod)?];
    t.sort_unstable();
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct BiquadField {
    pub d: [i64; 3],
    pub subfields: [QuadraticField; 3],
    pub radicals: Radicals,
    /// Integral basis `ω₀ = 1, ω₁, ω₂, ω₃`.
    pub integral_basis: [BiquadElement; 4],
    /// Rows `4·ωₖ` over the radical basis, lower triangular.
    pub basis_scaled: [[BigInt; 4]; 4],
    pub disc: i64,
    pub profile: RamificationProfile,
    pub units: UnitStructure,
    pub is_real: bool,
    mult: [[[i64; 4]; 4]; 4],
    galois: [[[i64; 4]; 4]; 3],
}

impl PartialEq for BiquadField {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl BiquadField {
    pub fn new(d1_raw: i64, d2_raw: i64) -> Result<Self> {
        let d = canonical_triple(d1_raw, d2_raw)?;
        let subfields = [QuadraticField::new(d[0])?, QuadraticField::new(d[1])?, QuadraticField::new(d[2])?];
        let radicals = Radicals::new(d);
        let is_real = d.iter().all(|&x| x > 0);
        let disc = subfields.iter().map(|k| k.disc).product::<i64>();
        let basis_scaled = integral_basis(&radicals, &subfields, disc)?;
        let integral_basis = std::array::from_fn(|k| BiquadElement::from_scaled(radicals, &basis_scaled[k]));
        let profile = RamificationProfile::new(&subfields)?;
        let units = UnitStructure::new(&radicals, &subfields, is_real)?;
        let mut field = Self {
            d,
            subfields,
            radicals,
            integral_basis,
            basis_scaled,
            disc,
            profile,
            units,
            is_real,
            mult: [[[0; 4]; 4]; 4],
            galois: [[[0; 4]; 4]; 3],
        };
        for a in 0..4 {
            for b in 0..4 {
                let prod = field.radicals.mul(&field.basis_scaled[a], &field.basis_scaled[b]);
                let scaled = prod.map(|x| x / 4);
                field.mult[a][b] = to_i64(&field.scaled_to_w(&scaled).expect("O_K is a ring"));
            }
        }
        for i in 0..3 {
            for a in 0..4 {
                let img = Radicals::apply_signs(&field.basis_scaled[a], &GALOIS_SIGNS[i]);
                field.galois[i][a] = to_i64(&field.scaled_to_w(&img).expect("O_K is Galois stable"));
            }
        }
        Ok(field)
    }

    /// Coordinates over the integral basis of the element `v/4`.
    pub fn scaled_to_w(&self, v: &[BigInt; 4]) -> Option<[BigInt; 4]> {
        let h: Vec<Vec<BigInt>> = self.basis_scaled.iter().map(|r| r.to_vec()).collect();
        hnf_solve(&h, v).map(|c| std::array::from_fn(|k| c[k].clone()))
    }

    pub fn w_to_scaled(&self, w: &[BigInt; 4]) -> [BigInt; 4] {
        std::array::from_fn(|m| (0..4).map(|k| &w[k] * &self.basis_scaled[k][m]).sum())
    }

    pub fn element_from_w(&self, w: &[BigInt; 4]) -> BiquadElement {
        BiquadElement::from_scaled(self.radicals, &self.w_to_scaled(w))
    }

    pub fn element_to_w(&self, e: &BiquadElement) -> Option<[BigInt; 4]> {
        self.scaled_to_w(&e.to_scaled()?)
    }

    /// Product in integral-basis coordinates.
    pub fn w_mul(&self, a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
        let mut out: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mult[i][j][k];
                    if c != 0 {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// `σᵢ` in integral-basis coordinates, `i ∈ {1, 2, 3}`.
    pub fn w_conj(&self, i: usize, a: &[BigInt; 4]) -> [BigInt; 4] {
        std::array::from_fn(|k| (0..4).map(|m| &a[m] * self.galois[i - 1][m][k]).sum())
    }

    /// Index of the real subfield of an imaginary `K`.
    pub fn real_subfield(&self) -> Option<usize> {
        if self.is_real {
            None
        } else {
            (0..3).find(|&i| self.d[i] > 0)
        }
    }

    pub fn has_sqrt_minus1(&self) -> bool {
        self.units.has_sqrt_minus1
    }

    /// `j₂`: 1 iff 2 is totally ramified and the prime above it is
    /// nonprincipal. Decided by the principality oracle.
    pub fn j2(&self, cfg: &OracleConfig) -> Result<u32> {
        if self.profile.i2 == 0 {
            return Ok(0);
        }
        let pi2 = pi2_ideal(self)?;
        Ok(u32::from(principality_k(self, &pi2, cfg)?.is_none()))
    }
}

fn to_i64(v: &[BigInt; 4]) -> [i64; 4] {
    v.clone().map(|x| x.to_i64().expect("structure constants fit in i64"))
}

fn omega_scaled(d: i64, k: usize) -> [BigInt; 4] {
    let mut v: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
    if d.rem_euclid(4) == 1 {
        v[0] = BigInt::from(2);
        v[k + 1] = BigInt::from(2);
    } else {
        v[k + 1] = BigInt::from(4);
    }
    v
}

/// Start from `Z[ω₁, ω₂, ω₃]` and adjoin elements `(Σ cᵢ bᵢ)/p` that pass the
/// integrality test until the discriminant reaches `Δ₁Δ₂Δ₃`.
fn integral_basis(rad: &Radicals, subfields: &[QuadraticField; 3], target: i64) -> Result<[[BigInt; 4]; 4]> {
    let omegas: Vec<[BigInt; 4]> = (0..3).map(|k| omega_scaled(subfields[k].d, k)).collect();
    let smul = |a: &[BigInt; 4], b: &[BigInt; 4]| rad.mul(a, b).map(|x| x / 4);
    let mut one: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
    one[0] = BigInt::from(4);
    let mut gens = vec![one, omegas[0].clone(), omegas[1].clone(), omegas[2].clone()];
    gens.push(smul(&omegas[0], &omegas[1]));
    gens.push(smul(&omegas[0], &omegas[2]));
    gens.push(smul(&omegas[1], &omegas[2]));
    gens.push(smul(&gens[4], &omegas[2]));
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.to_vec()).collect();
    let d_prod = BigInt::from(rad.d[0]) * rad.d[1] * rad.d[2];
    let target = BigInt::from(target);
    loop {
        let h = hnf_lower(&rows, 4)?;
        let det = hnf_det(&h);
        let num = &det * &det * &d_prod;
        let den = &target * 256;
        let (idx2, r) = num.div_rem(&den);
        if !r.is_zero() {
            return inconsistent("order discriminant is not a multiple of the field discriminant");
        }
        let Some(index) = perfect_square(&idx2) else {
            return inconsistent("order index is not an integer");
        };
        if index.is_one() {
            if h[0][0] != BigInt::from(4) {
                return inconsistent("integral basis does not start with 1");
            }
            return Ok(std::array::from_fn(|k| std::array::from_fn(|m| h[k][m].clone())));
        }
        let index = index.to_u64().expect("small index");
        let mut found = None;
        'primes: for p in prime_divisors(index) {
            let p_big = BigInt::from(p);
            let total = p.pow(4);
            for code in 1..total {
                let mut c = code;
                let mut v: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
                for row in &h {
                    let ci = c % p;
                    c /= p;
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += y * ci;
                    }
                }
                if v.iter().all(|x| x.is_multiple_of(&p_big)) {
                    let w = v.map(|x| x / &p_big);
                    if rad.scaled_is_integral(&w) {
                        found = Some(w);
                        break 'primes;
                    }
                }
            }
        }
        match found {
            Some(w) => {
                rows = h.clone();
                rows.push(w.to_vec());
            }
            None => return inconsistent("no integral element found to enlarge the order"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_examples() {
        let k = BiquadField::new(-1, 2).unwrap();
        assert_eq!(k.d, [-2, -1, 2]);
        assert_eq!(k.disc, 256);
        let k = BiquadField::new(2, 3).unwrap();
        assert_eq!(k.d, [2, 3, 6]);
        assert_eq!((k.profile.s_k, k.profile.i2), (2, 1));
        let k = BiquadField::new(-1, -3).unwrap();
        assert_eq!(k.d, [-3, -1, 3]);
        assert_eq!((k.profile.s_k, k.profile.i2, k.units.mu_order), (2, 0, 12));
        assert!(BiquadField::new(2, 2).is_err());
        assert!(BiquadField::new(2, 8).is_err());
        assert!(BiquadField::new(4, 3).is_err());
    }

    #[test]
    fn argument_order_is_irrelevant() {
        assert_eq!(BiquadField::new(2, 3).unwrap().d, BiquadField::new(3, 6).unwrap().d);
        assert_eq!(BiquadField::new(-5, 3).unwrap().d, BiquadField::new(-15, -5).unwrap().d);
    }

    #[test]
    fn odd_index_orders_are_saturated() {
        for (a, b) in [(3, 5), (3, 7), (-3, 5), (-3, -7), (5, 13), (-1, 5), (7, 11)] {
            let k = BiquadField::new(a, b).unwrap();
            for e in &k.integral_basis {
                assert!(e.is_integral());
            }
        }
    }

    #[test]
    fn multiplication_table_matches_exact_products() {
        let k = BiquadField::new(-7, 5).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let mut ea: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
                let mut eb = ea.clone();
                ea[a] = BigInt::one();
                eb[b] = BigInt::one();
                let w = k.w_mul(&ea, &eb);
                assert_eq!(k.element_from_w(&w), k.integral_basis[a].mul(&k.integral_basis[b]));
            }
            for i in 1..=3 {
                let mut ea: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
                ea[a] = BigInt::one();
                assert_eq!(k.element_from_w(&k.w_conj(i, &ea)), k.integral_basis[a].conj(i));
            }
        }
    }
}
