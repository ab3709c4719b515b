use std::collections::BTreeMap;

use crate::error::{inconsistent, Result};
use crate::exact::kronecker;
use crate::quadratic::QuadraticField;

/// Ramification, inertia and splitting of one prime in `K/Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeDecomposition {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub ramified: BTreeMap<u64, PrimeDecomposition>,
    pub s_k: u32,
    pub i2: u32,
    /// `e₂(K/Q)`, 1 when 2 is unramified.
    pub e2: u32,
    pub product_e: u64,
}

impl RamificationProfile {
    /// A prime ramifies in `K` iff it divides some subfield discriminant; it
    /// then ramifies in exactly two subfields, or in all three for `p = 2`
    /// with `e = 4`. Otherwise the residue degree is read off the subfield
    /// in which it stays unramified.
    pub fn new(subfields: &[QuadraticField; 3]) -> Result<Self> {
        let mut primes: Vec<u64> = subfields.iter().flat_map(|k| k.ramified_primes.iter().copied()).collect();
        primes.sort_unstable();
        primes.dedup();
        let mut ramified = BTreeMap::new();
        for p in primes {
            let hits: Vec<usize> = (0..3).filter(|&i| subfields[i].ramified_primes.contains(&p)).collect();
            let dec = match hits.len() {
                3 if p == 2 => PrimeDecomposition { e: 4, f: 1, g: 1 },
                2 => {
                    let free = (0..3).find(|i| !hits.contains(i)).unwrap();
                    let split = kronecker(subfields[free].disc, p as i64)?;
                    if split == 1 {
                        PrimeDecomposition { e: 2, f: 1, g: 2 }
                    } else {
                        PrimeDecomposition { e: 2, f: 2, g: 1 }
                    }
                }
                n => return inconsistent(format!("prime {p} ramifies in {n} quadratic subfields")),
            };
            ramified.insert(p, dec);
        }
        let s_k = ramified.len() as u32;
        let e2 = ramified.get(&2).map_or(1, |d| d.e);
        let i2 = u32::from(e2 == 4);
        let product_e = ramified.values().map(|d| d.e as u64).product();
        let profile = Self { ramified, s_k, i2, e2, product_e };
        profile.check(subfields)?;
        Ok(profile)
    }

    fn check(&self, subfields: &[QuadraticField; 3]) -> Result<()> {
        let s_sum: u32 = subfields.iter().map(|k| k.s).sum();
        if s_sum != 2 * self.s_k + self.i2 {
            return inconsistent(format!("s1+s2+s3 = {s_sum} but 2·s_K + i2 = {}", 2 * self.s_k + self.i2));
        }
        if self.product_e != 1 << (self.s_k + self.i2) {
            return inconsistent("product of ramification indices is not 2^(s_K + i2)");
        }
        if self.ramified.values().any(|d| d.e * d.f * d.g != 4) {
            return inconsistent("e·f·g ≠ 4");
        }
        Ok(())
    }
}
