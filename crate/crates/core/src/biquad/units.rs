//! Unit index `q_K` and the indices of the totally-signed unit subgroups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::{BiquadElement, Radicals, EMBEDDING_SIGNS};
use super::BiquadField;
use crate::error::{inconsistent, invalid, Error, Result};
use crate::exact::{ComplexInterval, FixedInterval};
use crate::quadratic::QuadraticField;

/// Shape of `O*_K` relative to `O*₁·O*₂·O*₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarCase {
    /// `K` real and every subfield unit has norm -1: `O*_K ≅ O*₁O*₂O*₃ × Z/2`.
    RealAllMinus,
    /// `O*_K = O*₁O*₂O*₃`.
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitStructure {
    pub mu_order: u32,
    pub has_sqrt_minus1: bool,
    /// `(O_K^× : O₁^×O₂^×O₃^×)`.
    pub q_k: u32,
    /// Norms of the subfield fundamental units, `None` for imaginary subfields.
    pub lambda: [Option<i8>; 3],
    pub nu_k: u32,
    pub star_case: StarCase,
    /// `(O_K^× : O*_K)`.
    pub index_units_over_star: u32,
    /// `(O*_K : ±(O_K^×)²)`.
    pub index_star_over_pm_squares: u32,
    /// Products of subfield units that become squares in `K`, with a square
    /// root of each; one entry per nontrivial class.
    pub square_classes: Vec<(BiquadElement, BiquadElement)>,
}

fn roots_of_unity(d: &[i64; 3]) -> u32 {
    let has = |x: i64| d.contains(&x);
    if has(-1) && has(2) && has(-2) {
        8
    } else if has(-1) && has(3) && has(-3) {
        12
    } else if has(-1) {
        4
    } else if has(-3) {
        6
    } else {
        2
    }
}

impl UnitStructure {
    pub fn new(rad: &Radicals, subfields: &[QuadraticField; 3], is_real: bool) -> Result<Self> {
        let d = rad.d;
        let mu_order = roots_of_unity(&d);
        let has_sqrt_minus1 = d.contains(&-1);
        // generators of O₁^×O₂^×O₃^× modulo squares: a torsion class and the
        // fundamental units of the real subfields
        let mut gens = Vec::new();
        let torsion = match d.iter().position(|&x| x == -1) {
            Some(i) => {
                let mut c: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
                c[i + 1] = BigRational::one();
                BiquadElement::new(*rad, c)
            }
            None => BiquadElement::from_int(*rad, -1),
        };
        gens.push(torsion);
        for (i, k) in subfields.iter().enumerate() {
            if let Some(e) = &k.fundamental_unit {
                gens.push(BiquadElement::from_quad(*rad, i, e));
            }
        }
        let mut squares = Vec::new();
        let mut square_masks = vec![0usize];
        for mask in 1usize..(1 << gens.len()) {
            let mut eta = BiquadElement::one(*rad);
            for (b, g) in gens.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    eta = eta.mul(g);
                }
            }
            if let Some(xi) = square_root(rad, is_real, &eta)? {
                squares.push((eta, xi));
                square_masks.push(mask);
            }
        }
        for &a in &square_masks {
            for &b in &square_masks {
                if !square_masks.contains(&(a ^ b)) {
                    return inconsistent("square classes of subfield units are not a subgroup");
                }
            }
        }
        let q_k = square_masks.len() as u32;
        let cap = if is_real { 4 } else { 2 };
        if cap % q_k != 0 {
            return inconsistent(format!("unit index {q_k} does not divide {cap}"));
        }
        let lambda = std::array::from_fn(|i| subfields[i].lambda);
        let nu_k = subfields.iter().map(|k| k.nu as u32).sum();
        let all_minus = is_real && lambda.iter().all(|l| *l == Some(-1));
        let star_case = if all_minus { StarCase::RealAllMinus } else { StarCase::Product };
        let mut sub_over_star: u32 = subfields.iter().map(|k| k.star_index()).product();
        if all_minus {
            sub_over_star /= 2;
        }
        if is_real {
            let direct = totally_signed_index(&lambda);
            if direct != sub_over_star {
                return inconsistent(format!(
                    "sign count gives (E : O*) = {direct}, index formula gives {sub_over_star}"
                ));
            }
        }
        let index_units_over_star = q_k * sub_over_star;
        let pm_squares = if is_real {
            8
        } else if has_sqrt_minus1 {
            4
        } else {
            2
        };
        if pm_squares % index_units_over_star != 0 {
            return inconsistent(format!(
                "(O_K^× : O*_K) = {index_units_over_star} does not divide (O_K^× : ±(O_K^×)²) = {pm_squares}"
            ));
        }
        Ok(Self {
            mu_order,
            has_sqrt_minus1,
            q_k,
            lambda,
            nu_k,
            star_case,
            index_units_over_star,
            index_star_over_pm_squares: pm_squares / index_units_over_star,
            square_classes: squares,
        })
    }
}

/// `(E : E ∩ O*_K)` for real `K`, reading `O*_K` as the units that are
/// totally positive or totally negative: `8 / #{m ∈ {0,1}³ : ε^m totally signed}`.
fn totally_signed_index(lambda: &[Option<i8>; 3]) -> u32 {
    let mut signed = 0;
    for m in 0..8usize {
        let signs: Vec<i8> = EMBEDDING_SIGNS
            .iter()
            .map(|s| {
                (0..3)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| if s[i + 1] > 0 { 1 } else { lambda[i].unwrap_or(1) })
                    .product()
            })
            .collect();
        if signs.iter().all(|&x| x == signs[0]) {
            signed += 1;
        }
    }
    8 / signed
}

/// A square root of the unit `eta` in `O_K`, or `None` if none exists.
pub fn is_square_in_k(k: &BiquadField, eta: &BiquadElement) -> Result<Option<BiquadElement>> {
    square_root(&k.radicals, k.is_real, eta)
}

const START_BITS: u32 = 128;
const MAX_BITS: u32 = 1 << 16;

/// Square roots are recovered from interval enclosures of `√σⱼ(η)` at every
/// embedding: for each admissible choice of signs the coordinates `4cₖ` of a
/// candidate root are enclosed, and once every enclosure is narrower than one
/// the unique integer in it is tested by exact squaring.
pub(crate) fn square_root(rad: &Radicals, is_real: bool, eta: &BiquadElement) -> Result<Option<BiquadElement>> {
    if !eta.norm().abs().is_one() {
        return invalid("squareness is only decided for units");
    }
    if !eta.is_integral() {
        return invalid("argument is not an algebraic integer");
    }
    let form = eta.radical_form();
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let values: Vec<ComplexInterval> = EMBEDDING_SIGNS.iter().map(|s| form.enclose(s, bits)).collect();
        let patterns: Vec<[ComplexInterval; 4]> = if is_real {
            let mut roots = Vec::with_capacity(4);
            let mut undecided = false;
            for v in &values {
                if v.re.is_negative() {
                    return Ok(None);
                }
                if !v.re.is_positive() {
                    undecided = true;
                }
                roots.push(ComplexInterval::real(v.re.sqrt()));
            }
            if undecided {
                bits *= 2;
                continue;
            }
            (0..8)
                .map(|m: usize| {
                    std::array::from_fn(|j| if j > 0 && m >> (j - 1) & 1 == 1 { roots[j].neg() } else { roots[j].clone() })
                })
                .collect()
        } else {
            let c0 = rad.conjugate_embedding(0);
            let j1 = (1..4).find(|&j| j != c0).unwrap();
            let c1 = rad.conjugate_embedding(j1);
            let z0 = values[0].sqrt();
            let z1 = values[j1].sqrt();
            [z1.clone(), z1.neg()]
                .into_iter()
                .map(|w| {
                    let mut out: [ComplexInterval; 4] = std::array::from_fn(|_| z0.clone());
                    out[c0] = z0.conj();
                    out[j1] = w.clone();
                    out[c1] = w.conj();
                    out
                })
                .collect()
        };
        let mut undecided = false;
        for xi in &patterns {
            match candidate_from_embeddings(rad, xi, bits) {
                Candidate::Wide => undecided = true,
                Candidate::Empty => {}
                Candidate::Point(v) => {
                    let root = BiquadElement::from_scaled(*rad, &v);
                    if root.mul(&root) == *eta && root.is_integral() {
                        return Ok(Some(root));
                    }
                }
            }
        }
        if !undecided {
            return Ok(None);
        }
        bits *= 2;
    }
    Err(Error::Inconsistency(format!("squareness of {eta} undecided at {MAX_BITS} bits")))
}

enum Candidate {
    Wide,
    Empty,
    Point([BigInt; 4]),
}

/// Enclose `4cₖ = (Σⱼ sⱼₖ·σⱼ(ξ)) / √dₖ` and extract the integer point.
fn candidate_from_embeddings(rad: &Radicals, xi: &[ComplexInterval; 4], bits: u32) -> Candidate {
    let mut out: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
    for k in 0..4 {
        let mut acc = ComplexInterval::real(FixedInterval::zero(bits));
        for (j, x) in xi.iter().enumerate() {
            let term = if EMBEDDING_SIGNS[j][k] < 0 { x.neg() } else { x.clone() };
            acc = acc.add(&term);
        }
        let coord = if k == 0 {
            acc.re
        } else {
            let d = rad.d[k - 1];
            let part = if d > 0 { acc.re } else { acc.im };
            let m = BigInt::from(d.unsigned_abs());
            part.mul(&FixedInterval::sqrt_int(d.unsigned_abs(), bits)).div_int(&m)
        };
        if !coord.narrower_than_one() {
            return Candidate::Wide;
        }
        let (lo, hi) = coord.integers();
        if lo > hi {
            return Candidate::Empty;
        }
        out[k] = lo;
    }
    Candidate::Point(out)
}
