//! Property tests for the exact integer layer, each against an independent
//! reference computed inside the test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use polya_core::exact::{
    hnf_det, hnf_lower, hnf_solve, is_squarefree, kronecker, refine_embedding, squarefree_decompose, DyadicInterval,
    RadicalForm,
};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

fn odd_primes() -> Vec<u64> {
    (3..20_000).filter(|&n| is_prime(n)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by fraction-free rational elimination.
fn det_rational(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[i][k] -= t;
            }
        }
    }
    det.to_integer()
}

/// `lo ≤ a + b·√m` decided exactly, for `m > 0` not a square.
fn le_surd(lo: &BigRational, a: &BigRational, b: &BigRational, m: i64) -> bool {
    // lo - a ≤ b√m
    let lhs = lo - a;
    let rhs_sq = b * b * BigRational::from_integer(big(m));
    match (lhs.is_negative(), b.is_negative()) {
        (true, false) => true,
        (false, true) => lhs.is_zero() && b.is_zero(),
        (false, false) => &lhs * &lhs <= rhs_sq,
        (true, true) => &lhs * &lhs >= rhs_sq,
    }
}

fn ge_surd(hi: &BigRational, a: &BigRational, b: &BigRational, m: i64) -> bool {
    le_surd(&-hi, &-a, &-b, m)
}

fn surd_in(iv: &DyadicInterval, a: &BigRational, b: &BigRational, m: i64) -> bool {
    le_surd(&iv.lo.to_rational(), a, b, m) && ge_surd(&iv.hi.to_rational(), a, b, m)
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| BigRational::new(big(n), big(d)))
}

#[test]
fn squarefree_recomposition_near_the_i64_edge() {
    for n in [i64::MAX / 7, 1_000_000_007 * 9, -(1 << 40), 999_999_999_989] {
        let s = squarefree_decompose(n).unwrap();
        assert_eq!(s.squarefree_part as i128 * (s.square_part as i128).pow(2), n as i128);
        assert!(is_squarefree(s.squarefree_part));
    }
    assert!(squarefree_decompose(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn kronecker_reciprocity_on_odd_coprime_pairs(m in (0u64..50_000).prop_map(|x| 2 * x + 1), n in (0u64..50_000).prop_map(|x| 2 * x + 1)) {
        prop_assume!(m > 1 && n > 1 && gcd(m, n) == 1);
        let a = kronecker(m as i64, n as i64).unwrap() as i32;
        let b = kronecker(n as i64, m as i64).unwrap() as i32;
        let sign = if ((m - 1) / 2) % 2 == 1 && ((n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(a * b, sign);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn kronecker_agrees_with_euler_criterion(a in -100_000i64..100_000, idx in 0usize..2_000) {
        let p = odd_primes()[idx];
        let e = mod_pow(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
        let expect = match e { 0 => 0, 1 => 1, _ => -1 };
        prop_assert_eq!(kronecker(a, p as i64).unwrap() as i32, expect);
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_top(a in -2_000i64..2_000, b in -2_000i64..2_000, n in 1i64..5_000) {
        let lhs = kronecker(a * b, n).unwrap();
        let rhs = kronecker(a, n).unwrap() * kronecker(b, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_recomposition(n in prop_oneof![-1_000_000_000_000i64..-1, 1i64..1_000_000_000_000]) {
        let s = squarefree_decompose(n).unwrap();
        prop_assert_eq!(s.squarefree_part * (s.square_part as i64).pow(2), n);
        prop_assert!(is_squarefree(s.squarefree_part));
        prop_assert_eq!(s.squarefree_part.signum(), n.signum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hnf_is_canonical_and_spans_the_same_lattice(
        entries in proptest::collection::vec(-30i64..30, 16),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -5i64..5), 0..24),
    ) {
        let rows: Vec<Vec<BigInt>> = entries.chunks(4).map(|c| c.iter().map(|&x| big(x)).collect()).collect();
        let det = det_rational(&rows);
        prop_assume!(!det.is_zero());
        let mut moved = rows.clone();
        for (i, j, k) in ops {
            if i != j {
                let rj = moved[j].clone();
                for (x, y) in moved[i].iter_mut().zip(&rj) {
                    *x += big(k) * y;
                }
            } else {
                moved.swap(i, (i + 1) % 4);
                moved[i].iter_mut().for_each(|x| *x = -&*x);
            }
        }
        let h = hnf_lower(&rows, 4).unwrap();
        prop_assert_eq!(&h, &hnf_lower(&moved, 4).unwrap());
        prop_assert_eq!(hnf_det(&h), det.abs());
        for (i, r) in h.iter().enumerate() {
            prop_assert!(r[i].is_positive());
            prop_assert!(r[i + 1..].iter().all(|x| x.is_zero()));
            for later in &h[i + 1..] {
                prop_assert!(!later[i].is_negative() && later[i] < r[i]);
            }
        }
        for r in &rows {
            let c = hnf_solve(&h, r).unwrap();
            let back: Vec<BigInt> = (0..4).map(|m| (0..4).map(|k| &c[k] * &h[k][m]).sum()).collect();
            prop_assert_eq!(&back, r);
        }
    }

    #[test]
    fn refinement_contains_the_value_and_halves(a in ratio(), b in ratio(), m in prop_oneof![2i64..200, -200i64..-1]) {
        prop_assume!(polya_core::exact::perfect_square(&big(m.abs())).is_none() && !b.is_zero());
        let form = RadicalForm { coeffs: vec![a.clone(), b.clone()], radicands: vec![1, m] };
        let embeddings = vec![vec![1, 1], vec![1, -1]];
        let mut prev: Option<polya_core::exact::EmbeddingVector> = None;
        for p in [4u32, 8, 16, 32, 64, 128] {
            let e = refine_embedding(&form, &embeddings, p);
            for (enc, s) in e.values.iter().zip([1i64, -1]) {
                let bs = &b * BigRational::from_integer(big(s));
                if m > 0 {
                    prop_assert!(surd_in(&enc.re, &a, &bs, m), "precision {}", p);
                    prop_assert_eq!(&enc.im, &DyadicInterval::exact_zero());
                } else {
                    prop_assert!(enc.re.contains(&a));
                    prop_assert!(surd_in(&enc.im, &BigRational::zero(), &bs, -m), "precision {}", p);
                }
            }
            if let Some(pr) = &prev {
                for (x, y) in e.values.iter().zip(&pr.values) {
                    for (cur, old) in [(&x.re, &y.re), (&x.im, &y.im)] {
                        prop_assert!(cur.is_subset_of(old));
                        prop_assert!(cur.width() * BigRational::from_integer(big(2)) <= old.width());
                    }
                }
            }
            prev = Some(e);
        }
    }
}
