//! Enumeration of fields for sweeps: squarefree radicands in a range and
//! the distinct biquadratic fields they generate.

use std::collections::BTreeSet;

use crate::biquad::canonical_triple;
use crate::exact::is_squarefree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldFilter {
    #[default]
    All,
    Real,
    Imaginary,
}

impl FieldFilter {
    pub fn accepts(self, triple: &[i64; 3]) -> bool {
        let real = triple.iter().all(|&d| d > 0);
        match self {
            Self::All => true,
            Self::Real => real,
            Self::Imaginary => !real,
        }
    }
}

/// Squarefree `d ∉ {0, 1}` with `|d| ≤ bound`, ascending.
pub fn squarefree_range(bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|&d| d != 0 && d != 1 && is_squarefree(d)).collect()
}

/// Canonical triples of all fields `Q(√a, √b)` with `a ≠ b` squarefree and
/// `|a|, |b| ≤ bound`, each field once, in ascending lexicographic order.
pub fn canonical_triples(bound: i64, filter: FieldFilter) -> Vec<[i64; 3]> {
    let ds = squarefree_range(bound);
    let mut set = BTreeSet::new();
    for (i, &a) in ds.iter().enumerate() {
        for &b in &ds[i + 1..] {
            if let Ok(t) = canonical_triple(a, b) {
                if filter.accepts(&t) {
                    set.insert(t);
                }
            }
        }
    }
    set.into_iter().collect()
}
