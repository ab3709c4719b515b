//! Pólya groups of biquadratic number fields.
//!
//! The crate computes `|Po(K)|` for `K = Q(√d₁, √d₂)` from closed formulas in
//! the invariants of `K` and its three quadratic subfields, and checks every
//! formula against a brute-force count of strongly ambiguous ideal classes
//! built on exact ideal-lattice arithmetic.

pub mod biquad;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod quadratic;

pub use biquad::{
    chain_indices, coker_order, is_square_in_k, ker_order, polya_order, polya_report, BiquadElement,
    BiquadField, ChainIndices, PolyaReport, RamificationProfile, StarCase, UnitStructure,
};
pub use error::{Error, Result};
pub use oracle::{
    ideal_mul, ker_order_oracle, pi2_ideal, polya_order_oracle, principality_k, radical_mod_p, IdealLattice,
    OracleConfig,
};
pub use quadratic::{QuadElement, QuadIdeal, QuadraticField};
