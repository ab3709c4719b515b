//! Benchmark fixtures shared by the targets in `benches/`.

/// Sample fields as `(d1, d2)`, from trivial Pólya group to the slowest
/// oracle cases of the small corpus.
pub const SAMPLE_FIELDS: [(i64, i64); 5] = [(-1, 2), (2, 3), (-5, -6), (-30, 5), (19, 26)];
