//! Shared fixtures for the benchmarks.

use curvkind_core::{random_ensemble, CurvatureTensor, EnsembleKind};

/// A fixed raw curvature tensor of dimension `n` (4..=8).
pub fn fixture(n: usize, index: u64) -> CurvatureTensor {
    random_ensemble(2024, n, EnsembleKind::RawCurvature)
        .and_then(|e| e.item(index))
        .expect("fixture dimension in 4..=8")
}
