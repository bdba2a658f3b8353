//! Dimension-4 structure of the curvature operators.
//!
//! Two-forms split into self-dual and anti-self-dual parts, spanned by
//!
//! ```text
//! ω¹ = e¹∧e² + e³∧e⁴   η¹ = e¹∧e² - e³∧e⁴
//! ω² = e¹∧e³ - e²∧e⁴   η² = e¹∧e³ + e²∧e⁴
//! ω³ = e¹∧e⁴ + e²∧e³   η³ = e¹∧e⁴ - e²∧e³
//! ```
//!
//! Rotating `e` so that these become eigenforms of `W^±` gives the nine
//! trace-free tensors `h^(α,β) = ω^α η^β`, in which the second-kind form has
//! an explicit 9×9 block shape: diagonal entries `-4(λ_α + μ_β) + S/3`, and
//! off-diagonal skew blocks built from the coordinates of the trace-free
//! Ricci tensor.

mod bases;
mod blocks;
mod einstein;

pub use bases::{
    derdzinski_bases, derdzinski_bases_oriented, h_basis, standard_eta, standard_omega,
    weyl_from_eigenforms, HBasis, HProduct, Orientation, SelfDualBases, H_PRODUCT_TABLE,
};
pub use blocks::{
    ehat_from_epsilon, ehat_matrix, rhat9, singer_thorpe_blocks, what_matrix, BergerForm,
    FourDimBlocks, SingerThorpe,
};
pub use einstein::{einstein_five_nonneg, einstein_six_nonneg, FiveNonneg, SixNonneg};

use crate::curvature::CurvatureTensor;
use crate::error::{CurvError, Result};

pub(crate) fn require_dim4(r: &CurvatureTensor) -> Result<()> {
    if r.n() != 4 {
        return Err(CurvError::UnsupportedDimension {
            n: r.n(),
            requirement: "dimension-4 structure needs n = 4",
        });
    }
    Ok(())
}
