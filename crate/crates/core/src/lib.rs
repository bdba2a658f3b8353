//! Algebraic curvature tensors and their curvature operators of the first and
//! second kind.
//!
//! Indices are 0-based in the API unless a function says otherwise; orbit
//! labels in documents and error messages are 1-based.

pub mod curvature;
pub mod decomposition;
pub mod document;
pub mod error;
pub mod forms;
pub mod four_dim;
pub mod isotropic;
pub mod models;
pub mod search;
pub mod second_kind;
pub mod spectrum;

pub use curvature::{
    constant_curvature, kulkarni_nomizu, make_curvature, pair_count, pair_index, pairs,
    ricci_and_scalar, sectional, CurvatureTensor, DEFAULT_TOLERANCE,
};
pub use decomposition::{decompose, recombine, DecomposedCurvature};
pub use error::{CurvError, Result};
pub use forms::{inner_product_form, inner_product_sym, SymTwoTensor, TwoForm};
pub use second_kind::{
    first_kind_matrix, orthonormal_traceless_basis, second_kind_action, second_kind_form,
    second_kind_matrix, second_kind_matrix_in_basis, BasisConvention, FirstKindMatrix,
    SecondKindMatrix,
};
pub use spectrum::{k_positivity, spectrum, spectrum_with_vectors, Positivity, Spectrum};
pub use isotropic::{
    isotropic_quadratic, min_isotropic, min_isotropic_with, nic_check_dim4, FrameQuadruple,
    IsotropicMode, IsotropicReport, NicCheck, NicClass,
};
pub use search::{sectional_extrema, SearchConfig, SectionalExtrema};
pub use models::{build_model, random_ensemble, BlockData, Ensemble, EnsembleKind, ModelSpec};
pub use document::{DocumentError, Encoding, Payload, TensorDocument};
