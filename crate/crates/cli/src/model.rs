//! `curvkind model`: canonical documents for the model spaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use curvkind_core::{build_model, second_kind_matrix, BasisConvention, ModelSpec, TensorDocument};

use crate::format::{list, num};
use crate::CliResult;

pub fn model_spec(name: &str, params: &BTreeMap<String, f64>) -> CliResult<ModelSpec> {
    Ok(ModelSpec::from_name(name, params)?)
}

/// The canonical JSON document for a model.
pub fn dump(spec: &ModelSpec) -> CliResult<String> {
    Ok(TensorDocument::from_model(spec)?.emit())
}

/// Short human-readable description.
pub fn describe(spec: &ModelSpec) -> CliResult<String> {
    let r = build_model(spec)?;
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", spec.name());
    let _ = writeln!(out, "dimension: {}", r.n());
    let _ = writeln!(out, "scalar curvature: {}", num(r.scalar()));
    if let Some(b) = spec.blocks() {
        let _ = writeln!(out, "W+ eigenvalues: {}", list(&b.w_plus_eigenvalues));
        let _ = writeln!(out, "W- eigenvalues: {}", list(&b.w_minus_eigenvalues));
    }
    let ortho = second_kind_matrix(&r, BasisConvention::Orthonormal)?.spectrum()?;
    let _ = writeln!(out, "second kind eigenvalues (orthonormal): {}", list(&ortho.eigenvalues));
    if r.n() == 4 {
        let ph = second_kind_matrix(&r, BasisConvention::PaperH)?.spectrum()?;
        let _ = writeln!(out, "second kind eigenvalues (paper-h): {}", list(&ph.eigenvalues));
    }
    Ok(out)
}
