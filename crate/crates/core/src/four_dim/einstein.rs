//! k-non-negativity criteria for Einstein four-manifolds, stated under the
//! normalization `Rc = g` (so `S = 4`). Inputs with any positive scalar
//! curvature are rescaled first; the factor is reported.

use serde::Serialize;

use crate::error::{CurvError, Result};

const TRACE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiveNonneg {
    pub holds: bool,
    /// Values of the three inequalities (each must be ≥ 0).
    pub inequalities: [f64; 3],
    /// `Some(3/4)` when the criterion holds: the sectional bound it implies.
    pub sectional_bound: Option<f64>,
    /// Largest sectional curvature of the normalized tensor, `(λ₃+μ₃)/2 + 1/3`.
    pub max_sectional: f64,
    /// Factor `4/S` applied to the inputs.
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SixNonneg {
    pub holds: bool,
    pub inequalities: [f64; 3],
    pub sectional_leq_einstein: bool,
    pub first_kind_four_nonneg: bool,
    /// `4/3 − λ₃ − μ₃`, `4/3 + λ₁`, `4/3 + μ₁`.
    pub first_kind_inequalities: [f64; 3],
    pub max_sectional: f64,
    pub scale: f64,
}

fn normalized(lambdas: [f64; 3], mus: [f64; 3], scalar: f64) -> Result<([f64; 3], [f64; 3], f64)> {
    for v in [lambdas, mus] {
        let trace: f64 = v.iter().sum();
        let size = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if trace.abs() > TRACE_TOL * size {
            return Err(CurvError::NotTraceFree { trace });
        }
    }
    if !(scalar > 0.0) || !scalar.is_finite() {
        return Err(CurvError::BadParameters(format!(
            "Einstein criteria need positive scalar curvature, got {scalar}"
        )));
    }
    let scale = 4.0 / scalar;
    let sort = |v: [f64; 3]| {
        let mut s = v.map(|x| x * scale);
        s.sort_by(f64::total_cmp);
        s
    };
    Ok((sort(lambdas), sort(mus), scale))
}

fn max_sectional(l: &[f64; 3], m: &[f64; 3]) -> f64 {
    0.5 * (l[2] + m[2]) + 1.0 / 3.0
}

pub fn einstein_five_nonneg(lambdas: [f64; 3], mus: [f64; 3], scalar: f64) -> Result<FiveNonneg> {
    let (l, m, scale) = normalized(lambdas, mus, scalar)?;
    let c = 5.0 / 3.0;
    let inequalities = [
        c - 3.0 * l[2] - 3.0 * m[2] - l[1] - l[0] - m[1] - m[0],
        c - 3.0 * l[2] - 2.0 * m[2] - 2.0 * l[1] - 2.0 * m[1] - m[0],
        c - 2.0 * l[2] - 3.0 * m[2] - 2.0 * l[1] - 2.0 * m[1] - l[0],
    ];
    let holds = inequalities.iter().all(|&x| x >= -TRACE_TOL);
    Ok(FiveNonneg {
        holds,
        inequalities,
        sectional_bound: holds.then_some(0.75),
        max_sectional: max_sectional(&l, &m),
        scale,
    })
}

pub fn einstein_six_nonneg(lambdas: [f64; 3], mus: [f64; 3], scalar: f64) -> Result<SixNonneg> {
    let (l, m, scale) = normalized(lambdas, mus, scalar)?;
    let inequalities = [
        2.0 - 3.0 * l[2] - 3.0 * m[2] - 2.0 * l[1] - l[0] - 2.0 * m[1] - m[0],
        2.0 - 3.0 * l[2] - 2.0 * m[2] - 3.0 * l[1] - 2.0 * m[1] - 2.0 * m[0],
        2.0 - 2.0 * l[2] - 3.0 * m[2] - 2.0 * l[1] - 3.0 * m[1] - 2.0 * l[0],
    ];
    let first_kind_inequalities = [4.0 / 3.0 - l[2] - m[2], 4.0 / 3.0 + l[0], 4.0 / 3.0 + m[0]];
    let max_sec = max_sectional(&l, &m);
    Ok(SixNonneg {
        holds: inequalities.iter().all(|&x| x >= -TRACE_TOL),
        inequalities,
        sectional_leq_einstein: max_sec <= 1.0 + TRACE_TOL,
        first_kind_four_nonneg: first_kind_inequalities.iter().all(|&x| x >= -TRACE_TOL),
        first_kind_inequalities,
        max_sectional: max_sec,
        scale,
    })
}
