use thiserror::Error;

/// Errors produced by curvature constructions and operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvError {
    #[error("conflicting values {first} and {second} supplied for component orbit {orbit:?}")]
    SymmetryConflict {
        orbit: [usize; 4],
        first: f64,
        second: f64,
    },
    #[error("first Bianchi identity violated: residual {residual:e} exceeds tolerance {tolerance:e}")]
    BianchiViolation { residual: f64, tolerance: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unsupported dimension {n}: {requirement}")]
    UnsupportedDimension { n: usize, requirement: &'static str },
    #[error("component index {index:?} out of range for dimension {n} (indices are 1-based)")]
    IndexOutOfRange { index: [usize; 4], n: usize },
    #[error("vectors span a degenerate plane")]
    DegeneratePlane,
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("k = {k} outside 1..={len}")]
    BadK { k: usize, len: usize },
    #[error("basis convention {0} is only available in dimension 4")]
    UnsupportedConvention(&'static str),
    #[error("parameters (lambda = {lambda}, mu = {mu}) must lie in [0, 1]")]
    BadParameterRange { lambda: f64, mu: f64 },
    #[error("invalid orthonormal frame (defect {defect:e})")]
    InvalidFrame { defect: f64 },
    #[error("invalid self-dual bases: {0}")]
    InvalidBases(String),
    #[error("tensor is not trace-free (trace {trace:e})")]
    NotTraceFree { trace: f64 },
    #[error("dimension {n} outside the supported range {range}")]
    BadDimension { n: usize, range: &'static str },
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

pub type Result<T, E = CurvError> = std::result::Result<T, E>;
