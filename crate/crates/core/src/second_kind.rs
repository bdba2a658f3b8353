//! Curvature operators of the first and second kind as matrices.
//!
//! The first kind acts on two-forms, with matrix entries `R_{ijkl}` in the
//! basis `{e^i∧e^j}_{i<j}`. The second kind is the bilinear form
//! `R̂(s, t) = Σ R_{iklj} s_{kl} t_{ij}` restricted to trace-free symmetric
//! tensors.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureTensor;
use crate::error::{CurvError, Result};
use crate::forms::SymTwoTensor;
use crate::four_dim;
use crate::spectrum::{spectrum, Spectrum};

/// Matrix of the curvature operator on `Λ²` in the ordered basis
/// `{e^i∧e^j}_{i<j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstKindMatrix {
    pub n: usize,
    pub matrix: DMatrix<f64>,
}

impl FirstKindMatrix {
    pub fn spectrum(&self) -> Result<Spectrum> {
        spectrum(&self.matrix)
    }
}

pub fn first_kind_matrix(r: &CurvatureTensor) -> FirstKindMatrix {
    FirstKindMatrix {
        n: r.n(),
        matrix: r.pair_matrix().clone(),
    }
}

/// Normalization of the basis in which a second-kind matrix is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisConvention {
    /// Orthonormal under `Tr(sᵀt)`; eigenvalues are those of the bilinear form.
    Orthonormal,
    /// Dimension 4 only: the nine tensors `h^(α,β) = ω^α η^β` with `|h| = 2`,
    /// so every entry is 4 times the orthonormal one.
    PaperH,
}

impl BasisConvention {
    pub fn name(self) -> &'static str {
        match self {
            BasisConvention::Orthonormal => "orthonormal",
            BasisConvention::PaperH => "paper-h",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondKindMatrix {
    pub n: usize,
    pub matrix: DMatrix<f64>,
    pub basis: Vec<SymTwoTensor>,
    pub convention: BasisConvention,
}

impl SecondKindMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        spectrum(&self.matrix)
    }
}

/// Orthonormal basis of trace-free symmetric tensors: `(e^i⊙e^j)/√2` for
/// `i < j` in lexicographic order, followed by
/// `diag(1,…,1,-k,0,…)/√(k(k+1))` for `k = 1..n-1`.
pub fn orthonormal_traceless_basis(n: usize) -> Vec<SymTwoTensor> {
    let mut basis = Vec::with_capacity(n * (n + 1) / 2 - 1);
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(SymTwoTensor::sym_product(n, i, j).scale(r2));
        }
    }
    for k in 1..n {
        let c = 1.0 / ((k * (k + 1)) as f64).sqrt();
        let mut d = vec![0.0; n];
        d[..k].iter_mut().for_each(|x| *x = c);
        d[k] = -(k as f64) * c;
        basis.push(SymTwoTensor::diagonal(&d));
    }
    basis
}

/// `(R̂ s)_{ij} = Σ_{kl} R_{iklj} s_{kl}`.
pub fn second_kind_action(r: &CurvatureTensor, s: &SymTwoTensor) -> Result<SymTwoTensor> {
    let n = r.n();
    if s.n() != n {
        return Err(CurvError::DimensionMismatch {
            left: s.n(),
            right: n,
        });
    }
    let sm = s.matrix();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let mut acc = 0.0;
        for k in 0..n {
            for l in 0..n {
                acc += r.get(i, k, l, j) * sm[(k, l)];
            }
        }
        acc
    });
    Ok(SymTwoTensor::new(m))
}

/// `R̂(s, t) = Σ_{ijkl} R_{iklj} s_{kl} t_{ij}`.
pub fn second_kind_form(r: &CurvatureTensor, s: &SymTwoTensor, t: &SymTwoTensor) -> Result<f64> {
    if t.n() != r.n() {
        return Err(CurvError::DimensionMismatch {
            left: t.n(),
            right: r.n(),
        });
    }
    second_kind_action(r, s)?.inner(t)
}

/// The second-kind form restricted to trace-free tensors, written in the basis
/// selected by `convention`.
pub fn second_kind_matrix(r: &CurvatureTensor, convention: BasisConvention) -> Result<SecondKindMatrix> {
    let basis = match convention {
        BasisConvention::Orthonormal => orthonormal_traceless_basis(r.n()),
        BasisConvention::PaperH => {
            if r.n() != 4 {
                return Err(CurvError::UnsupportedConvention("paper-h"));
            }
            let bases = four_dim::derdzinski_bases(r)?;
            four_dim::h_basis(&bases)?.h.to_vec()
        }
    };
    second_kind_matrix_in_basis(r, basis, convention)
}

/// Gram matrix `R̂(b_α, b_β)` for an arbitrary list of symmetric tensors.
pub fn second_kind_matrix_in_basis(
    r: &CurvatureTensor,
    basis: Vec<SymTwoTensor>,
    convention: BasisConvention,
) -> Result<SecondKindMatrix> {
    let images = basis
        .iter()
        .map(|b| second_kind_action(r, b))
        .collect::<Result<Vec<_>>>()?;
    let d = basis.len();
    let mut m = DMatrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let v = images[a].inner(&basis[b])?;
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    Ok(SecondKindMatrix {
        n: r.n(),
        matrix: m,
        basis,
        convention,
    })
}
