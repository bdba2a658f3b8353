//! Symmetric two-tensors and two-forms on `R^n` with their inner products.
//!
//! Conventions: `e^i ⊙ e^j = e^i ⊗ e^j + e^j ⊗ e^i` and
//! `e^i ∧ e^j = e^i ⊗ e^j - e^j ⊗ e^i`. Symmetric tensors pair through
//! `Tr(uᵀv)`, two-forms through `½ Tr(uᵀv)`, so that `{e^i ∧ e^j}_{i<j}` is
//! orthonormal.

use nalgebra::DMatrix;

use crate::error::{CurvError, Result};

/// A symmetric bilinear form on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTwoTensor {
    entries: DMatrix<f64>,
}

impl SymTwoTensor {
    /// Builds a symmetric tensor from a square matrix, replacing it by its
    /// symmetric part so that `entries[i][j] == entries[j][i]` exactly.
    pub fn new(m: DMatrix<f64>) -> Self {
        assert!(m.is_square(), "symmetric tensor needs a square matrix");
        let n = m.nrows();
        let mut entries = m;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (entries[(i, j)] + entries[(j, i)]);
                entries[(i, j)] = v;
                entries[(j, i)] = v;
            }
        }
        Self { entries }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::new(DMatrix::from_fn(n, n, f))
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: DMatrix::zeros(n, n),
        }
    }

    /// The metric `g` in an orthonormal basis.
    pub fn identity(n: usize) -> Self {
        Self {
            entries: DMatrix::identity(n, n),
        }
    }

    /// `e^i ⊙ e^j` (0-based indices). For `i == j` this is `2 e^i ⊗ e^i`.
    pub fn sym_product(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] += 1.0;
        m[(j, i)] += 1.0;
        Self { entries: m }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self {
            entries: DMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 }),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Trace-free part `s - (tr s / n) g`.
    pub fn trace_free(&self) -> Self {
        let n = self.n();
        let t = self.trace() / n as f64;
        let mut m = self.entries.clone();
        for i in 0..n {
            m[(i, i)] -= t;
        }
        Self { entries: m }
    }

    /// `⟨u, v⟩ = Tr(uᵀv)`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        check_dims(self.n(), other.n())?;
        Ok(self.entries.dot(&other.entries))
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            entries: &self.entries * c,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.n(), other.n())?;
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }

    /// Matrix product `(s t)_{ij} = s_{ik} t_{kj}`; not symmetric in general.
    pub fn product(&self, other: &Self) -> DMatrix<f64> {
        &self.entries * &other.entries
    }

    pub(crate) fn from_symmetric_unchecked(entries: DMatrix<f64>) -> Self {
        Self { entries }
    }
}

/// `⟨s, t⟩ = Tr(sᵀt)` on symmetric two-tensors.
pub fn inner_product_sym(s: &SymTwoTensor, t: &SymTwoTensor) -> Result<f64> {
    s.inner(t)
}

/// `⟨a, b⟩ = ½ Tr(aᵀb)` on two-forms.
pub fn inner_product_form(a: &TwoForm, b: &TwoForm) -> Result<f64> {
    a.inner(b)
}

/// An antisymmetric bilinear form on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    entries: DMatrix<f64>,
}

impl TwoForm {
    /// Builds a two-form from the antisymmetric part of `m`.
    pub fn new(m: DMatrix<f64>) -> Self {
        assert!(m.is_square(), "two-form needs a square matrix");
        let n = m.nrows();
        let mut entries = m;
        for i in 0..n {
            entries[(i, i)] = 0.0;
            for j in (i + 1)..n {
                let v = 0.5 * (entries[(i, j)] - entries[(j, i)]);
                entries[(i, j)] = v;
                entries[(j, i)] = -v;
            }
        }
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: DMatrix::zeros(n, n),
        }
    }

    /// `e^i ∧ e^j` (0-based indices).
    pub fn wedge(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        if i != j {
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
        }
        Self { entries: m }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// `⟨a, b⟩ = ½ Tr(aᵀb)`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        check_dims(self.n(), other.n())?;
        Ok(0.5 * self.entries.dot(&other.entries))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            entries: &self.entries * c,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.n(), other.n())?;
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.n(), other.n())?;
        Ok(Self {
            entries: &self.entries - &other.entries,
        })
    }

    /// Endomorphism composition `(a b)_{ij} = a_{ik} b_{kj}`.
    pub fn compose(&self, other: &Self) -> DMatrix<f64> {
        &self.entries * &other.entries
    }

    /// The form pulled into coordinates where the new basis vectors are the
    /// columns of `q`: entries `Σ q_{ka} q_{lb} a_{ab}` = `q a qᵀ`.
    pub fn transported(&self, q: &DMatrix<f64>) -> Self {
        Self::new(q * &self.entries * q.transpose())
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(CurvError::DimensionMismatch { left, right });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_product_norm() {
        let s = SymTwoTensor::sym_product(4, 0, 1);
        assert_eq!(s.inner(&s).unwrap(), 2.0);
    }

    #[test]
    fn wedge_basis_is_orthonormal() {
        let a = TwoForm::wedge(4, 0, 1);
        let b = TwoForm::wedge(4, 2, 3);
        assert_eq!(a.inner(&a).unwrap(), 1.0);
        assert_eq!(a.inner(&b).unwrap(), 0.0);
    }

    #[test]
    fn self_dual_form_has_norm_two() {
        let w = TwoForm::wedge(4, 0, 1).add(&TwoForm::wedge(4, 2, 3)).unwrap();
        assert_eq!(w.inner(&w).unwrap(), 2.0);
    }

    #[test]
    fn construction_enforces_symmetry() {
        let s = SymTwoTensor::new(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 4.0, 3.0]));
        assert_eq!(s.get(0, 1), s.get(1, 0));
        assert_eq!(s.get(0, 1), 3.0);
        let a = TwoForm::new(DMatrix::from_row_slice(2, 2, &[5.0, 2.0, 4.0, 3.0]));
        assert_eq!(a.get(0, 1), -a.get(1, 0));
        assert_eq!(a.get(0, 0), 0.0);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let s = SymTwoTensor::identity(3);
        let t = SymTwoTensor::identity(4);
        assert!(matches!(
            s.inner(&t),
            Err(CurvError::DimensionMismatch { left: 3, right: 4 })
        ));
    }
}
