//! Spectra of small symmetric matrices and k-positivity classification.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{CurvError, Result};

/// Ascending eigenvalues of a symmetric form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicity_tolerance: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sum of the `k` smallest eigenvalues.
    pub fn sum_smallest(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.len() {
            return Err(CurvError::BadK { k, len: self.len() });
        }
        Ok(self.eigenvalues[..k].iter().sum())
    }

    /// Distinct eigenvalues with multiplicities, grouping values closer than
    /// `multiplicity_tolerance` (relative to the spectral radius).
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let scale = self.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let tol = self.multiplicity_tolerance * scale;
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.eigenvalues {
            match out.last_mut() {
                Some((_, count, sum)) if (v - *sum / *count as f64).abs() <= tol => {
                    *count += 1;
                    *sum += v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter().map(|(_, c, s)| (s / c as f64, c)).collect()
    }

    /// Multiplies every eigenvalue by `c` (c > 0 keeps the order).
    pub fn scaled(&self, c: f64) -> Spectrum {
        let mut eigenvalues: Vec<f64> = self.eigenvalues.iter().map(|v| v * c).collect();
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum {
            eigenvalues,
            multiplicity_tolerance: self.multiplicity_tolerance,
        }
    }
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn spectrum(m: &DMatrix<f64>) -> Result<Spectrum> {
    Ok(spectrum_with_vectors(m)?.0)
}

/// Ascending eigenvalues together with matching orthonormal eigenvectors
/// (columns).
pub fn spectrum_with_vectors(m: &DMatrix<f64>) -> Result<(Spectrum, DMatrix<f64>)> {
    if !m.is_square() {
        return Err(CurvError::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    let scale = m.amax().max(1.0);
    let asymmetry = (m - m.transpose()).amax();
    if asymmetry > 1e-9 * scale || !asymmetry.is_finite() {
        return Err(CurvError::NotSymmetric { asymmetry });
    }
    let d = m.nrows();
    if d == 0 {
        return Ok((
            Spectrum {
                eigenvalues: vec![],
                multiplicity_tolerance: 1e-9,
            },
            DMatrix::zeros(0, 0),
        ));
    }
    let sym = 0.5 * (m + m.transpose());
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((
        Spectrum {
            eigenvalues,
            multiplicity_tolerance: 1e-9,
        },
        vectors,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Positivity {
    Positive,
    Nonnegative,
    Indefinite,
}

impl Positivity {
    pub fn is_nonnegative(self) -> bool {
        !matches!(self, Positivity::Indefinite)
    }
}

/// Classifies the sum of the `k` smallest eigenvalues: `> tol` is positive,
/// `>= -tol` non-negative, anything else indefinite.
pub fn k_positivity(spec: &Spectrum, k: usize, tolerance: f64) -> Result<Positivity> {
    let s = spec.sum_smallest(k)?;
    Ok(if s > tolerance {
        Positivity::Positive
    } else if s >= -tolerance {
        Positivity::Nonnegative
    } else {
        Positivity::Indefinite
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        assert_eq!(spectrum(&m).unwrap().eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn reconstruction_residual_is_small() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.5, -1.0, 3.0, 0.25, 0.5, 0.25, -1.0]);
        let (s, q) = spectrum_with_vectors(&m).unwrap();
        let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(s.eigenvalues.clone()));
        let back = &q * lam * q.transpose();
        assert!((back - &m).amax() <= 1e-9 * m.amax());
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(spectrum(&m), Err(CurvError::NotSymmetric { .. })));
    }

    #[test]
    fn k_positivity_bands() {
        let s = Spectrum {
            eigenvalues: vec![-1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0],
            multiplicity_tolerance: 1e-9,
        };
        assert_eq!(k_positivity(&s, 5, 1e-9).unwrap(), Positivity::Indefinite);
        assert_eq!(k_positivity(&s, 6, 1e-9).unwrap(), Positivity::Nonnegative);
        assert_eq!(k_positivity(&s, 9, 1e-9).unwrap(), Positivity::Positive);
        assert!(matches!(k_positivity(&s, 0, 1e-9), Err(CurvError::BadK { .. })));
        assert!(matches!(k_positivity(&s, 10, 1e-9), Err(CurvError::BadK { .. })));
        assert_eq!(s.clusters(), vec![(-1.0, 1), (0.0, 4), (1.0, 4)]);
    }
}
