//! Orthogonal splitting `R = W + (1/(n-2)) E∘g + S/(2n(n-1)) g∘g`.

use crate::curvature::{kulkarni_nomizu, ricci_and_scalar, CurvatureTensor};
use crate::error::{CurvError, Result};
use crate::forms::SymTwoTensor;

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposedCurvature {
    pub n: usize,
    pub weyl: CurvatureTensor,
    /// `E = Rc - (S/n) g`.
    pub traceless_ricci: SymTwoTensor,
    pub scalar: f64,
}

impl DecomposedCurvature {
    /// Reassembles `W + (1/(n-2)) E∘g + S/(2n(n-1)) g∘g`.
    pub fn reconstruct(&self) -> Result<CurvatureTensor> {
        recombine(&self.weyl, &self.traceless_ricci, self.scalar)
    }

    /// Largest absolute single contraction of the Weyl part.
    pub fn weyl_trace_residual(&self) -> f64 {
        contraction_residual(&self.weyl)
    }
}

/// Coefficient of `g∘g` in the scalar part: `1/(2n(n-1))` (so `1/24` at `n = 4`).
pub fn scalar_coefficient(n: usize) -> f64 {
    1.0 / (2.0 * n as f64 * (n as f64 - 1.0))
}

pub fn decompose(r: &CurvatureTensor) -> Result<DecomposedCurvature> {
    let n = r.n();
    if n < 3 {
        return Err(CurvError::UnsupportedDimension {
            n,
            requirement: "the Weyl decomposition needs n >= 3",
        });
    }
    let (rc, s) = ricci_and_scalar(r);
    let e = rc.trace_free();
    let g = SymTwoTensor::identity(n);
    let eg = kulkarni_nomizu(&e, &g)?.scaled(1.0 / (n as f64 - 2.0));
    let gg = kulkarni_nomizu(&g, &g)?.scaled(s * scalar_coefficient(n));
    let weyl = r.minus(&eg)?.minus(&gg)?;
    Ok(DecomposedCurvature {
        n,
        weyl,
        traceless_ricci: e,
        scalar: s,
    })
}

/// Assembles a curvature tensor from a Weyl-type tensor, a trace-free Ricci
/// part and a scalar curvature.
pub fn recombine(weyl: &CurvatureTensor, e: &SymTwoTensor, scalar: f64) -> Result<CurvatureTensor> {
    let n = weyl.n();
    if e.n() != n {
        return Err(CurvError::DimensionMismatch {
            left: e.n(),
            right: n,
        });
    }
    if n < 3 {
        return Err(CurvError::UnsupportedDimension {
            n,
            requirement: "the Weyl decomposition needs n >= 3",
        });
    }
    let g = SymTwoTensor::identity(n);
    let eg = kulkarni_nomizu(e, &g)?.scaled(1.0 / (n as f64 - 2.0));
    let gg = kulkarni_nomizu(&g, &g)?.scaled(scalar * scalar_coefficient(n));
    weyl.plus(&eg)?.plus(&gg)
}

/// `max_{i,k} |Σ_j T_{ijkj}|`; by the symmetries this bounds every single
/// contraction of `T`.
pub fn contraction_residual(t: &CurvatureTensor) -> f64 {
    let n = t.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let c: f64 = (0..n).map(|j| t.get(i, j, k, j)).sum();
            let c2: f64 = (0..n).map(|j| t.get(i, j, j, k)).sum();
            let c3: f64 = (0..n).map(|j| t.get(j, i, k, j)).sum();
            worst = worst.max(c.abs()).max(c2.abs()).max(c3.abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::constant_curvature;

    #[test]
    fn round_sphere_is_pure_scalar() {
        let d = decompose(&constant_curvature(4, 1.0)).unwrap();
        assert!(d.weyl.max_abs() < 1e-15);
        assert!(d.traceless_ricci.norm() < 1e-15);
        assert_eq!(d.scalar, 12.0);
    }

    #[test]
    fn half_traceless_kulkarni_nomizu_is_pure_ricci() {
        // R = ½ A∘g with A trace-free: E = A, S = 0, W = 0 (n = 4).
        let a = SymTwoTensor::diagonal(&[1.0, -2.0, 0.5, 0.5]).add(&SymTwoTensor::sym_product(4, 0, 2)).unwrap();
        let r = kulkarni_nomizu(&a, &SymTwoTensor::identity(4)).unwrap().scaled(0.5);
        let d = decompose(&r).unwrap();
        assert!(d.weyl.max_abs() < 1e-14);
        assert!(d.scalar.abs() < 1e-14);
        assert!((d.traceless_ricci.matrix() - a.matrix()).amax() < 1e-14);
    }

    #[test]
    fn two_dimensional_tensors_are_rejected() {
        assert!(matches!(
            decompose(&CurvatureTensor::zero(2)),
            Err(CurvError::UnsupportedDimension { n: 2, .. })
        ));
    }

    #[test]
    fn scalar_coefficient_matches_dimension_four() {
        assert_eq!(scalar_coefficient(4), 1.0 / 24.0);
    }
}
