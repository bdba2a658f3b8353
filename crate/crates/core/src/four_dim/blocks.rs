use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curvature::{pairs, CurvatureTensor};
use crate::decomposition::decompose;
use crate::error::{CurvError, Result};
use crate::forms::{SymTwoTensor, TwoForm};

use super::bases::{derdzinski_bases, h_basis, standard_eta, standard_omega, HBasis, SelfDualBases};
use super::require_dim4;

/// First-kind operator in the orthonormal basis `{ω^α/√2, η^β/√2}`:
/// `[[S/12 + W⁺, B], [Bᵀ, S/12 + W⁻]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingerThorpe {
    pub w_plus: DMatrix<f64>,
    pub w_minus: DMatrix<f64>,
    /// Block coupling `Λ²₊` to `Λ²₋`, given by `½ E∘g`.
    pub b_block: DMatrix<f64>,
    pub scalar: f64,
}

fn form_coordinates(forms: impl IntoIterator<Item = TwoForm>) -> DMatrix<f64> {
    let ps = pairs(4);
    let cols: Vec<DVector<f64>> = forms
        .into_iter()
        .map(|f| DVector::from_iterator(ps.len(), ps.iter().map(|&(i, j)| f.get(i, j))))
        .collect();
    DMatrix::from_columns(&cols)
}

pub fn singer_thorpe_blocks(r: &CurvatureTensor) -> Result<SingerThorpe> {
    require_dim4(r)?;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let basis = form_coordinates(
        standard_omega()
            .into_iter()
            .chain(standard_eta())
            .map(|f| f.scale(r2)),
    );
    let m = basis.transpose() * r.pair_matrix() * &basis;
    let scalar = r.scalar();
    let shift = DMatrix::<f64>::identity(3, 3) * (scalar / 12.0);
    let sym = |b: DMatrix<f64>| 0.5 * (&b + b.transpose());
    Ok(SingerThorpe {
        w_plus: sym(m.view((0, 0), (3, 3)).into_owned() - &shift),
        w_minus: sym(m.view((3, 3), (3, 3)).into_owned() - &shift),
        b_block: m.view((0, 3), (3, 3)).into_owned(),
        scalar,
    })
}

/// Matrix of `Ŵ` in the `h` basis: `diag(-4(λ_α + μ_β))` in `h` order.
pub fn what_matrix(bases: &SelfDualBases) -> Result<DMatrix<f64>> {
    bases.validate(1e-9)?;
    let mut m = DMatrix::zeros(9, 9);
    for a in 0..3 {
        for b in 0..3 {
            m[(3 * a + b, 3 * a + b)] = -4.0 * (bases.lambdas[a] + bases.mus[b]);
        }
    }
    Ok(m)
}

fn skew(x: f64, y: f64, z: f64) -> [[f64; 3]; 3] {
    // [[0, -z, y], [z, 0, -x], [-y, x, 0]]
    [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]]
}

/// Skew blocks `(O₁, O₂, O₃)` of `Ê` from the coordinates `ε` (0-based array
/// holding `ε₁..ε₉`).
fn o_blocks(eps: &[f64; 9]) -> [[[f64; 3]; 3]; 3] {
    let o1 = skew(eps[6], eps[7], eps[8]);
    let o2 = skew(-eps[3], -eps[4], -eps[5]);
    let o3 = skew(eps[0], eps[1], eps[2]);
    [o1, o2, o3]
}

/// `Ê = [[0, O₁, O₂], [-O₁, 0, O₃], [-O₂, -O₃, 0]]`.
pub fn ehat_from_epsilon(eps: &[f64; 9]) -> DMatrix<f64> {
    let [o1, o2, o3] = o_blocks(eps);
    let mut m = DMatrix::zeros(9, 9);
    let mut put = |br: usize, bc: usize, o: &[[f64; 3]; 3]| {
        for i in 0..3 {
            for j in 0..3 {
                m[(3 * br + i, 3 * bc + j)] = o[i][j];
                m[(3 * bc + i, 3 * br + j)] = -o[i][j];
            }
        }
    };
    put(0, 1, &o1);
    put(0, 2, &o2);
    put(1, 2, &o3);
    m
}

/// Matrix of `Ê(s, t) = ⟨E, s t⟩` in the `h` basis together with `ε_γ = ⟨E, h^γ⟩`.
pub fn ehat_matrix(e: &SymTwoTensor, h: &HBasis) -> Result<(DMatrix<f64>, [f64; 9])> {
    if e.n() != 4 {
        return Err(CurvError::DimensionMismatch { left: e.n(), right: 4 });
    }
    let trace = e.trace();
    if trace.abs() > 1e-9 * e.norm().max(1.0) {
        return Err(CurvError::NotTraceFree { trace });
    }
    let eps = h.coordinates(e)?;
    Ok((ehat_from_epsilon(&eps), eps))
}

/// Berger invariants: `λ_i = a_i + b_i`, `μ_i = a_i - b_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergerForm {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl BergerForm {
    pub fn from_eigenvalues(lambdas: [f64; 3], mus: [f64; 3]) -> Self {
        Self {
            a: std::array::from_fn(|i| 0.5 * (lambdas[i] + mus[i])),
            b: std::array::from_fn(|i| 0.5 * (lambdas[i] - mus[i])),
        }
    }

    /// Slack in `|b₂-b₁| ≤ a₂-a₁`, `|b₃-b₁| ≤ a₃-a₁`, `|b₃-b₂| ≤ a₃-a₂`
    /// (non-negative when the inequality holds).
    pub fn inequality_slack(&self) -> [f64; 3] {
        let (a, b) = (self.a, self.b);
        [
            (a[1] - a[0]) - (b[1] - b[0]).abs(),
            (a[2] - a[0]) - (b[2] - b[0]).abs(),
            (a[2] - a[1]) - (b[2] - b[1]).abs(),
        ]
    }

    pub fn inequalities_hold(&self, tolerance: f64) -> bool {
        self.inequality_slack().iter().all(|&s| s >= -tolerance)
    }
}

/// Everything the dimension-4 normal form of `R̂` is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct FourDimBlocks {
    pub w_plus: DMatrix<f64>,
    pub w_minus: DMatrix<f64>,
    pub b_block: DMatrix<f64>,
    pub scalar: f64,
    pub traceless_ricci: SymTwoTensor,
    pub lambdas: [f64; 3],
    pub mus: [f64; 3],
    pub berger: BergerForm,
    pub epsilon: [f64; 9],
    pub bases: SelfDualBases,
    pub h: HBasis,
    /// `Ŵ + Ê + (S/3) Id₉` in the `h` basis.
    pub rhat9: DMatrix<f64>,
    pub o1: DMatrix<f64>,
    pub o2: DMatrix<f64>,
    pub o3: DMatrix<f64>,
}

pub fn rhat9(r: &CurvatureTensor) -> Result<FourDimBlocks> {
    require_dim4(r)?;
    let st = singer_thorpe_blocks(r)?;
    let dec = decompose(r)?;
    let bases = derdzinski_bases(r)?;
    let h = h_basis(&bases)?;
    let what = what_matrix(&bases)?;
    let (ehat, epsilon) = ehat_matrix(&dec.traceless_ricci, &h)?;
    // the S/12 ⟨s,t⟩ term picks up |h|² = 4
    let rhat = what + &ehat + DMatrix::<f64>::identity(9, 9) * (dec.scalar / 3.0);
    let block = |r0: usize, c0: usize| ehat.view((r0, c0), (3, 3)).into_owned();
    Ok(FourDimBlocks {
        w_plus: st.w_plus,
        w_minus: st.w_minus,
        b_block: st.b_block,
        scalar: dec.scalar,
        traceless_ricci: dec.traceless_ricci,
        lambdas: bases.lambdas,
        mus: bases.mus,
        berger: BergerForm::from_eigenvalues(bases.lambdas, bases.mus),
        epsilon,
        o1: block(0, 3),
        o2: block(0, 6),
        o3: block(3, 6),
        bases,
        h,
        rhat9: rhat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{constant_curvature, kulkarni_nomizu};

    #[test]
    fn round_sphere_blocks() {
        let st = singer_thorpe_blocks(&constant_curvature(4, 1.0)).unwrap();
        assert!(st.w_plus.amax() < 1e-15);
        assert!(st.w_minus.amax() < 1e-15);
        assert!(st.b_block.amax() < 1e-15);
        assert_eq!(st.scalar, 12.0);
        let blocks = rhat9(&constant_curvature(4, 1.0)).unwrap();
        assert!((blocks.rhat9 - DMatrix::<f64>::identity(9, 9) * 4.0).amax() < 1e-14);
    }

    #[test]
    fn pure_ricci_tensor_lives_in_b_block() {
        let a = SymTwoTensor::diagonal(&[1.0, -1.0, 0.0, 0.0]).add(&SymTwoTensor::sym_product(4, 1, 3)).unwrap();
        let r = kulkarni_nomizu(&a, &SymTwoTensor::identity(4)).unwrap().scaled(0.5);
        let st = singer_thorpe_blocks(&r).unwrap();
        assert!(st.w_plus.amax() < 1e-14);
        assert!(st.w_minus.amax() < 1e-14);
        assert!(st.scalar.abs() < 1e-14);
        assert!(st.b_block.amax() > 0.1);
    }

    #[test]
    fn epsilon_for_single_basis_tensor() {
        let b = SelfDualBases::from_frame(DMatrix::identity(4, 4), [0.0; 3], [0.0; 3]);
        let h = h_basis(&b).unwrap();
        // E = h⁹ has ε = (0, …, 0, 4); E = ¼h⁹ has ε₉ = 1.
        let (m, eps) = ehat_matrix(&h.h[8], &h).unwrap();
        assert_eq!(eps, [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0]);
        let o1 = m.view((0, 3), (3, 3)).into_owned();
        assert_eq!(o1, DMatrix::from_row_slice(3, 3, &[0.0, -4.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(m.view((0, 6), (3, 3)).amax(), 0.0);
        assert_eq!(m.view((3, 6), (3, 3)).amax(), 0.0);
        let (_, eps_quarter) = ehat_matrix(&h.h[8].scale(0.25), &h).unwrap();
        assert_eq!(eps_quarter[8], 1.0);
    }

    #[test]
    fn trace_is_rejected() {
        let b = SelfDualBases::from_frame(DMatrix::identity(4, 4), [0.0; 3], [0.0; 3]);
        let h = h_basis(&b).unwrap();
        assert!(matches!(
            ehat_matrix(&SymTwoTensor::identity(4), &h),
            Err(CurvError::NotTraceFree { .. })
        ));
    }

    #[test]
    fn berger_from_eigenvalues() {
        let f = BergerForm::from_eigenvalues([-0.5, 0.1, 0.4], [-0.3, -0.2, 0.5]);
        assert!((f.a.iter().sum::<f64>()).abs() < 1e-15);
        assert!((f.b.iter().sum::<f64>()).abs() < 1e-15);
        assert!(f.inequalities_hold(0.0));
        let bad = BergerForm { a: [0.0, 0.0, 0.0], b: [-1.0, 0.0, 1.0] };
        assert!(!bad.inequalities_hold(1e-9));
    }
}
