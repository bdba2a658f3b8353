use nalgebra::{DMatrix, DVector};

use crate::curvature::{pair_count, pairs, CurvatureTensor, DEFAULT_TOLERANCE};
use crate::error::{CurvError, Result};
use crate::forms::{SymTwoTensor, TwoForm};
use crate::spectrum::spectrum_with_vectors;

use super::blocks::singer_thorpe_blocks;
use super::require_dim4;

fn w(i: usize, j: usize) -> TwoForm {
    TwoForm::wedge(4, i, j)
}

/// `ω¹, ω², ω³` in the standard basis.
pub fn standard_omega() -> [TwoForm; 3] {
    [
        w(0, 1).add(&w(2, 3)).unwrap(),
        w(0, 2).sub(&w(1, 3)).unwrap(),
        w(0, 3).add(&w(1, 2)).unwrap(),
    ]
}

/// `η¹, η², η³` in the standard basis.
pub fn standard_eta() -> [TwoForm; 3] {
    [
        w(0, 1).sub(&w(2, 3)).unwrap(),
        w(0, 2).add(&w(1, 3)).unwrap(),
        w(0, 3).sub(&w(1, 2)).unwrap(),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `e₁, e₂, e₃, e₄` in the given order is positively oriented.
    #[default]
    Standard,
    /// Reversed orientation: the roles of `(λ, ω)` and `(μ, η)` swap.
    Reversed,
}

/// Eigenform bases of `W⁺` and `W⁻` with the quaternionic pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfDualBases {
    /// Columns are the orthonormal frame `e₁..e₄` realizing the forms.
    pub e_basis: DMatrix<f64>,
    pub omega: [TwoForm; 3],
    pub eta: [TwoForm; 3],
    /// Eigenvalues of `W⁺`, ascending.
    pub lambdas: [f64; 3],
    /// Eigenvalues of `W⁻`, ascending.
    pub mus: [f64; 3],
}

impl SelfDualBases {
    /// Forms of the standard pattern built on the frame `q` (columns).
    pub fn from_frame(q: DMatrix<f64>, lambdas: [f64; 3], mus: [f64; 3]) -> Self {
        let omega = standard_omega().map(|f| f.transported(&q));
        let eta = standard_eta().map(|f| f.transported(&q));
        Self {
            e_basis: q,
            omega,
            eta,
            lambdas,
            mus,
        }
    }

    /// Largest violation of the norm, orthogonality and product relations
    /// `(ω^α)² = -Id`, `ω¹ω² = -ω³`, `ω¹ω³ = ω²`, `ω²ω³ = -ω¹`,
    /// `η¹η² = η³`, `η¹η³ = -η²`, `η²η³ = η¹`.
    pub fn quaternion_residual(&self) -> f64 {
        let id = DMatrix::<f64>::identity(4, 4);
        let (o, e) = (&self.omega, &self.eta);
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let delta = if a == b { 2.0 } else { 0.0 };
                worst = worst
                    .max((o[a].inner(&o[b]).unwrap() - delta).abs())
                    .max((e[a].inner(&e[b]).unwrap() - delta).abs())
                    .max(o[a].inner(&e[b]).unwrap().abs());
            }
            worst = worst
                .max((o[a].compose(&o[a]) + &id).amax())
                .max((e[a].compose(&e[a]) + &id).amax());
        }
        for m in [
            o[0].compose(&o[1]) + o[2].matrix(),
            o[0].compose(&o[2]) - o[1].matrix(),
            o[1].compose(&o[2]) + o[0].matrix(),
            e[0].compose(&e[1]) - e[2].matrix(),
            e[0].compose(&e[2]) + e[1].matrix(),
            e[1].compose(&e[2]) - e[0].matrix(),
        ] {
            worst = worst.max(m.amax());
        }
        worst
    }

    pub fn validate(&self, tolerance: f64) -> Result<()> {
        let r = self.quaternion_residual();
        if r > tolerance {
            return Err(CurvError::InvalidBases(format!(
                "quaternion relations violated by {r:e}"
            )));
        }
        if (self.lambdas.iter().sum::<f64>()).abs() > tolerance.max(1e-9)
            || (self.mus.iter().sum::<f64>()).abs() > tolerance.max(1e-9)
        {
            return Err(CurvError::InvalidBases("eigenvalues are not trace-free".into()));
        }
        Ok(())
    }

    /// `W_{ijkl} = ½ Σ λ_α ω^α_{ij} ω^α_{kl} + ½ Σ μ_β η^β_{ij} η^β_{kl}`.
    pub fn weyl(&self) -> Result<CurvatureTensor> {
        weyl_from_eigenforms(&self.omega, &self.eta, self.lambdas, self.mus)
    }
}

/// Weyl tensor with prescribed eigenforms and eigenvalues. The eigenvalues of
/// each half must sum to zero, otherwise the Bianchi identity fails.
pub fn weyl_from_eigenforms(
    omega: &[TwoForm; 3],
    eta: &[TwoForm; 3],
    lambdas: [f64; 3],
    mus: [f64; 3],
) -> Result<CurvatureTensor> {
    let ps = pairs(4);
    let coords = |f: &TwoForm| DVector::from_iterator(ps.len(), ps.iter().map(|&(i, j)| f.get(i, j)));
    let mut m = DMatrix::zeros(pair_count(4), pair_count(4));
    for a in 0..3 {
        let o = coords(&omega[a]);
        let e = coords(&eta[a]);
        m += 0.5 * lambdas[a] * &o * o.transpose();
        m += 0.5 * mus[a] * &e * e.transpose();
    }
    CurvatureTensor::from_pair_matrix(4, &m, DEFAULT_TOLERANCE)
}

/// Orthonormal eigenvectors (columns) of a symmetric 3×3 block with ascending
/// eigenvalues and a right-handed frame. Inside a degenerate eigenspace the
/// vectors are taken as close as possible to the coordinate axes, so `W = 0`
/// keeps the standard forms.
fn so3_eigenframe(m: &DMatrix<f64>) -> Result<([f64; 3], DMatrix<f64>)> {
    let (spec, vecs) = spectrum_with_vectors(m)?;
    let ev = &spec.eigenvalues;
    let tol = 1e-10 * m.amax().max(1.0);
    let mut frame = DMatrix::zeros(3, 3);
    let mut start = 0;
    while start < 3 {
        let mut end = start + 1;
        while end < 3 && (ev[end] - ev[start]).abs() <= tol {
            end += 1;
        }
        if end - start == 1 {
            frame.set_column(start, &vecs.column(start));
        } else {
            // project the axes onto the cluster and pick greedily
            let span = vecs.columns(start, end - start).into_owned();
            let proj = &span * span.transpose();
            let mut chosen: Vec<(usize, DVector<f64>)> = Vec::new();
            for _ in start..end {
                let mut best: Option<(usize, DVector<f64>, f64)> = None;
                for axis in 0..3 {
                    if chosen.iter().any(|(a, _)| *a == axis) {
                        continue;
                    }
                    let mut v = proj.column(axis).into_owned();
                    for (_, c) in &chosen {
                        let d = c.dot(&v);
                        v -= d * c;
                    }
                    let nv = v.norm();
                    if best.as_ref().is_none_or(|b| nv > b.2 + 1e-12) {
                        best = Some((axis, v, nv));
                    }
                }
                let (axis, v, nv) = best.expect("cluster has a free axis");
                chosen.push((axis, v / nv));
            }
            chosen.sort_by_key(|(a, _)| *a);
            for (offset, (_, v)) in chosen.into_iter().enumerate() {
                frame.set_column(start + offset, &v);
            }
        }
        start = end;
    }
    for c in 0..3 {
        let col = frame.column(c).into_owned();
        let lead = col.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() + 1e-12 { x } else { a });
        if lead < 0.0 {
            frame.set_column(c, &(-col));
        }
    }
    if frame.determinant() < 0.0 {
        let last = -frame.column(2).into_owned();
        frame.set_column(2, &last);
    }
    Ok(([ev[0], ev[1], ev[2]], frame))
}

pub fn derdzinski_bases(r: &CurvatureTensor) -> Result<SelfDualBases> {
    derdzinski_bases_oriented(r, Orientation::Standard)
}

/// Eigenform bases of `W^±` realized on a common orthonormal frame.
pub fn derdzinski_bases_oriented(r: &CurvatureTensor, orientation: Orientation) -> Result<SelfDualBases> {
    require_dim4(r)?;
    if orientation == Orientation::Reversed {
        let flip = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]));
        let b = derdzinski_bases_oriented(&r.rotated(&flip)?, Orientation::Standard)?;
        let q = &flip * &b.e_basis;
        return Ok(SelfDualBases::from_frame(q, b.lambdas, b.mus));
    }
    let st = singer_thorpe_blocks(r)?;
    let (lambdas, p_plus) = so3_eigenframe(&st.w_plus)?;
    let (mus, p_minus) = so3_eigenframe(&st.w_minus)?;
    let (om, et) = (standard_omega(), standard_eta());
    let rotate = |forms: &[TwoForm; 3], p: &DMatrix<f64>| -> [TwoForm; 3] {
        std::array::from_fn(|a| {
            (0..3).fold(TwoForm::zeros(4), |acc, b| acc.add(&forms[b].scale(p[(b, a)])).unwrap())
        })
    };
    let omega = rotate(&om, &p_plus);
    let eta = rotate(&et, &p_minus);

    // e₁ solves (ω^α - η^α)ᵀ e₁ = 0; the rest follow from e_{α+1} = (ω^α)ᵀ e₁.
    let mut gram = DMatrix::<f64>::zeros(4, 4);
    for a in 0..3 {
        let d = omega[a].matrix() - eta[a].matrix();
        gram += &d * d.transpose();
    }
    let (_, vecs) = spectrum_with_vectors(&gram)?;
    let mut e1 = vecs.column(0).into_owned();
    let lead = e1.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() + 1e-12 { x } else { a });
    if lead < 0.0 {
        e1 = -e1;
    }
    let mut q = DMatrix::zeros(4, 4);
    q.set_column(0, &e1);
    for a in 0..3 {
        q.set_column(a + 1, &(omega[a].matrix().transpose() * &e1));
    }
    let bases = SelfDualBases::from_frame(q, lambdas, mus);
    let drift = (0..3)
        .map(|a| {
            (bases.omega[a].matrix() - omega[a].matrix())
                .amax()
                .max((bases.eta[a].matrix() - eta[a].matrix()).amax())
        })
        .fold(0.0, f64::max);
    if drift > 1e-8 {
        return Err(CurvError::InvalidBases(format!(
            "no common frame for the eigenform triples (drift {drift:e})"
        )));
    }
    Ok(bases)
}

/// Entry of the multiplication table of the `h` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HProduct {
    Identity,
    /// The product is a skew-symmetric matrix.
    Skew,
    /// `sign · h^index` with a 1-based index.
    Basis(i8, usize),
}

use HProduct::{Basis as B, Identity as I, Skew as X};

/// `h^α h^β` for `α, β = 1..9` (row, column; 0-based array positions).
pub const H_PRODUCT_TABLE: [[HProduct; 9]; 9] = [
    [I, X, X, X, B(-1, 9), B(1, 8), X, B(1, 6), B(-1, 5)],
    [X, I, X, B(1, 9), X, B(-1, 7), B(-1, 6), X, B(1, 4)],
    [X, X, I, B(-1, 8), B(1, 7), X, B(1, 5), B(-1, 4), X],
    [X, B(1, 9), B(-1, 8), I, X, X, X, B(-1, 3), B(1, 2)],
    [B(-1, 9), X, B(1, 7), X, I, X, B(1, 3), X, B(-1, 1)],
    [B(1, 8), B(-1, 7), X, X, X, I, B(-1, 2), B(1, 1), X],
    [X, B(-1, 6), B(1, 5), X, B(1, 3), B(-1, 2), I, X, X],
    [B(1, 6), X, B(-1, 4), B(-1, 3), X, B(1, 1), X, I, X],
    [B(-1, 5), B(1, 4), X, B(1, 2), B(-1, 1), X, X, X, I],
];

/// The nine trace-free tensors `h^(α,β) = ω^α η^β`, stored at `3(α-1)+(β-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HBasis {
    pub h: [SymTwoTensor; 9],
}

impl HBasis {
    /// Largest deviation from [`H_PRODUCT_TABLE`].
    pub fn product_table_residual(&self) -> f64 {
        let id = DMatrix::<f64>::identity(4, 4);
        let mut worst: f64 = 0.0;
        for a in 0..9 {
            for b in 0..9 {
                let p = self.h[a].product(&self.h[b]);
                let dev = match H_PRODUCT_TABLE[a][b] {
                    HProduct::Identity => (p - &id).amax(),
                    HProduct::Skew => (&p + p.transpose()).amax(),
                    HProduct::Basis(s, k) => (p - self.h[k - 1].matrix() * f64::from(s)).amax(),
                };
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Coordinates `ε_γ = ⟨E, h^γ⟩`.
    pub fn coordinates(&self, e: &SymTwoTensor) -> Result<[f64; 9]> {
        let mut eps = [0.0; 9];
        for (g, h) in self.h.iter().enumerate() {
            eps[g] = e.inner(h)?;
        }
        Ok(eps)
    }

    /// `¼ Σ ε_γ h^γ`.
    pub fn expand(&self, eps: &[f64; 9]) -> SymTwoTensor {
        self.h
            .iter()
            .zip(eps)
            .fold(SymTwoTensor::zeros(4), |acc, (h, &c)| acc.add(&h.scale(0.25 * c)).unwrap())
    }
}

pub fn h_basis(bases: &SelfDualBases) -> Result<HBasis> {
    bases.validate(1e-9)?;
    let h = std::array::from_fn(|idx| {
        let (a, b) = (idx / 3, idx % 3);
        SymTwoTensor::from_symmetric_unchecked(bases.omega[a].compose(&bases.eta[b]))
    });
    let hb = HBasis { h };
    for h in &hb.h {
        let m = h.matrix();
        if (m - m.transpose()).amax() > 1e-9 {
            return Err(CurvError::InvalidBases("ω^α η^β is not symmetric".into()));
        }
    }
    Ok(hb)
}
