//! Algebraic curvature tensors.
//!
//! A tensor is stored once per index orbit: the symmetric `N×N` matrix over
//! ordered pairs `i < j` (lexicographic), keeping only `(ij) ≤ (kl)`. The full
//! `n⁴` array is expanded from that storage, so the antisymmetries and the
//! pair symmetry hold exactly; only the first Bianchi identity needs a
//! tolerance.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{CurvError, Result};
use crate::forms::SymTwoTensor;

/// Default tolerance for validating user-supplied data.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Number of ordered pairs `i < j` in dimension `n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of the pair `i < j` (0-based).
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `i < j` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// Coordinates of `x ∧ y` in the basis `{e^i ∧ e^j}_{i<j}`.
pub fn wedge_coordinates(x: &[f64], y: &[f64]) -> DVector<f64> {
    let n = x.len();
    let mut w = DVector::zeros(pair_count(n));
    let mut p = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            w[p] = x[i] * y[j] - x[j] * y[i];
            p += 1;
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    /// Symmetric pair matrix `R_{(ij)(kl)}`, `i<j`, `k<l`.
    pairs: DMatrix<f64>,
    dense: Vec<f64>,
    tolerance: f64,
}

impl CurvatureTensor {
    pub fn zero(n: usize) -> Self {
        let np = pair_count(n);
        Self::from_parts(n, DMatrix::zeros(np, np), DEFAULT_TOLERANCE)
    }

    /// Builds a tensor from its matrix on `Λ²` in the basis `{e^i∧e^j}_{i<j}`.
    /// The matrix is symmetrized; the Bianchi identity is then checked.
    pub fn from_pair_matrix(n: usize, m: &DMatrix<f64>, tolerance: f64) -> Result<Self> {
        let np = pair_count(n);
        if m.nrows() != np || m.ncols() != np {
            return Err(CurvError::DimensionMismatch {
                left: m.nrows(),
                right: np,
            });
        }
        let sym = 0.5 * (m + m.transpose());
        let t = Self::from_parts(n, sym, tolerance);
        t.validate()?;
        Ok(t)
    }

    /// Builds a tensor from a function of four 0-based indices that is assumed
    /// to have the curvature symmetries. Each orbit is averaged over its eight
    /// images, so small asymmetries from rounding are removed.
    pub fn from_fn(
        n: usize,
        tolerance: f64,
        f: impl Fn(usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let ps = pairs(n);
        let np = ps.len();
        let mut m = DMatrix::zeros(np, np);
        for (a, &(i, j)) in ps.iter().enumerate() {
            for (b, &(k, l)) in ps.iter().enumerate().skip(a) {
                let v = (f(i, j, k, l) - f(j, i, k, l) - f(i, j, l, k) + f(j, i, l, k)
                    + f(k, l, i, j)
                    - f(l, k, i, j)
                    - f(k, l, j, i)
                    + f(l, k, j, i))
                    / 8.0;
                m[(a, b)] = v;
                m[(b, a)] = v;
            }
        }
        let t = Self::from_parts(n, m, tolerance);
        t.validate()?;
        Ok(t)
    }

    /// Projects a pair-symmetric tensor (given by its matrix on `Λ²`) onto the
    /// curvature tensors by removing its totally antisymmetric part
    /// `⅓(T_ijkl + T_iklj + T_iljk)`.
    pub fn bianchi_projection(n: usize, m: &DMatrix<f64>, tolerance: f64) -> Result<Self> {
        let np = pair_count(n);
        if m.nrows() != np || m.ncols() != np {
            return Err(CurvError::DimensionMismatch {
                left: m.nrows(),
                right: np,
            });
        }
        let t = Self::from_parts(n, 0.5 * (m + m.transpose()), tolerance);
        Self::from_fn(n, tolerance, |i, j, k, l| {
            let cyc = t.get(i, j, k, l) + t.get(i, k, l, j) + t.get(i, l, j, k);
            t.get(i, j, k, l) - cyc / 3.0
        })
    }

    fn from_parts(n: usize, pairs: DMatrix<f64>, tolerance: f64) -> Self {
        let mut dense = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (p, sp) = oriented_pair(n, i, j);
                for k in 0..n {
                    for l in 0..n {
                        if k == l {
                            continue;
                        }
                        let (q, sq) = oriented_pair(n, k, l);
                        dense[((i * n + j) * n + k) * n + l] = sp * sq * pairs[(p, q)];
                    }
                }
            }
        }
        Self {
            n,
            pairs,
            dense,
            tolerance,
        }
    }

    fn validate(&self) -> Result<()> {
        let residual = self.bianchi_residual();
        if residual > self.tolerance || !residual.is_finite() {
            return Err(CurvError::BianchiViolation {
                residual,
                tolerance: self.tolerance,
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `R_{ijkl}` with 0-based indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n;
        self.dense[((i * n + j) * n + k) * n + l]
    }

    /// The expanded `n⁴` component array, row-major in `(i, j, k, l)`.
    pub fn components(&self) -> &[f64] {
        &self.dense
    }

    /// The matrix of `R` on two-forms in the basis `{e^i∧e^j}_{i<j}`.
    pub fn pair_matrix(&self) -> &DMatrix<f64> {
        &self.pairs
    }

    /// Canonical orbit representatives `(i<j, k<l, (ij) ≤ (kl))`, 0-based,
    /// with their values.
    pub fn canonical_entries(&self) -> Vec<([usize; 4], f64)> {
        let ps = pairs(self.n);
        let mut out = Vec::with_capacity(ps.len() * (ps.len() + 1) / 2);
        for (a, &(i, j)) in ps.iter().enumerate() {
            for (b, &(k, l)) in ps.iter().enumerate().skip(a) {
                out.push(([i, j, k, l], self.pairs[(a, b)]));
            }
        }
        out
    }

    /// `max |R_{ijkl} + R_{iklj} + R_{iljk}|`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_parts(self.n, &self.pairs * c, self.tolerance)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_parts(
            self.n,
            &self.pairs + &other.pairs,
            self.tolerance,
        ))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_parts(
            self.n,
            &self.pairs - &other.pairs,
            self.tolerance,
        ))
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok((&self.pairs - &other.pairs).amax())
    }

    pub fn max_abs(&self) -> f64 {
        self.pairs.amax()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(CurvError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Components in the orthonormal basis given by the columns of `q`:
    /// `R'_{abcd} = R(q_a, q_b, q_c, q_d)`.
    pub fn rotated(&self, q: &DMatrix<f64>) -> Result<Self> {
        let n = self.n;
        if q.nrows() != n || q.ncols() != n {
            return Err(CurvError::DimensionMismatch {
                left: q.nrows(),
                right: n,
            });
        }
        let ps = pairs(n);
        let lift = DMatrix::from_fn(ps.len(), ps.len(), |p, a| {
            let (i, j) = ps[p];
            let (c, d) = ps[a];
            q[(i, c)] * q[(j, d)] - q[(i, d)] * q[(j, c)]
        });
        let m = lift.transpose() * &self.pairs * &lift;
        let m = 0.5 * (&m + m.transpose());
        Ok(Self::from_parts(n, m, self.tolerance))
    }

    /// `R(x, y, z, w)` for arbitrary vectors.
    pub fn evaluate(&self, x: &[f64], y: &[f64], z: &[f64], w: &[f64]) -> f64 {
        let a = wedge_coordinates(x, y);
        let b = wedge_coordinates(z, w);
        a.dot(&(&self.pairs * b))
    }

    pub fn ricci(&self) -> SymTwoTensor {
        ricci_and_scalar(self).0
    }

    pub fn scalar(&self) -> f64 {
        ricci_and_scalar(self).1
    }
}

/// Pair index and orientation sign for an ordered pair `i != j`.
#[inline]
fn oriented_pair(n: usize, i: usize, j: usize) -> (usize, f64) {
    if i < j {
        (pair_index(n, i, j), 1.0)
    } else {
        (pair_index(n, j, i), -1.0)
    }
}

/// Builds a curvature tensor from components given on index orbits.
///
/// Indices are 1-based. Every supplied quadruple is mapped to its canonical
/// orbit representative; orbits not mentioned are zero. Two supplied values
/// for the same orbit must agree within `tolerance`, and quadruples with a
/// repeated index in either pair must be zero.
pub fn make_curvature(
    n: usize,
    entries: impl IntoIterator<Item = ([usize; 4], f64)>,
    tolerance: f64,
) -> Result<CurvatureTensor> {
    let np = pair_count(n);
    let mut seen: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (index, value) in entries {
        if index.iter().any(|&x| x == 0 || x > n) {
            return Err(CurvError::IndexOutOfRange { index, n });
        }
        let [i, j, k, l] = index.map(|x| x - 1);
        if i == j || k == l {
            if value.abs() > tolerance {
                return Err(CurvError::SymmetryConflict {
                    orbit: index,
                    first: 0.0,
                    second: value,
                });
            }
            continue;
        }
        let (p, sp) = oriented_pair(n, i, j);
        let (q, sq) = oriented_pair(n, k, l);
        let key = (p.min(q), p.max(q));
        let v = sp * sq * value;
        match seen.get(&key) {
            Some(&prev) if (prev - v).abs() > tolerance => {
                let ps = pairs(n);
                let (a, b) = ps[key.0];
                let (c, d) = ps[key.1];
                return Err(CurvError::SymmetryConflict {
                    orbit: [a + 1, b + 1, c + 1, d + 1],
                    first: prev,
                    second: v,
                });
            }
            Some(_) => {}
            None => {
                seen.insert(key, v);
            }
        }
    }
    let mut m = DMatrix::zeros(np, np);
    for ((p, q), v) in seen {
        m[(p, q)] = v;
        m[(q, p)] = v;
    }
    CurvatureTensor::from_pair_matrix(n, &m, tolerance)
}

/// `(A∘B)_{ijkl} = A_{ik}B_{jl} + A_{jl}B_{ik} - A_{il}B_{jk} - A_{jk}B_{il}`.
pub fn kulkarni_nomizu(a: &SymTwoTensor, b: &SymTwoTensor) -> Result<CurvatureTensor> {
    if a.n() != b.n() {
        return Err(CurvError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let (a, b) = (a.matrix(), b.matrix());
    let ps = pairs(a.nrows());
    let m = DMatrix::from_fn(ps.len(), ps.len(), |p, q| {
        let (i, j) = ps[p];
        let (k, l) = ps[q];
        a[(i, k)] * b[(j, l)] + a[(j, l)] * b[(i, k)] - a[(i, l)] * b[(j, k)] - a[(j, k)] * b[(i, l)]
    });
    CurvatureTensor::from_pair_matrix(a.nrows(), &m, DEFAULT_TOLERANCE)
}

/// Constant curvature `κ`: `R = (κ/2) g∘g`, i.e. `R_{ijkl} = κ(δ_ik δ_jl - δ_il δ_jk)`.
pub fn constant_curvature(n: usize, kappa: f64) -> CurvatureTensor {
    let np = pair_count(n);
    CurvatureTensor::from_parts(n, DMatrix::identity(np, np) * kappa, DEFAULT_TOLERANCE)
}

/// Ricci tensor `Rc_{ik} = Σ_j R_{ijkj}` and scalar curvature `tr Rc`.
///
/// With this sign the round sphere of curvature `κ` has `Rc = (n-1)κ g`.
pub fn ricci_and_scalar(r: &CurvatureTensor) -> (SymTwoTensor, f64) {
    let n = r.n();
    let rc = SymTwoTensor::from_fn(n, |i, k| (0..n).map(|j| r.get(i, j, k, j)).sum());
    let s = rc.trace();
    (rc, s)
}

/// Sectional curvature of the plane spanned by `u` and `v`.
pub fn sectional(r: &CurvatureTensor, u: &[f64], v: &[f64]) -> Result<f64> {
    let n = r.n();
    if u.len() != n || v.len() != n {
        return Err(CurvError::DimensionMismatch {
            left: u.len().max(v.len()),
            right: n,
        });
    }
    let w = wedge_coordinates(u, v);
    let area2 = w.norm_squared();
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if area2.sqrt() <= r.tolerance() * (uu * vv).sqrt().max(f64::MIN_POSITIVE) || area2 == 0.0 {
        return Err(CurvError::DegeneratePlane);
    }
    Ok(w.dot(&(r.pair_matrix() * &w)) / area2)
}
