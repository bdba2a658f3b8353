//! Isotropic curvature: the quadratic
//! `R₁₃₁₃ + λ²R₁₄₁₄ + μ²R₂₃₂₃ + λ²μ²R₂₄₂₄ − 2λμR₁₂₃₄`
//! on orthonormal 4-frames, its minimization, and the closed form in
//! dimension 4.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curvature::{wedge_coordinates, CurvatureTensor};
use crate::error::{CurvError, Result};
use crate::four_dim::singer_thorpe_blocks;
use crate::search::{minimize_over_frames, SearchConfig};
use crate::spectrum::spectrum;

const FRAME_TOL: f64 = 1e-10;

/// Four ordered orthonormal vectors in `Rⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameQuadruple {
    n: usize,
    vectors: [Vec<f64>; 4],
}

impl FrameQuadruple {
    pub fn new(vectors: [Vec<f64>; 4]) -> Result<Self> {
        let n = vectors[0].len();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(CurvError::InvalidFrame { defect: f64::INFINITY });
        }
        let mut defect = 0.0f64;
        for a in 0..4 {
            for b in a..4 {
                let dot: f64 = vectors[a].iter().zip(&vectors[b]).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                defect = defect.max((dot - want).abs());
            }
        }
        if !(defect <= FRAME_TOL) {
            return Err(CurvError::InvalidFrame { defect });
        }
        Ok(Self { n, vectors })
    }

    /// The first four standard basis vectors of `Rⁿ`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(CurvError::UnsupportedDimension { n, requirement: "n >= 4" });
        }
        Ok(Self::from_columns(&DMatrix::identity(n, n)))
    }

    /// Leading four columns of an orthogonal matrix (not re-validated).
    fn from_columns(q: &DMatrix<f64>) -> Self {
        Self {
            n: q.nrows(),
            vectors: std::array::from_fn(|a| q.column(a).iter().copied().collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<f64>; 4] {
        &self.vectors
    }

    /// Frame with the vectors permuted: `permuted([1,0,3,2])` is `(e₂,e₁,e₄,e₃)`.
    pub fn permuted(&self, order: [usize; 4]) -> Self {
        Self {
            n: self.n,
            vectors: order.map(|i| self.vectors[i].clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsotropicMode {
    #[serde(rename = "PIC")]
    Pic,
    #[serde(rename = "PIC1")]
    Pic1,
    #[serde(rename = "PIC2")]
    Pic2,
}

impl IsotropicMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pic => "PIC",
            Self::Pic1 => "PIC1",
            Self::Pic2 => "PIC2",
        }
    }
}

impl std::str::FromStr for IsotropicMode {
    type Err = CurvError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pic" => Ok(Self::Pic),
            "pic1" => Ok(Self::Pic1),
            "pic2" => Ok(Self::Pic2),
            _ => Err(CurvError::BadParameters(format!("unknown isotropic mode {s:?}"))),
        }
    }
}

/// Result of a frame search. `minimum_value` is an upper bound for the true
/// infimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IsotropicReport {
    pub mode: IsotropicMode,
    pub minimum_value: f64,
    pub argmin_frame: FrameQuadruple,
    pub argmin_params: (f64, f64),
    pub restarts: usize,
    pub converged: bool,
}

/// Frame components entering the quadratic.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Terms {
    r1313: f64,
    r1414: f64,
    r2323: f64,
    r2424: f64,
    r1234: f64,
}

impl Terms {
    fn new(r: &CurvatureTensor, e: [&[f64]; 4]) -> Self {
        let m = r.pair_matrix();
        let w = |a: usize, b: usize| wedge_coordinates(e[a], e[b]);
        let sec = |a: usize, b: usize| {
            let x = w(a, b);
            x.dot(&(m * &x))
        };
        let w12 = w(0, 1);
        let w34 = w(2, 3);
        Self {
            r1313: sec(0, 2),
            r1414: sec(0, 3),
            r2323: sec(1, 2),
            r2424: sec(1, 3),
            r1234: w12.dot(&(m * &w34)),
        }
    }

    fn of_matrix(r: &CurvatureTensor, q: &DMatrix<f64>) -> Self {
        let cols: Vec<Vec<f64>> = (0..4).map(|a| q.column(a).iter().copied().collect()).collect();
        Self::new(r, [&cols[0], &cols[1], &cols[2], &cols[3]])
    }

    fn value(&self, l: f64, m: f64) -> f64 {
        self.r1313 + l * l * self.r1414 + m * m * self.r2323 + l * l * m * m * self.r2424
            - 2.0 * l * m * self.r1234
    }

    /// `argmin_{λ∈[0,1]}` for fixed `μ`; the quadratic in λ is
    /// `(R₁₄₁₄ + μ²R₂₄₂₄)λ² − 2μR₁₂₃₄ λ + const`.
    fn best_lambda(&self, m: f64) -> f64 {
        let a = self.r1414 + m * m * self.r2424;
        let b = -2.0 * m * self.r1234;
        let mut best = (self.value(0.0, m), 0.0);
        for l in [1.0, if a > 0.0 { -b / (2.0 * a) } else { -1.0 }] {
            if (0.0..=1.0).contains(&l) {
                let v = self.value(l, m);
                if v < best.0 {
                    best = (v, l);
                }
            }
        }
        best.1
    }

    fn minimize(&self, mode: IsotropicMode, grid: usize) -> (f64, f64, f64) {
        match mode {
            IsotropicMode::Pic => (self.value(1.0, 1.0), 1.0, 1.0),
            IsotropicMode::Pic1 => {
                let l = self.best_lambda(1.0);
                (self.value(l, 1.0), l, 1.0)
            }
            IsotropicMode::Pic2 => {
                let g = |m: f64| {
                    let l = self.best_lambda(m);
                    (self.value(l, m), l)
                };
                let steps = grid.max(2) - 1;
                let h = 1.0 / steps as f64;
                let (i_best, _) = (0..=steps)
                    .map(|i| (i, g(i as f64 * h).0))
                    .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
                let mut lo = (i_best as f64 - 1.0).max(0.0) * h;
                let mut hi = (i_best as f64 + 1.0).min(steps as f64) * h;
                let phi = 0.5 * (5f64.sqrt() - 1.0);
                let mut c = hi - phi * (hi - lo);
                let mut d = lo + phi * (hi - lo);
                let (mut fc, mut fd) = (g(c).0, g(d).0);
                while hi - lo > 1e-12 {
                    if fc <= fd {
                        hi = d;
                        d = c;
                        fd = fc;
                        c = hi - phi * (hi - lo);
                        fc = g(c).0;
                    } else {
                        lo = c;
                        c = d;
                        fc = fd;
                        d = lo + phi * (hi - lo);
                        fd = g(d).0;
                    }
                }
                let mut best = (f64::INFINITY, 0.0, 0.0);
                for m in [0.5 * (lo + hi), i_best as f64 * h] {
                    let (v, l) = g(m);
                    if v < best.0 {
                        best = (v, l, m);
                    }
                }
                best
            }
        }
    }
}

/// Evaluates the isotropic quadratic on a frame.
pub fn isotropic_quadratic(r: &CurvatureTensor, frame: &FrameQuadruple, lambda: f64, mu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) || !(0.0..=1.0).contains(&mu) {
        return Err(CurvError::BadParameterRange { lambda, mu });
    }
    if frame.n != r.n() {
        return Err(CurvError::DimensionMismatch { left: frame.n, right: r.n() });
    }
    let v = &frame.vectors;
    Ok(Terms::new(r, [&v[0], &v[1], &v[2], &v[3]]).value(lambda, mu))
}

pub fn min_isotropic(r: &CurvatureTensor, mode: IsotropicMode, restarts: usize, seed: u64) -> Result<IsotropicReport> {
    let config = SearchConfig::default().with_restarts(restarts).with_seed(seed);
    min_isotropic_with(r, mode, &config)
}

pub fn min_isotropic_with(r: &CurvatureTensor, mode: IsotropicMode, config: &SearchConfig) -> Result<IsotropicReport> {
    let n = r.n();
    if n < 4 {
        return Err(CurvError::UnsupportedDimension { n, requirement: "isotropic curvature needs n >= 4" });
    }
    let grid = config.parameter_grid;
    let out = minimize_over_frames(n, 4, config, |q| Terms::of_matrix(r, q).minimize(mode, grid).0);
    let (value, l, m) = Terms::of_matrix(r, &out.frame).minimize(mode, grid);
    Ok(IsotropicReport {
        mode,
        minimum_value: value,
        argmin_frame: FrameQuadruple::from_columns(&out.frame),
        argmin_params: (l, m),
        restarts: config.restarts.max(1),
        converged: out.converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NicClass {
    #[serde(rename = "PIC")]
    Pic,
    #[serde(rename = "NIC-only")]
    NicOnly,
    #[serde(rename = "fails")]
    Fails,
}

impl NicClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pic => "PIC",
            Self::NicOnly => "NIC-only",
            Self::Fails => "fails",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NicCheck {
    pub class: NicClass,
    /// `S/3 − 2 λ_max(W⁺)`.
    pub self_dual_minimum: f64,
    /// `S/3 − 2 λ_max(W⁻)`.
    pub anti_self_dual_minimum: f64,
    pub minimum: f64,
}

/// Exact isotropic minimum in dimension 4. The traceless Ricci part drops out
/// of the quadratic, and on each half `Λ²±` the minimum over frames is
/// `S/3 − 2 λ_max(W±)`.
pub fn nic_check_dim4(r: &CurvatureTensor, tolerance: f64) -> Result<NicCheck> {
    let st = singer_thorpe_blocks(r)?;
    let top = |w: &DMatrix<f64>| -> Result<f64> { Ok(*spectrum(w)?.eigenvalues.last().expect("3x3")) };
    let plus = st.scalar / 3.0 - 2.0 * top(&st.w_plus)?;
    let minus = st.scalar / 3.0 - 2.0 * top(&st.w_minus)?;
    let minimum = plus.min(minus);
    let class = if minimum > tolerance {
        NicClass::Pic
    } else if minimum >= -tolerance {
        NicClass::NicOnly
    } else {
        NicClass::Fails
    };
    Ok(NicCheck {
        class,
        self_dual_minimum: plus,
        anti_self_dual_minimum: minus,
        minimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::constant_curvature;

    #[test]
    fn sphere_values() {
        let r = constant_curvature(5, 1.0);
        let f = FrameQuadruple::standard(5).unwrap();
        assert!((isotropic_quadratic(&r, &f, 1.0, 1.0).unwrap() - 4.0).abs() < 1e-14);
        assert!((isotropic_quadratic(&r, &f, 1.0, 0.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn bad_inputs() {
        let r = constant_curvature(4, 1.0);
        let f = FrameQuadruple::standard(4).unwrap();
        assert!(matches!(
            isotropic_quadratic(&r, &f, 1.5, 0.0),
            Err(CurvError::BadParameterRange { .. })
        ));
        let skewed = FrameQuadruple::new([
            vec![1.0, 0.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(matches!(skewed, Err(CurvError::InvalidFrame { .. })));
        assert!(min_isotropic(&constant_curvature(3, 1.0), IsotropicMode::Pic, 1, 0).is_err());
    }

    #[test]
    fn pic1_at_lambda_zero_is_two_sectionals() {
        let t = Terms { r1313: 0.3, r1414: 5.0, r2323: -0.7, r2424: 2.0, r1234: 0.1 };
        assert!((t.value(0.0, 1.0) - (0.3 - 0.7)).abs() < 1e-15);
    }

    #[test]
    fn parameter_minimization_is_exact() {
        let t = Terms { r1313: 1.0, r1414: 1.0, r2323: 1.0, r2424: 1.0, r1234: 1.5 };
        // PIC1: 2λ² − 3λ + 2 → λ = ¾, value ⅞
        let (v, l, _) = t.minimize(IsotropicMode::Pic1, 33);
        assert!((v - 0.875).abs() < 1e-15 && (l - 0.75).abs() < 1e-15);
        let t = Terms { r1414: 0.0, r2424: 0.5, ..t };
        // ½λ² − 3λ + 2 has its vertex outside [0,1]: λ = 1, value −½
        let (v, l, _) = t.minimize(IsotropicMode::Pic1, 33);
        assert!((v + 0.5).abs() < 1e-15 && l == 1.0);
        let t = Terms { r1313: 1.0, r1414: 2.0, r2323: 1.0, r2424: 0.0, r1234: 1.0 };
        // PIC1: 2λ² − 2λ + 2 → λ = ½, value 1.5
        let (v, l, _) = t.minimize(IsotropicMode::Pic1, 33);
        assert!((v - 1.5).abs() < 1e-15 && (l - 0.5).abs() < 1e-15);
        // PIC2 brute force over a fine grid
        let t = Terms { r1313: 0.2, r1414: 1.0, r2323: 0.8, r2424: -0.3, r1234: 0.9 };
        let (v, _, _) = t.minimize(IsotropicMode::Pic2, 33);
        let brute = (0..=400)
            .flat_map(|i| (0..=400).map(move |j| (i as f64 / 400.0, j as f64 / 400.0)))
            .map(|(l, m)| t.value(l, m))
            .fold(f64::INFINITY, f64::min);
        assert!(v <= brute + 1e-12 && v > brute - 1e-4, "{v} vs {brute}");
    }

    #[test]
    fn round_sphere_search_and_closed_form() {
        let r = constant_curvature(4, 1.0);
        let rep = min_isotropic(&r, IsotropicMode::Pic, 2, 1).unwrap();
        assert!((rep.minimum_value - 4.0).abs() < 1e-9);
        assert_eq!(rep.argmin_params, (1.0, 1.0));
        let nic = nic_check_dim4(&r, 1e-9).unwrap();
        assert_eq!(nic.class, NicClass::Pic);
        assert!((nic.self_dual_minimum - 4.0).abs() < 1e-12);
    }
}
