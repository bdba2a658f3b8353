//! Model curvature tensors and seeded random ensembles.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::curvature::{constant_curvature, kulkarni_nomizu, pair_count, CurvatureTensor, DEFAULT_TOLERANCE};
use crate::decomposition::{decompose, recombine};
use crate::error::{CurvError, Result};
use crate::forms::SymTwoTensor;
use crate::four_dim::{standard_eta, standard_omega, weyl_from_eigenforms};
use crate::search::random_orthogonal;
use crate::second_kind::{second_kind_matrix, BasisConvention};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "camelCase")]
pub enum ModelSpec {
    /// `R = (κ/2) g∘g` in dimension 4.
    RoundSphere { kappa: f64 },
    /// `W⁻ = 0`, `E = 0`, `W⁺` eigenvalues `(S/6, −S/12, −S/12)`.
    FubiniStudy { scalar: f64 },
    /// `E = 0`, `W⁺` and `W⁻` both `(S/6, −S/12, −S/12)`.
    ProductSpheres { scalar: f64 },
    ConstantCurvature { n: usize, kappa: f64 },
}

impl ModelSpec {
    pub const NAMES: [&'static str; 4] = ["roundSphere", "fubiniStudy", "productSpheres", "constantCurvature"];

    /// Parses a model name (camelCase or kebab-case) with optional parameters
    /// `kappa`, `scalar`, `n`. Missing parameters take the standard values:
    /// `κ = 1`, `S = 8` for `CP²`, `S = 4` for `S²×S²`, `n = 4`.
    pub fn from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        let canonical: String = name.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_ascii_lowercase();
        let allowed: &[&str] = match canonical.as_str() {
            "roundsphere" => &["kappa"],
            "fubinistudy" | "cp2" => &["scalar"],
            "productspheres" | "s2xs2" => &["scalar"],
            "constantcurvature" => &["n", "kappa"],
            _ => return Err(CurvError::UnknownModel(name.to_string())),
        };
        if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CurvError::BadParameters(format!("model {name} takes no parameter {bad:?}")));
        }
        let get = |k: &str, default: f64| params.get(k).copied().unwrap_or(default);
        let spec = match canonical.as_str() {
            "roundsphere" => Self::RoundSphere { kappa: get("kappa", 1.0) },
            "fubinistudy" | "cp2" => Self::FubiniStudy { scalar: get("scalar", 8.0) },
            "productspheres" | "s2xs2" => Self::ProductSpheres { scalar: get("scalar", 4.0) },
            _ => {
                let n = get("n", 4.0);
                if n.fract() != 0.0 || !(2.0..=64.0).contains(&n) {
                    return Err(CurvError::BadParameters(format!("n = {n} must be an integer in 2..=64")));
                }
                Self::ConstantCurvature { n: n as usize, kappa: get("kappa", 1.0) }
            }
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::RoundSphere { .. } => "roundSphere",
            Self::FubiniStudy { .. } => "fubiniStudy",
            Self::ProductSpheres { .. } => "productSpheres",
            Self::ConstantCurvature { .. } => "constantCurvature",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Self::ConstantCurvature { n, .. } => n,
            _ => 4,
        }
    }

    fn check(&self) -> Result<()> {
        let value = match *self {
            Self::RoundSphere { kappa } | Self::ConstantCurvature { kappa, .. } => kappa,
            Self::FubiniStudy { scalar } | Self::ProductSpheres { scalar } => scalar,
        };
        if !value.is_finite() {
            return Err(CurvError::BadParameters(format!("non-finite parameter {value}")));
        }
        if let Self::ConstantCurvature { n, .. } = *self {
            if n < 2 {
                return Err(CurvError::BadParameters(format!("dimension {n} < 2")));
            }
        }
        Ok(())
    }

    /// Block data for the four-dimensional models.
    pub fn blocks(&self) -> Option<BlockData> {
        let einstein = |plus: [f64; 3], minus: [f64; 3], scalar: f64| BlockData {
            w_plus_eigenvalues: plus,
            w_minus_eigenvalues: minus,
            traceless_ricci: SymTwoTensor::zeros(4),
            scalar,
        };
        let top = |s: f64| [s / 6.0, -s / 12.0, -s / 12.0];
        match *self {
            Self::RoundSphere { kappa } => Some(einstein([0.0; 3], [0.0; 3], 12.0 * kappa)),
            Self::FubiniStudy { scalar } => Some(einstein(top(scalar), [0.0; 3], scalar)),
            Self::ProductSpheres { scalar } => Some(einstein(top(scalar), top(scalar), scalar)),
            Self::ConstantCurvature { n: 4, kappa } => Some(einstein([0.0; 3], [0.0; 3], 12.0 * kappa)),
            Self::ConstantCurvature { .. } => None,
        }
    }
}

pub fn build_model(spec: &ModelSpec) -> Result<CurvatureTensor> {
    spec.check()?;
    match *spec {
        ModelSpec::RoundSphere { kappa } => Ok(constant_curvature(4, kappa)),
        ModelSpec::ConstantCurvature { n, kappa } => Ok(constant_curvature(n, kappa)),
        _ => spec.blocks().expect("four-dimensional model").to_tensor(),
    }
}

/// Dimension-4 block description: `W±` eigenvalues on the standard
/// `ω^α`, `η^β` forms, the trace-free Ricci tensor and the scalar curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockData {
    pub w_plus_eigenvalues: [f64; 3],
    pub w_minus_eigenvalues: [f64; 3],
    pub traceless_ricci: SymTwoTensor,
    pub scalar: f64,
}

impl BlockData {
    /// `R = W + ½ E∘g + (S/24) g∘g` with `W` assembled from the eigenvalues.
    pub fn to_tensor(&self) -> Result<CurvatureTensor> {
        if self.traceless_ricci.n() != 4 {
            return Err(CurvError::DimensionMismatch { left: self.traceless_ricci.n(), right: 4 });
        }
        for v in [self.w_plus_eigenvalues, self.w_minus_eigenvalues] {
            let trace: f64 = v.iter().sum();
            if trace.abs() > 1e-9 * v.iter().fold(1.0f64, |m, x| m.max(x.abs())) {
                return Err(CurvError::NotTraceFree { trace });
            }
        }
        let e = &self.traceless_ricci;
        if e.trace().abs() > 1e-9 * e.norm().max(1.0) {
            return Err(CurvError::NotTraceFree { trace: e.trace() });
        }
        let w = weyl_from_eigenforms(&standard_omega(), &standard_eta(), self.w_plus_eigenvalues, self.w_minus_eigenvalues)?;
        recombine(&w, e, self.scalar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EnsembleKind {
    RawCurvature,
    Einstein4,
    /// Shifted so the `k` smallest orthonormal second-kind eigenvalues sum
    /// to a value in `(0, 0.1]`.
    KPositiveConditioned(usize),
}

/// Deterministic stream of random curvature tensors; item `i` depends only on
/// `(seed, n, kind, i)`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    seed: u64,
    n: usize,
    kind: EnsembleKind,
    next: u64,
}

pub fn random_ensemble(seed: u64, n: usize, kind: EnsembleKind) -> Result<Ensemble> {
    Ensemble::new(seed, n, kind)
}

impl Ensemble {
    pub fn new(seed: u64, n: usize, kind: EnsembleKind) -> Result<Self> {
        if !(4..=8).contains(&n) {
            return Err(CurvError::BadDimension { n, range: "4..=8" });
        }
        match kind {
            EnsembleKind::Einstein4 if n != 4 => return Err(CurvError::BadDimension { n, range: "4" }),
            EnsembleKind::KPositiveConditioned(k) => {
                let len = (n - 1) * (n + 2) / 2;
                if k == 0 || k > len {
                    return Err(CurvError::BadK { k, len });
                }
            }
            _ => {}
        }
        Ok(Self { seed, n, kind, next: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn item(&self, index: u64) -> Result<CurvatureTensor> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        match self.kind {
            EnsembleKind::RawCurvature => raw(self.n, true, &mut rng),
            EnsembleKind::Einstein4 => raw(4, false, &mut rng),
            EnsembleKind::KPositiveConditioned(k) => {
                let base = raw(self.n, true, &mut rng)?;
                let target = rng.random_range(0.005..=0.1);
                k_conditioned(&base, k, target)
            }
        }
    }
}

impl Iterator for Ensemble {
    type Item = CurvatureTensor;

    fn next(&mut self) -> Option<CurvatureTensor> {
        let item = self.item(self.next).expect("ensemble items are valid by construction");
        self.next += 1;
        Some(item)
    }
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn trace_free_triple(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let v = [normal(rng), normal(rng), normal(rng)];
    let mean = v.iter().sum::<f64>() / 3.0;
    v.map(|x| x - mean)
}

fn random_weyl(n: usize, rng: &mut ChaCha8Rng) -> Result<CurvatureTensor> {
    if n == 4 {
        let w = weyl_from_eigenforms(&standard_omega(), &standard_eta(), trace_free_triple(rng), trace_free_triple(rng))?;
        return w.rotated(&random_orthogonal(4, rng));
    }
    let np = pair_count(n);
    let t = DMatrix::from_fn(np, np, |_, _| normal(rng));
    let r = CurvatureTensor::bianchi_projection(n, &t, DEFAULT_TOLERANCE)?;
    Ok(decompose(&r)?.weyl.scaled(0.5))
}

fn raw(n: usize, with_ricci: bool, rng: &mut ChaCha8Rng) -> Result<CurvatureTensor> {
    let w = random_weyl(n, rng)?;
    let e = if with_ricci {
        let dist = Normal::new(0.0, 0.5).expect("valid normal");
        SymTwoTensor::from_fn(n, |_, _| dist.sample(rng)).trace_free()
    } else {
        SymTwoTensor::zeros(n)
    };
    let scalar = rng.random_range(-1.0..3.0) * n as f64;
    recombine(&w, &e, scalar)
}

fn sum_smallest(r: &CurvatureTensor, k: usize) -> Result<f64> {
    second_kind_matrix(r, BasisConvention::Orthonormal)?.spectrum()?.sum_smallest(k)
}

/// Adds `c·(g∘g)/2`, which shifts every orthonormal second-kind eigenvalue by
/// `c`, so that the `k` smallest sum to `target`.
fn k_conditioned(base: &CurvatureTensor, k: usize, target: f64) -> Result<CurvatureTensor> {
    let n = base.n();
    let g = SymTwoTensor::identity(n);
    let gg = kulkarni_nomizu(&g, &g)?.scaled(0.5);
    let shifted = |c: f64| base.plus(&gg.scaled(c));
    let s0 = sum_smallest(base, k)?;
    let c = (target - s0) / k as f64;
    let r = shifted(c)?;
    let s = sum_smallest(&r, k)?;
    if s > 0.0 && s <= 0.1 {
        return Ok(r);
    }
    // rounding pushed us out of the window: bisect on c
    let (mut lo, mut hi) = (c - 1.0, c + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let s = sum_smallest(&shifted(mid)?, k)?;
        if s > 0.0 && s <= 0.1 {
            return shifted(mid);
        }
        if s <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(CurvError::BadParameters("conditioning shift did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{k_positivity, Positivity};

    #[test]
    fn parse_names() {
        let none = BTreeMap::new();
        assert_eq!(ModelSpec::from_name("fubiniStudy", &none).unwrap(), ModelSpec::FubiniStudy { scalar: 8.0 });
        assert_eq!(ModelSpec::from_name("product-spheres", &none).unwrap(), ModelSpec::ProductSpheres { scalar: 4.0 });
        assert!(matches!(ModelSpec::from_name("torus", &none), Err(CurvError::UnknownModel(_))));
        let bad = BTreeMap::from([("scalar".to_string(), 2.0)]);
        assert!(matches!(ModelSpec::from_name("roundSphere", &bad), Err(CurvError::BadParameters(_))));
    }

    #[test]
    fn models_have_expected_scalar_curvature() {
        let none = BTreeMap::new();
        for (name, s) in [("roundSphere", 12.0), ("fubiniStudy", 8.0), ("productSpheres", 4.0)] {
            let r = build_model(&ModelSpec::from_name(name, &none).unwrap()).unwrap();
            assert!((r.scalar() - s).abs() < 1e-12, "{name}");
            assert!(r.ricci().trace_free().norm() < 1e-12, "{name} is Einstein");
        }
    }

    #[test]
    fn round_sphere_matches_blocks() {
        let spec = ModelSpec::RoundSphere { kappa: 0.7 };
        let direct = build_model(&spec).unwrap();
        let from_blocks = spec.blocks().unwrap().to_tensor().unwrap();
        assert!(direct.max_abs_diff(&from_blocks).unwrap() < 1e-14);
    }

    #[test]
    fn ensemble_is_deterministic() {
        let e = random_ensemble(7, 5, EnsembleKind::RawCurvature).unwrap();
        let a: Vec<_> = e.clone().take(3).collect();
        assert_eq!(a[1], e.item(1).unwrap());
        assert!(a.iter().all(|r| r.bianchi_residual() < 1e-12));
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn conditioned_items_are_marginally_positive() {
        for n in [4, 6] {
            let e = random_ensemble(3, n, EnsembleKind::KPositiveConditioned(2)).unwrap();
            for r in e.take(4) {
                let spec = second_kind_matrix(&r, BasisConvention::Orthonormal).unwrap().spectrum().unwrap();
                let s = spec.sum_smallest(2).unwrap();
                assert!(s > 0.0 && s <= 0.1, "{s}");
                assert_eq!(k_positivity(&spec, 2, 0.0).unwrap(), Positivity::Positive);
            }
        }
    }

    #[test]
    fn ensemble_rejects_dimensions() {
        assert!(matches!(random_ensemble(0, 3, EnsembleKind::RawCurvature), Err(CurvError::BadDimension { .. })));
        assert!(matches!(random_ensemble(0, 5, EnsembleKind::Einstein4), Err(CurvError::BadDimension { .. })));
        assert!(matches!(random_ensemble(0, 4, EnsembleKind::KPositiveConditioned(10)), Err(CurvError::BadK { .. })));
    }
}
