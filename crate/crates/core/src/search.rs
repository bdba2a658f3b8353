//! Randomized local search over orthonormal k-frames.
//!
//! Frames are stored as full `n×n` orthogonal matrices whose leading `k`
//! columns are the frame; Givens rotations mixing a frame column with any
//! later column explore the Stiefel manifold. Every restart draws its start
//! from its own ChaCha stream, so results depend only on `(inputs, seed)`.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::curvature::{wedge_coordinates, CurvatureTensor};
use crate::error::{CurvError, Result};

/// Knobs for the frame search. The defaults are what the CLI uses.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Rotation angles (radians) for the coarse sweeps.
    pub coarse_steps: Vec<f64>,
    pub coarse_passes: usize,
    /// The fine phase keeps dividing the step by 3 until it drops below this.
    pub min_step: f64,
    /// Grid size per parameter for the λ/μ minimization.
    pub parameter_grid: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0,
            coarse_steps: vec![0.3, 0.1, 0.03, 0.01],
            coarse_passes: 2,
            min_step: 1e-6,
            parameter_grid: 33,
        }
    }
}

impl SearchConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub frame: DMatrix<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Haar-distributed element of `O(n)` (Gaussian QR with the sign fix).
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    orthonormalize(g)
}

pub(crate) fn orthonormalize(m: DMatrix<f64>) -> DMatrix<f64> {
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..q.ncols() {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn rotate(q: &mut DMatrix<f64>, p: usize, r: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for i in 0..q.nrows() {
        let (a, b) = (q[(i, p)], q[(i, r)]);
        q[(i, p)] = c * a + s * b;
        q[(i, r)] = -s * a + c * b;
    }
}

/// One line search along the Givens direction `(p, r)`. Returns the improvement.
fn line_step<F: Fn(&DMatrix<f64>) -> f64>(
    q: &mut DMatrix<f64>,
    value: &mut f64,
    p: usize,
    r: usize,
    h: f64,
    f: &F,
) -> f64 {
    let trial = |theta: f64| {
        let mut t = q.clone();
        rotate(&mut t, p, r, theta);
        (f(&t), t)
    };
    let f0 = *value;
    let (fp, tp) = trial(h);
    let (fm, tm) = trial(-h);
    let mut best = if fp <= fm { (fp, tp) } else { (fm, tm) };
    let curv = fp - 2.0 * f0 + fm;
    if curv > 0.0 {
        let theta = (0.5 * h * (fm - fp) / curv).clamp(-4.0 * h, 4.0 * h);
        if theta.abs() > 1e-3 * h {
            let cand = trial(theta);
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    if best.0 < f0 {
        *q = best.1;
        *value = best.0;
        f0 - best.0
    } else {
        0.0
    }
}

fn sweep<F: Fn(&DMatrix<f64>) -> f64>(q: &mut DMatrix<f64>, value: &mut f64, k: usize, h: f64, f: &F) -> f64 {
    let n = q.nrows();
    let mut gain = 0.0;
    for p in 0..k {
        for r in (p + 1)..n {
            gain += line_step(q, value, p, r, h, f);
        }
    }
    gain
}

fn descend<F: Fn(&DMatrix<f64>) -> f64>(mut q: DMatrix<f64>, k: usize, config: &SearchConfig, f: &F) -> SearchOutcome {
    let mut value = f(&q);
    for &h in &config.coarse_steps {
        for _ in 0..config.coarse_passes {
            sweep(&mut q, &mut value, k, h, f);
        }
        q = orthonormalize(q);
        value = f(&q);
    }
    let mut h = config.coarse_steps.last().copied().unwrap_or(0.01) / 3.0;
    let mut converged = false;
    while h >= config.min_step {
        let mut settled = false;
        for _ in 0..40 {
            let gain = sweep(&mut q, &mut value, k, h, f);
            if gain <= 1e-13 * (1.0 + value.abs()) {
                settled = true;
                break;
            }
        }
        q = orthonormalize(q);
        value = f(&q);
        converged = settled;
        h /= 3.0;
    }
    SearchOutcome { frame: q, value, converged }
}

/// Minimizes `f` over orthonormal `k`-frames in `Rⁿ`; `f` sees the full
/// orthogonal matrix but must only depend on its first `k` columns.
pub(crate) fn minimize_over_frames<F>(n: usize, k: usize, config: &SearchConfig, f: F) -> SearchOutcome
where
    F: Fn(&DMatrix<f64>) -> f64,
{
    let restarts = config.restarts.max(1);
    let mut best: Option<SearchOutcome> = None;
    for i in 0..restarts {
        let mut rng = restart_rng(config.seed, i);
        let out = descend(random_orthogonal(n, &mut rng), k, config, &f);
        // strict comparison keeps the lowest restart index on ties
        if best.as_ref().is_none_or(|b| out.value < b.value) {
            best = Some(out);
        }
    }
    best.expect("at least one restart")
}

/// Extremes of the sectional curvature found by plane search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SectionalExtrema {
    pub min: f64,
    pub max: f64,
}

fn plane_sectional(r: &CurvatureTensor, q: &DMatrix<f64>) -> f64 {
    let x: Vec<f64> = q.column(0).iter().copied().collect();
    let y: Vec<f64> = q.column(1).iter().copied().collect();
    let w = wedge_coordinates(&x, &y);
    w.dot(&(r.pair_matrix() * &w))
}

/// Minimum and maximum sectional curvature over all 2-planes, by search.
/// The reported minimum is an upper bound for the true one and the maximum a
/// lower bound.
pub fn sectional_extrema(r: &CurvatureTensor, config: &SearchConfig) -> Result<SectionalExtrema> {
    let n = r.n();
    if n < 2 {
        return Err(CurvError::UnsupportedDimension { n, requirement: "n >= 2" });
    }
    let min = minimize_over_frames(n, 2, config, |q| plane_sectional(r, q)).value;
    let max = -minimize_over_frames(n, 2, config, |q| -plane_sectional(r, q)).value;
    Ok(SectionalExtrema { min, max })
}
