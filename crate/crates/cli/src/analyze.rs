//! `curvkind analyze`: everything the library can say about one tensor.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use curvkind_core::four_dim::{einstein_five_nonneg, einstein_six_nonneg, rhat9, FiveNonneg, SixNonneg};
use curvkind_core::{
    build_model, first_kind_matrix, k_positivity, min_isotropic, nic_check_dim4, BasisConvention, CurvatureTensor,
    IsotropicMode, ModelSpec, NicCheck, NicClass, Positivity, TensorDocument,
};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::format::{list, num};
use crate::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub restarts: usize,
    pub convention: BasisConvention,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 64,
            convention: BasisConvention::Orthonormal,
            tolerance: curvkind_core::DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KRow {
    pub k: usize,
    pub sum: f64,
    pub class: &'static str,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IsotropicRow {
    pub mode: IsotropicMode,
    /// Upper bound for the infimum over frames.
    pub minimum: f64,
    pub lambda: f64,
    pub mu: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FourDimReport {
    pub w_plus: Vec<Vec<f64>>,
    pub w_minus: Vec<Vec<f64>>,
    pub b_block: Vec<Vec<f64>>,
    pub lambdas: [f64; 3],
    pub mus: [f64; 3],
    pub berger_a: [f64; 3],
    pub berger_b: [f64; 3],
    pub epsilon: [f64; 9],
    pub rhat9: Vec<Vec<f64>>,
    pub nic: NicCheck,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EinsteinReport {
    pub five: FiveNonneg,
    pub six: SixNonneg,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelDistance {
    pub model: &'static str,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub n: usize,
    pub seed: u64,
    pub restarts: usize,
    pub tolerance: f64,
    pub scalar: f64,
    pub bianchi_residual: f64,
    pub first_kind_eigenvalues: Vec<f64>,
    /// Second-kind spectra keyed by convention (`paper-h` only when n = 4).
    pub second_kind_eigenvalues: BTreeMap<&'static str, Vec<f64>>,
    pub convention: BasisConvention,
    pub k_positivity: Vec<KRow>,
    pub isotropic: Vec<IsotropicRow>,
    pub pic: Option<bool>,
    pub nic: Option<bool>,
    pub four_dim: Option<FourDimReport>,
    pub einstein: Option<EinsteinReport>,
    pub models: Vec<ModelDistance>,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn class_name(p: Positivity) -> &'static str {
    match p {
        Positivity::Positive => "positive",
        Positivity::Nonnegative => "nonnegative",
        Positivity::Indefinite => "indefinite",
    }
}

pub fn load(text: &str, tolerance: f64) -> CliResult<CurvatureTensor> {
    Ok(TensorDocument::parse(text)?.to_tensor(tolerance)?)
}

pub fn analyze(r: &CurvatureTensor, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let n = r.n();
    if opts.convention == BasisConvention::PaperH && n != 4 {
        return Err(CliError::Validation("the paper-h convention needs n = 4".into()));
    }
    let tol = opts.tolerance;
    let input_residual = r.bianchi_residual();
    // inputs accepted within tolerance are analyzed through their exact
    // Bianchi projection
    let projected;
    let r = if input_residual > 0.0 {
        projected = CurvatureTensor::bianchi_projection(n, r.pair_matrix(), tol)?;
        &projected
    } else {
        r
    };
    let first = first_kind_matrix(r).spectrum()?;
    let mut second = BTreeMap::new();
    let ortho = curvkind_core::second_kind_matrix(r, BasisConvention::Orthonormal)?.spectrum()?;
    second.insert(BasisConvention::Orthonormal.name(), ortho.eigenvalues.clone());
    if n == 4 {
        let ph = curvkind_core::second_kind_matrix(r, BasisConvention::PaperH)?.spectrum()?;
        second.insert(BasisConvention::PaperH.name(), ph.eigenvalues);
    }
    // k-positivity does not depend on the (positive) basis scale
    let k_positivity = (1..=ortho.len())
        .map(|k| {
            Ok(KRow {
                k,
                sum: ortho.sum_smallest(k)?,
                class: class_name(k_positivity(&ortho, k, tol)?),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut isotropic = Vec::new();
    let (mut pic, mut nic) = (None, None);
    if n >= 4 {
        for mode in [IsotropicMode::Pic, IsotropicMode::Pic1, IsotropicMode::Pic2] {
            let rep = min_isotropic(r, mode, opts.restarts, opts.seed)?;
            isotropic.push(IsotropicRow {
                mode,
                minimum: rep.minimum_value,
                lambda: rep.argmin_params.0,
                mu: rep.argmin_params.1,
                converged: rep.converged,
            });
        }
        let m = isotropic[0].minimum;
        pic = Some(m > tol);
        nic = Some(m >= -tol);
    }

    let (mut four_dim, mut einstein) = (None, None);
    if n == 4 {
        let b = rhat9(r)?;
        let check = nic_check_dim4(r, tol)?;
        pic = Some(check.class == NicClass::Pic);
        nic = Some(check.class != NicClass::Fails);
        if b.traceless_ricci.norm() <= tol && b.scalar > tol {
            einstein = Some(EinsteinReport {
                five: einstein_five_nonneg(b.lambdas, b.mus, b.scalar)?,
                six: einstein_six_nonneg(b.lambdas, b.mus, b.scalar)?,
            });
        }
        four_dim = Some(FourDimReport {
            w_plus: rows(&b.w_plus),
            w_minus: rows(&b.w_minus),
            b_block: rows(&b.b_block),
            lambdas: b.lambdas,
            mus: b.mus,
            berger_a: b.berger.a,
            berger_b: b.berger.b,
            epsilon: b.epsilon,
            rhat9: rows(&b.rhat9),
            nic: check,
        });
    }

    let mut models = Vec::new();
    for spec in [
        ModelSpec::RoundSphere { kappa: 1.0 },
        ModelSpec::FubiniStudy { scalar: 8.0 },
        ModelSpec::ProductSpheres { scalar: 4.0 },
    ] {
        if spec.n() == n {
            models.push(ModelDistance {
                model: spec.name(),
                max_abs_diff: build_model(&spec)?.max_abs_diff(r)?,
            });
        }
    }

    Ok(AnalysisReport {
        n,
        seed: opts.seed,
        restarts: opts.restarts,
        tolerance: tol,
        scalar: r.scalar(),
        bianchi_residual: input_residual,
        first_kind_eigenvalues: first.eigenvalues,
        second_kind_eigenvalues: second,
        convention: opts.convention,
        k_positivity,
        isotropic,
        pic,
        nic,
        four_dim,
        einstein,
        models,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix_lines(out: &mut String, label: &str, m: &[Vec<f64>]) {
    let _ = writeln!(out, "{label}:");
    for row in m {
        let _ = writeln!(out, "  {}", list(row));
    }
}

/// Smallest k with positive sum, formatted as "k-positive: yes; (k-1)-positive: no".
fn positivity_summary(rows: &[KRow]) -> String {
    match rows.iter().find(|r| r.class == "positive") {
        Some(r) if r.k == 1 => "1-positive: yes".into(),
        Some(r) => format!("{}-positive: yes; {}-positive: no", r.k, r.k - 1),
        None => format!("{}-positive: no", rows.len()),
    }
}

pub fn render_text(rep: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension: {}", rep.n);
    let _ = writeln!(out, "scalar curvature: {}", num(rep.scalar));
    let _ = writeln!(out, "bianchi residual: {}", num(rep.bianchi_residual));
    let _ = writeln!(out, "first kind eigenvalues: {}", list(&rep.first_kind_eigenvalues));
    let name = rep.convention.name();
    let _ = writeln!(out, "second kind eigenvalues ({name}): {}", list(&rep.second_kind_eigenvalues[name]));
    for (conv, ev) in &rep.second_kind_eigenvalues {
        if *conv != name {
            let _ = writeln!(out, "second kind eigenvalues ({conv}): {}", list(ev));
        }
    }
    let _ = writeln!(out, "k-positivity (second kind):");
    for row in &rep.k_positivity {
        let _ = writeln!(out, "  k={}: {} (sum {})", row.k, row.class, num(row.sum));
    }
    let mut summary = positivity_summary(&rep.k_positivity);
    if let (Some(p), Some(q)) = (rep.pic, rep.nic) {
        let _ = write!(summary, "; PIC: {}; NIC: {}", yes(p), yes(q));
    }
    let _ = writeln!(out, "summary: {summary}");
    if !rep.isotropic.is_empty() {
        let _ = writeln!(out, "isotropic search (seed {}, {} restarts; minima are upper bounds):", rep.seed, rep.restarts);
        for row in &rep.isotropic {
            let _ = writeln!(
                out,
                "  {}: min {} at lambda={} mu={}{}",
                row.mode.name(),
                num(row.minimum),
                num(row.lambda),
                num(row.mu),
                if row.converged { "" } else { " (not converged)" }
            );
        }
    }
    if let Some(f) = &rep.four_dim {
        let _ = writeln!(
            out,
            "NIC closed form: {} (self-dual {}, anti-self-dual {})",
            f.nic.class.name(),
            num(f.nic.self_dual_minimum),
            num(f.nic.anti_self_dual_minimum)
        );
        let _ = writeln!(out, "W+ eigenvalues: {}", list(&f.lambdas));
        let _ = writeln!(out, "W- eigenvalues: {}", list(&f.mus));
        let _ = writeln!(out, "Berger a: {}", list(&f.berger_a));
        let _ = writeln!(out, "Berger b: {}", list(&f.berger_b));
        let _ = writeln!(out, "epsilon: {}", list(&f.epsilon));
        matrix_lines(&mut out, "W+ block", &f.w_plus);
        matrix_lines(&mut out, "W- block", &f.w_minus);
        matrix_lines(&mut out, "B block", &f.b_block);
        matrix_lines(&mut out, "rhat9 (h basis)", &f.rhat9);
    }
    if let Some(e) = &rep.einstein {
        let _ = writeln!(
            out,
            "Einstein (normalized by {}): 5-non-negative: {}; 6-non-negative: {}; max sectional {}; first kind 4-non-negative: {}",
            num(e.five.scale),
            yes(e.five.holds),
            yes(e.six.holds),
            num(e.five.max_sectional),
            yes(e.six.first_kind_four_nonneg)
        );
    }
    for m in &rep.models {
        let _ = writeln!(out, "distance to {}: {}", m.model, num(m.max_abs_diff));
    }
    out
}

pub fn render_json(rep: &AnalysisReport) -> String {
    crate::to_json(rep)
}
