//! `curvkind verify`: seeded ensemble checks of the positivity implications
//! and of the Einstein criteria.

use std::fmt::Write as _;

use curvkind_core::four_dim::{einstein_five_nonneg, einstein_six_nonneg, rhat9};
use curvkind_core::{
    build_model, first_kind_matrix, k_positivity, min_isotropic, random_ensemble, second_kind_matrix,
    sectional_extrema, BasisConvention, CurvatureTensor, EnsembleKind, IsotropicMode, ModelSpec, SearchConfig,
    TensorDocument,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::format::num;
use crate::{CliError, CliResult};

/// Conclusions below `-VIOLATION_TOL` count as violations.
pub const VIOLATION_TOL: f64 = 1e-8;
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// 2-positive second kind ⇒ PIC1.
    Main2a,
    /// 4-positive second kind ⇒ PIC.
    Main2b,
    /// Einstein 5-/6-non-negativity criteria and their consequences.
    Main5Criteria,
}

impl std::str::FromStr for Theorem {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "main2a" => Ok(Self::Main2a),
            "main2b" => Ok(Self::Main2b),
            "main5-criteria" => Ok(Self::Main5Criteria),
            _ => Err(CliError::Validation(format!(
                "unknown theorem {s:?} (expected main2a, main2b or main5-criteria)"
            ))),
        }
    }
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Self::Main2a => "main2a",
            Self::Main2b => "main2b",
            Self::Main5Criteria => "main5-criteria",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub count: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub restarts: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub n: usize,
    pub index: u64,
    pub value: f64,
    pub document: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimSummary {
    pub n: usize,
    pub count: usize,
    pub min_conclusion: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelCheck {
    pub model: String,
    pub five_nonneg: bool,
    pub six_nonneg: bool,
    pub max_sectional: f64,
    pub lines: Vec<String>,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifySummary {
    pub theorem: &'static str,
    pub seed: u64,
    pub restarts: usize,
    pub dims: Vec<DimSummary>,
    pub models: Vec<ModelCheck>,
    pub violations: usize,
    pub counterexamples: Vec<Counterexample>,
}

pub fn verify(theorem: Theorem, opts: &VerifyOptions) -> CliResult<VerifySummary> {
    if opts.count == 0 {
        return Err(CliError::Validation("--count must be at least 1".into()));
    }
    match theorem {
        Theorem::Main2a => implication(theorem, 2, IsotropicMode::Pic1, opts),
        Theorem::Main2b => implication(theorem, 4, IsotropicMode::Pic, opts),
        Theorem::Main5Criteria => einstein_criteria(opts),
    }
}

fn implication(theorem: Theorem, k: usize, mode: IsotropicMode, opts: &VerifyOptions) -> CliResult<VerifySummary> {
    let mut dims = Vec::new();
    let mut bad = Vec::new();
    for &n in &opts.dims {
        let ens = random_ensemble(opts.seed, n, EnsembleKind::KPositiveConditioned(k))?;
        let results: Vec<(u64, f64, CurvatureTensor)> = (0..opts.count as u64)
            .into_par_iter()
            .map(|i| {
                let r = ens.item(i)?;
                let rep = min_isotropic(&r, mode, opts.restarts, opts.seed.wrapping_add(i))?;
                Ok((i, rep.minimum_value, r))
            })
            .collect::<Result<_, curvkind_core::CurvError>>()?;
        let min = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        let violators: Vec<_> = results.into_iter().filter(|r| r.1 < -VIOLATION_TOL).collect();
        dims.push(DimSummary { n, count: opts.count, min_conclusion: min, violations: violators.len() });
        bad.extend(violators.into_iter().map(|(index, value, r)| Counterexample {
            n,
            index,
            value,
            document: TensorDocument::from_tensor(&r).to_value(),
        }));
    }
    let violations = dims.iter().map(|d| d.violations).sum();
    bad.truncate(MAX_COUNTEREXAMPLES);
    Ok(VerifySummary {
        theorem: theorem.name(),
        seed: opts.seed,
        restarts: opts.restarts,
        dims,
        models: Vec::new(),
        violations,
        counterexamples: bad,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Checks the criteria and their stated consequences on one Einstein tensor.
fn check_einstein(label: String, r: &CurvatureTensor, config: &SearchConfig) -> CliResult<ModelCheck> {
    let b = rhat9(r)?;
    let five = einstein_five_nonneg(b.lambdas, b.mus, b.scalar)?;
    let six = einstein_six_nonneg(b.lambdas, b.mus, b.scalar)?;
    let normalized = r.scaled(five.scale);
    let max_sec = sectional_extrema(&normalized, config)?.max;
    let second = second_kind_matrix(&normalized, BasisConvention::Orthonormal)?.spectrum()?;
    let first = first_kind_matrix(&normalized).spectrum()?;
    let tol = 1e-9;
    let mut lines = Vec::new();
    let mut violations = 0;

    // the inequalities must agree with the spectrum they encode
    let five_spec = k_positivity(&second, 5, tol)?.is_nonnegative();
    let six_spec = k_positivity(&second, 6, tol)?.is_nonnegative();
    violations += usize::from(five_spec != five.holds) + usize::from(six_spec != six.holds);

    if five.holds {
        let ok = max_sec <= 0.75 + 1e-6;
        violations += usize::from(!ok);
        lines.push(format!(
            "5-non-negative: yes; implied sectional bound 3/4 (normalized): {} (max sectional {})",
            if ok { "satisfied" } else { "VIOLATED" },
            num(max_sec)
        ));
    } else {
        lines.push("5-non-negative: no".into());
    }
    if six.holds {
        let sec_ok = max_sec <= 1.0 + 1e-6;
        let four = first.sum_smallest(4)? >= -tol;
        violations += usize::from(!sec_ok) + usize::from(!(four && six.first_kind_four_nonneg));
        lines.push(format!(
            "6-non-negative: yes; sectional <= Einstein constant: {}; first kind 4-non-negative: {}",
            if sec_ok { "satisfied" } else { "VIOLATED" },
            yes(four && six.first_kind_four_nonneg)
        ));
    } else {
        lines.push("6-non-negative: no".into());
    }
    Ok(ModelCheck { model: label, five_nonneg: five.holds, six_nonneg: six.holds, max_sectional: max_sec, lines, violations })
}

fn einstein_criteria(opts: &VerifyOptions) -> CliResult<VerifySummary> {
    let config = SearchConfig::default().with_restarts(opts.restarts.clamp(1, 16)).with_seed(opts.seed);
    let mut models = Vec::new();
    for spec in [
        ModelSpec::RoundSphere { kappa: 1.0 },
        ModelSpec::FubiniStudy { scalar: 8.0 },
        ModelSpec::ProductSpheres { scalar: 4.0 },
    ] {
        models.push(check_einstein(spec.name().to_string(), &build_model(&spec)?, &config)?);
    }
    // seeded Einstein tensors with positive scalar curvature
    let ens = random_ensemble(opts.seed, 4, EnsembleKind::Einstein4)?;
    let items: Vec<(u64, CurvatureTensor)> = (0..)
        .map(|i| (i, ens.item(i).expect("valid ensemble item")))
        .filter(|(_, r)| r.scalar() > 1e-6)
        .take(opts.count)
        .collect();
    let checks: Vec<ModelCheck> = items
        .par_iter()
        .map(|(i, r)| check_einstein(format!("einstein4[{i}]"), r, &config))
        .collect::<CliResult<_>>()?;
    let mut counterexamples = Vec::new();
    for ((i, r), c) in items.iter().zip(&checks) {
        if c.violations > 0 && counterexamples.len() < MAX_COUNTEREXAMPLES {
            counterexamples.push(Counterexample {
                n: 4,
                index: *i,
                value: c.max_sectional,
                document: TensorDocument::from_tensor(r).to_value(),
            });
        }
    }
    let ensemble = DimSummary {
        n: 4,
        count: checks.len(),
        min_conclusion: checks.iter().map(|c| c.max_sectional).fold(f64::INFINITY, f64::min),
        violations: checks.iter().map(|c| c.violations).sum(),
    };
    let violations = models.iter().map(|m| m.violations).sum::<usize>() + ensemble.violations;
    let five = checks.iter().filter(|c| c.five_nonneg).count();
    let six = checks.iter().filter(|c| c.six_nonneg).count();
    models.push(ModelCheck {
        model: format!("einstein4 ensemble ({} tensors)", checks.len()),
        five_nonneg: false,
        six_nonneg: false,
        max_sectional: ensemble.min_conclusion,
        lines: vec![format!("{five} 5-non-negative, {six} 6-non-negative; {} violations", ensemble.violations)],
        violations: ensemble.violations,
    });
    Ok(VerifySummary {
        theorem: Theorem::Main5Criteria.name(),
        seed: opts.seed,
        restarts: config.restarts,
        dims: vec![ensemble],
        models,
        violations,
        counterexamples,
    })
}

pub fn render_text(s: &VerifySummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem: {} (seed {}, {} restarts)", s.theorem, s.seed, s.restarts);
    if s.models.is_empty() {
        for d in &s.dims {
            let _ = writeln!(
                out,
                "n={}: {} tensors, min conclusion value {}, {} violations",
                d.n,
                d.count,
                num(d.min_conclusion),
                d.violations
            );
        }
    }
    for m in &s.models {
        for line in &m.lines {
            let _ = writeln!(out, "{}: {line}", m.model);
        }
    }
    let _ = writeln!(out, "violations: {}", s.violations);
    for c in &s.counterexamples {
        let _ = writeln!(out, "counterexample n={} index={} value={}: {}", c.n, c.index, num(c.value), c.document);
    }
    out
}

pub fn render_json(s: &VerifySummary) -> String {
    crate::to_json(s)
}
