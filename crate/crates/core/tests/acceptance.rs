//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use curvkind_core::curvature::pair_count;
use curvkind_core::four_dim::{
    derdzinski_bases, einstein_five_nonneg, einstein_six_nonneg, h_basis, rhat9, HProduct, H_PRODUCT_TABLE,
};
use curvkind_core::*;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn model(name: &str) -> CurvatureTensor {
    build_model(&ModelSpec::from_name(name, &BTreeMap::new()).unwrap()).unwrap()
}

fn raw(seed: u64, n: usize, count: usize) -> Vec<CurvatureTensor> {
    random_ensemble(seed, n, EnsembleKind::RawCurvature).unwrap().take(count).collect()
}

fn sorted_diagonal_matches(m: &DMatrix<f64>, want: &[f64]) -> f64 {
    let mut off = m.clone();
    off.fill_diagonal(0.0);
    let mut d: Vec<f64> = m.diagonal().iter().copied().collect();
    d.sort_by(f64::total_cmp);
    let diag_err = d.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    diag_err.max(off.amax())
}

fn golden_matrices() -> Outcome {
    let start = Instant::now();
    let sphere = second_kind_matrix(&model("roundSphere"), BasisConvention::PaperH).unwrap();
    let e1 = (&sphere.matrix - DMatrix::<f64>::identity(9, 9) * 4.0).amax();
    let e1b = (rhat9(&model("roundSphere")).unwrap().rhat9 - DMatrix::<f64>::identity(9, 9) * 4.0).amax();

    let s2 = rhat9(&model("productSpheres")).unwrap().rhat9;
    let want2 = [-4.0, 0.0, 0.0, 0.0, 0.0, 4.0, 4.0, 4.0, 4.0];
    let e2 = sorted_diagonal_matches(&s2, &want2);

    let cp = rhat9(&model("fubiniStudy")).unwrap().rhat9;
    let c = 16.0 / 3.0;
    let want3 = [-0.5 * c, -0.5 * c, -0.5 * c, c, c, c, c, c, c];
    let e3 = sorted_diagonal_matches(&cp, &want3);
    let elapsed = start.elapsed();
    let worst = e1.max(e1b).max(e2).max(e3);
    outcome(
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("S4 err {:.1e}, S2xS2 err {e2:.1e}, CP2 (16/3 scale) err {e3:.1e}, {elapsed:.2?}", e1.max(e1b)),
    )
}

fn rhat9_round_trip() -> Outcome {
    let start = Instant::now();
    let (mut rt, mut woff, mut ediag) = (0.0f64, 0.0f64, 0.0f64);
    for r in raw(101, 4, 200) {
        let b = rhat9(&r).unwrap();
        let h = b.h.h.to_vec();
        let direct = second_kind_matrix_in_basis(&r, h.clone(), BasisConvention::PaperH).unwrap();
        rt = rt.max((&b.rhat9 - &direct.matrix).amax());
        let w = decompose(&r).unwrap().weyl;
        let mut wm = second_kind_matrix_in_basis(&w, h, BasisConvention::PaperH).unwrap().matrix;
        wm.fill_diagonal(0.0);
        woff = woff.max(wm.amax());
        let ehat = &b.rhat9 - four_dim::what_matrix(&b.bases).unwrap() - DMatrix::<f64>::identity(9, 9) * (b.scalar / 3.0);
        for k in 0..3 {
            ediag = ediag.max(ehat.view((3 * k, 3 * k), (3, 3)).amax());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        rt <= 1e-9 && woff <= 1e-9 && ediag <= 1e-12 && elapsed < Duration::from_secs(10),
        format!("200 tensors: max |rhat9 - brute force| {rt:.1e}, W-hat off-diagonal {woff:.1e}, E-hat diagonal blocks {ediag:.1e}, {elapsed:.2?}"),
    )
}

fn multiplication_table() -> Outcome {
    let start = Instant::now();
    let mut named = 0;
    let mut skew = 0;
    let mut ident = 0;
    for row in H_PRODUCT_TABLE {
        for cell in row {
            match cell {
                HProduct::Identity => ident += 1,
                HProduct::Skew => skew += 1,
                HProduct::Basis(..) => named += 1,
            }
        }
    }
    let mut worst = 0.0f64;
    for r in raw(202, 4, 200) {
        let h = h_basis(&derdzinski_bases(&r).unwrap()).unwrap();
        worst = worst.max(h.product_table_residual());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!(
            "200 tensors, {named} signed products ({} named pairs), {ident} squares = Id, {skew} skew cells: residual {worst:.1e}, {elapsed:.2?}",
            named / 2
        ),
    )
}

fn sym(n: usize, i: usize, j: usize) -> SymTwoTensor {
    SymTwoTensor::sym_product(n, i, j)
}

fn printed_expansions() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for r in raw(303, 4, 10).into_iter().chain(raw(304, 5, 10)) {
        let n = r.n();
        // 1-based component access
        let c = |i: usize, j: usize, k: usize, l: usize| r.get(i - 1, j - 1, k - 1, l - 1);
        for l in [0.0, 0.5, 1.0] {
            let h1 = sym(n, 0, 2).add(&sym(n, 1, 3).scale(l)).unwrap();
            let want1 = 2.0 * (2.0 * l * c(1, 2, 4, 3) + c(1, 3, 1, 3) + 2.0 * l * c(1, 4, 2, 3) + l * l * c(2, 4, 2, 4));
            let h2 = sym(n, 1, 2).add(&sym(n, 0, 3).scale(-l)).unwrap();
            let want2 = 2.0 * (-2.0 * l * c(1, 2, 3, 4) - 2.0 * l * c(1, 3, 2, 4) + l * l * c(1, 4, 1, 4) + c(2, 3, 2, 3));
            let got1 = second_kind_form(&r, &h1, &h1).unwrap();
            let got2 = second_kind_form(&r, &h2, &h2).unwrap();
            worst = worst.max((got1 - want1).abs()).max((got2 - want2).abs());
            count += 1;
        }
    }
    outcome(worst <= 1e-12, format!("{count} evaluations of each expansion: max error {worst:.1e}"))
}

fn ensemble_implications() -> Outcome {
    let start = Instant::now();
    const PER_DIM: usize = 500;
    const RESTARTS: usize = 32;
    let mut report = Vec::new();
    let mut pass = true;
    for (k, mode, label) in [(2, IsotropicMode::Pic1, "2-positive => PIC1"), (4, IsotropicMode::Pic, "4-positive => PIC")] {
        let mut min = f64::INFINITY;
        let mut violations = 0;
        for n in [4, 5] {
            let ens = random_ensemble(500 + k as u64, n, EnsembleKind::KPositiveConditioned(k)).unwrap();
            for (i, r) in ens.take(PER_DIM).enumerate() {
                let rep = min_isotropic(&r, mode, RESTARTS, i as u64).unwrap();
                min = min.min(rep.minimum_value);
                if rep.minimum_value < -1e-8 {
                    violations += 1;
                }
            }
        }
        pass &= violations == 0;
        report.push(format!("{label}: {} tensors, min {min:.4}, {violations} violations", 2 * PER_DIM));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    outcome(pass, format!("{}; {elapsed:.1?}", report.join("; ")))
}

fn nic_closed_form() -> Outcome {
    const TOL: f64 = 1e-6;
    let classify = |v: f64| {
        if v > TOL {
            NicClass::Pic
        } else if v >= -TOL {
            NicClass::NicOnly
        } else {
            NicClass::Fails
        }
    };
    let mut worst = 0.0f64;
    let mut disagreements = 0;
    let mut tensors = raw(606, 4, 200);
    let models = ["roundSphere", "fubiniStudy", "productSpheres"];
    tensors.extend(models.iter().map(|m| model(m)));
    let mut model_classes = Vec::new();
    for (i, r) in tensors.iter().enumerate() {
        let nic = nic_check_dim4(r, TOL).unwrap();
        let rep = min_isotropic(r, IsotropicMode::Pic, 16, i as u64).unwrap();
        worst = worst.max((rep.minimum_value - nic.minimum).abs());
        if classify(rep.minimum_value) != nic.class {
            disagreements += 1;
        }
        if i >= 200 {
            model_classes.push(format!("{} {} ({:.1e})", models[i - 200], nic.class.name(), nic.minimum));
        }
    }
    let expected = [NicClass::Pic, NicClass::NicOnly, NicClass::NicOnly];
    let models_ok = tensors[200..]
        .iter()
        .zip(expected)
        .all(|(r, c)| nic_check_dim4(r, TOL).unwrap().class == c);
    outcome(
        worst <= 1e-6 && disagreements == 0 && models_ok,
        format!("203 tensors: max |search - closed form| {worst:.1e}, {disagreements} class disagreements; {}", model_classes.join(", ")),
    )
}

fn einstein_criteria() -> Outcome {
    let cfg = SearchConfig::default().with_restarts(16).with_seed(7);
    let cp2 = model("fubiniStudy");
    let b = rhat9(&cp2).unwrap();
    let five = einstein_five_nonneg(b.lambdas, b.mus, b.scalar).unwrap();
    let cp2_norm = cp2.scaled(five.scale);
    let cp2_max = sectional_extrema(&cp2_norm, &cfg).unwrap().max;
    let sectional_is_three_quarters = (cp2_max - 0.75).abs() <= 1e-6;

    let s2 = model("productSpheres");
    let b = rhat9(&s2).unwrap();
    let five_s2 = einstein_five_nonneg(b.lambdas, b.mus, b.scalar).unwrap();
    let six_s2 = einstein_six_nonneg(b.lambdas, b.mus, b.scalar).unwrap();
    let s2_max = sectional_extrema(&s2.scaled(six_s2.scale), &cfg).unwrap().max;

    let pass = five.holds
        && five.sectional_bound == Some(0.75)
        && cp2_max <= 0.75 + 1e-9
        && sectional_is_three_quarters
        && !five_s2.holds
        && six_s2.holds
        && s2_max <= 1.0 + 1e-9
        && six_s2.first_kind_four_nonneg;
    outcome(
        pass,
        format!(
            "CP2: 5-non-negative {}, implied bound {:?}, plane-search max {cp2_max:.9} (required = 0.75: {}); \
             S2xS2: 5-non-negative {}, 6-non-negative {}, plane-search max {s2_max:.9} <= 1, first-kind 4-non-negative {}",
            five.holds,
            five.sectional_bound,
            if sectional_is_three_quarters { "yes" } else { "no" },
            five_s2.holds,
            six_s2.holds,
            six_s2.first_kind_four_nonneg,
        ),
    )
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let (mut round_trip, mut traces) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let n = 3 + i % 4;
        let np = pair_count(n);
        let m = DMatrix::from_fn(np, np, |_, _| rng.random_range(-1.0..1.0));
        let r = CurvatureTensor::bianchi_projection(n, &m, 1e-9).unwrap();
        let d = decompose(&r).unwrap();
        round_trip = round_trip.max(d.reconstruct().unwrap().max_abs_diff(&r).unwrap());
        traces = traces.max(d.weyl_trace_residual());
    }
    let mut cc = 0.0f64;
    for n in 3..=8 {
        for kappa in [-1.0, 0.5, 2.0] {
            let s = second_kind_matrix(&constant_curvature(n, kappa), BasisConvention::Orthonormal)
                .unwrap()
                .spectrum()
                .unwrap();
            cc = cc.max(s.eigenvalues.iter().map(|e| (e - kappa).abs()).fold(0.0, f64::max));
        }
    }
    let mut shift = 0.0f64;
    for n in [4, 5] {
        let g = SymTwoTensor::identity(n);
        let gg = kulkarni_nomizu(&g, &g).unwrap().scaled(0.5);
        for (i, r) in raw(809, n, 5).into_iter().enumerate() {
            let c = 0.25 + 0.1 * i as f64;
            let before = min_isotropic(&r, IsotropicMode::Pic, 8, 1).unwrap().minimum_value;
            let after = min_isotropic(&r.plus(&gg.scaled(c)).unwrap(), IsotropicMode::Pic, 8, 1).unwrap().minimum_value;
            shift = shift.max((after - before - 4.0 * c).abs());
        }
    }
    outcome(
        round_trip <= 1e-12 && traces <= 1e-12 && cc <= 1e-12 && shift <= 1e-8,
        format!("decomposition {round_trip:.1e}, Weyl traces {traces:.1e}, constant-curvature spectrum {cc:.1e}, PIC shift +4c {shift:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden model matrices", golden_matrices),
        ("9x9 matrix vs brute force", rhat9_round_trip),
        ("h-basis multiplication table", multiplication_table),
        ("printed second-kind expansions", printed_expansions),
        ("k-positive ensembles satisfy PIC1 / PIC", ensemble_implications),
        ("dim-4 NIC closed form vs frame search", nic_closed_form),
        ("Einstein 5-/6-non-negativity criteria", einstein_criteria),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {} - {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
