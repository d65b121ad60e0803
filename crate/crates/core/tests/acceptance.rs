//! Acceptance suite. Each test writes one `PASS`/`FAIL` line straight to stdout (bypassing
//! libtest capture), then asserts.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use murkit::bruteforce::{search_worst_case, FibonacciLattice, DEFAULT_GRID_POINTS};
use murkit::compatibility::compatible_unbiased;
use murkit::{
    assemble_povm, combined_inaccuracy, compatible_symmetrized, family_fig3, family_fig4,
    incompatibility_degree, optimal_approximators, run_experiment, run_sweep, solve_circuit_params,
    symmetrized_joint, targets_from_theta, worst_case_inaccuracy, worst_case_state,
    zero_inaccuracy_approximators, BinaryObservable, Error, Family, JointMode, SweepResult,
    SweepSpec, Vec3,
};
use rand::Rng;

fn report(id: u32, ok: bool, detail: impl AsRef<str>) {
    let line = format!(
        "criterion {id:>2}: {} | {}\n",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "criterion {id} failed: {}", detail.as_ref());
}

fn lb_theta(theta: f64) -> f64 {
    let (a, b) = targets_from_theta(theta).unwrap();
    incompatibility_degree(a.vector(), b.vector()).unwrap()
}

#[test]
fn criterion_01_lower_bound_at_right_angle() {
    let expected = 2.0 * (2f64.sqrt() - 1.0);
    let start = Instant::now();
    let got = lb_theta(90.0);
    let elapsed = start.elapsed();
    let err = (got - expected).abs();
    report(
        1,
        err <= 1e-9 && elapsed < Duration::from_millis(1),
        format!("Δ_lb(90°) = {got:.12}, |err| = {err:.1e}, runtime = {elapsed:?}"),
    );
}

#[test]
fn criterion_02_lower_bound_at_45_and_135() {
    let expected = 2.0 / (2.0 - 2f64.sqrt()).sqrt() - 2.0;
    let g45 = lb_theta(45.0);
    let g135 = lb_theta(135.0);
    let err = (g45 - expected).abs().max((g135 - expected).abs());
    report(
        2,
        err <= 1e-6,
        format!("Δ_lb(45°) = {g45:.9}, Δ_lb(135°) = {g135:.9}, max |err| = {err:.1e}"),
    );
}

#[test]
fn criterion_03_bound_attainment() {
    let mut rng = common::rng(3);
    let mut worst_gap = 0.0f64;

    let thetas: Vec<f64> = (0..200).map(|i| 180.0 * (i as f64 + 0.5) / 200.0).collect();
    for &theta in &thetas {
        let (a, b) = targets_from_theta(theta).unwrap();
        let (c, d) = optimal_approximators(&a, &b).unwrap();
        let delta = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        let lb = incompatibility_degree(a.vector(), b.vector()).unwrap();
        worst_gap = worst_gap.max((delta - lb).abs());
    }

    for _ in 0..50 {
        let theta = rng.gen_range(1.0..179.0);
        let rot = common::rotation(&mut rng);
        let (a0, b0) = targets_from_theta(theta).unwrap();
        let a = BinaryObservable::sharp(rot.apply(a0.vector())).unwrap();
        let b = BinaryObservable::sharp(rot.apply(b0.vector())).unwrap();
        let (c, d) = optimal_approximators(&a, &b).unwrap();
        let delta = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        let lb = incompatibility_degree(a.vector(), b.vector()).unwrap();
        worst_gap = worst_gap.max((delta - lb).abs());
    }

    // Random search: half the trials are unrestricted compatible pairs, half are small
    // perturbations of the optimum pushed back inside the compatible set.
    let mut best_improvement = f64::NEG_INFINITY;
    for i in 0..10_000 {
        let theta = thetas[i % thetas.len()];
        let (a, b) = targets_from_theta(theta).unwrap();
        let (co, dop) = optimal_approximators(&a, &b).unwrap();
        let optimum = worst_case_inaccuracy(&a, &b, &co, &dop).unwrap();
        let (c, d) = if i % 2 == 0 {
            common::compatible_pair(&mut rng)
        } else {
            let eps = 10f64.powf(rng.gen_range(-6.0..-1.0));
            let c = co.vector() + common::unit(&mut rng) * eps;
            let d = dop.vector() + common::unit(&mut rng) * eps;
            if common::compat_sum(c, d) > 2.0 {
                common::to_boundary(c, d)
            } else {
                (c, d)
            }
        };
        let c = BinaryObservable::unbiased(c).unwrap();
        let d = BinaryObservable::unbiased(d).unwrap();
        let delta = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        best_improvement = best_improvement.max(optimum - delta);
    }

    report(
        3,
        worst_gap <= 1e-9 && best_improvement <= 1e-6,
        format!(
            "max |Δ_opt − Δ_lb| = {worst_gap:.1e} over 250 target pairs; \
             best random improvement = {best_improvement:.1e} over 10^4 pairs"
        ),
    );
}

struct Sweeps {
    fig3: SweepResult,
    fig4: SweepResult,
    elapsed: Duration,
}

fn default_sweeps() -> &'static Sweeps {
    static CELL: std::sync::OnceLock<Sweeps> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let fig3 = run_sweep(&SweepSpec::new(Family::Fig3Gamma, 90.0)).unwrap();
        let fig4 = run_sweep(&SweepSpec::new(Family::Fig4Phi, 90.0)).unwrap();
        Sweeps {
            fig3,
            fig4,
            elapsed: start.elapsed(),
        }
    })
}

fn unique_min(res: &SweepResult) -> (f64, f64, f64) {
    let best = res.argmin().unwrap();
    let runner_up = res
        .rows
        .iter()
        .filter(|r| r.param_deg != best.param_deg)
        .map(|r| r.delta_analytic)
        .fold(f64::INFINITY, f64::min);
    (
        best.param_deg,
        best.delta_analytic,
        runner_up - best.delta_analytic,
    )
}

#[test]
fn criterion_04_curve_reproduction() {
    let sweeps = default_sweeps();
    let expected = 2.0 * (2f64.sqrt() - 1.0);
    let (g, g_val, g_gap) = unique_min(&sweeps.fig3);
    let (p, p_val, p_gap) = unique_min(&sweeps.fig4);
    let ok = sweeps.fig3.rows.len() == 91
        && (g - 45.0).abs() < 1e-9
        && (g_val - expected).abs() < 1e-6
        && g_gap > 0.0
        && (p - 90.0).abs() < 1e-9
        && (p_val - expected).abs() < 1e-6
        && p_gap > 0.0
        && sweeps.elapsed <= Duration::from_secs(60);
    report(
        4,
        ok,
        format!(
            "fig3 min at γ={g}° Δ={g_val:.9} (next +{g_gap:.1e}); \
             fig4 min at φ={p}° Δ={p_val:.9} (next +{p_gap:.1e}); \
             both sweeps with 10^5-point brute force in {:.2?}",
            sweeps.elapsed
        ),
    );
}

#[test]
fn criterion_05_oracle_agreement() {
    let sweeps = default_sweeps();
    let lattice = FibonacciLattice::new(DEFAULT_GRID_POINTS);
    let (a, b) = targets_from_theta(90.0).unwrap();

    let mut lattice_err = 0.0f64;
    let mut column_err = 0.0f64;
    let mut rows = 0;
    for (family, res) in [
        (Family::Fig3Gamma, &sweeps.fig3),
        (Family::Fig4Phi, &sweeps.fig4),
    ] {
        for r in &res.rows {
            let (c, d) = family.approximators(r.param_deg).unwrap();
            let search = search_worst_case(&a, &b, &c, &d, &lattice).unwrap();
            lattice_err = lattice_err.max((r.delta_analytic - search.lattice_max).abs());
            column_err = column_err.max((r.delta_analytic - r.delta_bruteforce.unwrap()).abs());
            rows += 1;
        }
    }

    let mut rng = common::rng(5);
    let mut refined_err = 0.0f64;
    for _ in 0..20 {
        let theta = rng.gen_range(0.0..=180.0);
        let (a, b) = targets_from_theta(theta).unwrap();
        let (c, d) = if rng.gen_bool(0.5) {
            family_fig3(rng.gen_range(0.0..=90.0)).unwrap()
        } else {
            family_fig4(rng.gen_range(0.0..=180.0)).unwrap()
        };
        let analytic = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        let refined = search_worst_case(&a, &b, &c, &d, &lattice)
            .unwrap()
            .refined_max;
        refined_err = refined_err.max((analytic - refined).abs());
    }

    report(
        5,
        lattice_err <= 1e-4 && column_err <= 1e-4 && refined_err <= 1e-6,
        format!(
            "lattice-only max |err| = {lattice_err:.1e} and refined column max |err| = \
             {column_err:.1e} over {rows} rows; refined max |err| = {refined_err:.1e} on 20 spot checks"
        ),
    );
}

#[test]
fn criterion_06_relation() {
    let mut rng = common::rng(6);
    let mut violations = 0;
    let mut min_slack = f64::INFINITY;
    for _ in 0..100_000 {
        let a = common::sharp(&mut rng);
        let b = common::sharp(&mut rng);
        let (c, d) = common::compatible_pair(&mut rng);
        let c = BinaryObservable::unbiased(c).unwrap();
        let d = BinaryObservable::unbiased(d).unwrap();
        let delta = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        let lb = incompatibility_degree(a.vector(), b.vector()).unwrap();
        let slack = delta - lb;
        min_slack = min_slack.min(slack);
        if slack < -1e-9 {
            violations += 1;
        }
    }
    report(
        6,
        violations == 0,
        format!(
            "{violations} violations of Δ ≥ Δ_lb in 10^5 trials; min Δ − Δ_lb = {min_slack:.3e}"
        ),
    );
}

#[test]
fn criterion_07_criterion_equivalence() {
    let mut rng = common::rng(7);
    let mut disagreements = 0;
    let mut boundary = 0;
    let mut worst_boundary = 0.0f64;
    for i in 0..100_000 {
        let (c, d) = (common::in_ball(&mut rng), common::in_ball(&mut rng));
        let (c, d) = if i % 4 == 0 {
            common::to_boundary(c, d)
        } else {
            (c, d)
        };
        let margin = compatible_unbiased(c, d).unwrap().margin;
        let sym = compatible_symmetrized(
            &BinaryObservable::unbiased(c).unwrap(),
            &BinaryObservable::unbiased(d).unwrap(),
        );
        let near = margin.abs() <= 1e-9;
        if near {
            boundary += 1;
            worst_boundary = worst_boundary.max(sym.min_eigenvalue.abs());
            if sym.min_eigenvalue.abs() > 1e-9 || !sym.compatible {
                disagreements += 1;
            }
        } else if (margin > 0.0) != (sym.min_eigenvalue > 0.0) || (margin > 0.0) != sym.compatible {
            disagreements += 1;
        }
    }
    report(
        7,
        disagreements == 0,
        format!(
            "{disagreements} disagreements in 10^5 pairs; {boundary} boundary pairs with \
             max |min eigenvalue| = {worst_boundary:.1e}"
        ),
    );
}

#[test]
fn criterion_08_marginal_identity() {
    let mut rng = common::rng(8);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let (c, d) = if i % 2 == 0 {
            (common::biased(&mut rng), common::biased(&mut rng))
        } else {
            let (c, d) = (common::in_ball(&mut rng), common::in_ball(&mut rng));
            (
                BinaryObservable::unbiased(c).unwrap(),
                BinaryObservable::unbiased(d).unwrap(),
            )
        };
        let m = symmetrized_joint(&c, &d);
        let rows = m.row_sums();
        let cols = m.column_sums();
        for k in 0..2 {
            worst = worst.max(rows[k].max_abs_diff(&c.effects()[k]));
            worst = worst.max(cols[k].max_abs_diff(&d.effects()[k]));
        }
    }
    // Coefficients are at most 2 in magnitude, so a few ulps is ≤ 1e-15.
    report(
        8,
        worst <= 1e-15,
        format!(
            "max coefficient deviation of marginals = {worst:.1e} over 10^4 pairs (half biased)"
        ),
    );
}

#[test]
fn criterion_09_dilation_round_trip() {
    let mut worst = 0.0f64;
    let mut pairs = Vec::new();
    for i in 0..19 {
        pairs.push(family_fig3(5.0 * i as f64).unwrap());
        pairs.push(family_fig4(10.0 * i as f64).unwrap());
    }
    let mut rng = common::rng(9);
    for _ in 0..1000 {
        let (c, d) = common::to_boundary(common::in_ball(&mut rng), common::in_ball(&mut rng));
        pairs.push((
            BinaryObservable::unbiased(c).unwrap(),
            BinaryObservable::unbiased(d).unwrap(),
        ));
    }
    let mut failures = 0;
    for (c, d) in &pairs {
        match solve_circuit_params(c, d) {
            Ok(p) => worst = worst.max(assemble_povm(&p).max_abs_diff(&symmetrized_joint(c, d))),
            Err(_) => failures += 1,
        }
    }

    let interior = solve_circuit_params(
        &BinaryObservable::unbiased(Vec3::new(0.3, 0.0, 0.0)).unwrap(),
        &BinaryObservable::unbiased(Vec3::new(0.0, 0.0, 0.3)).unwrap(),
    );
    let incompatible = solve_circuit_params(
        &BinaryObservable::unbiased(Vec3::X).unwrap(),
        &BinaryObservable::unbiased(Vec3::Z).unwrap(),
    );
    let biased = solve_circuit_params(
        &BinaryObservable::new(0.8, Vec3::new(0.5, 0.0, 0.0)).unwrap(),
        &BinaryObservable::unbiased(Vec3::Z * 0.5).unwrap(),
    );
    let errors_ok = matches!(interior, Err(Error::NotRankOne { .. }))
        && matches!(incompatible, Err(Error::Incompatible { .. }))
        && matches!(biased, Err(Error::Biased { .. }));

    report(
        9,
        failures == 0 && worst <= 1e-10 && errors_ok,
        format!(
            "max |assembled − symmetrized| = {worst:.1e} over {} pairs ({failures} solve failures); \
             interior/incompatible/biased errors as specified: {errors_ok}",
            pairs.len()
        ),
    );
}

#[test]
fn criterion_10_vanishing_minimum() {
    let mut rng = common::rng(10);
    let mut nonzero = 0;
    let mut incompatible = 0;
    for _ in 0..1000 {
        let a = common::sharp(&mut rng);
        let b = common::sharp(&mut rng);
        let s = common::state(&mut rng);
        let (c, d) = zero_inaccuracy_approximators(&a, &b, &s).unwrap();
        if combined_inaccuracy(&a, &b, &c, &d, &s).unwrap().delta_rho != 0.0 {
            nonzero += 1;
        }
        if !compatible_symmetrized(&c, &d).compatible {
            incompatible += 1;
        }
    }
    report(
        10,
        nonzero == 0 && incompatible == 0,
        format!("{nonzero} nonzero Δ_ρ and {incompatible} incompatible pairs over 10^3 (A, B, ρ)"),
    );
}

#[test]
fn criterion_11_sampling_convergence() {
    let (a, b) = targets_from_theta(90.0).unwrap();
    let mut ok = true;
    let mut details = Vec::new();
    for gamma in [15.0, 45.0] {
        let (c, d) = family_fig3(gamma).unwrap();
        let s = worst_case_state(&a, &b, &c, &d).unwrap().state;
        let first =
            run_experiment(&a, &b, &c, &d, &s, 1_000_000, 2024, JointMode::Circuit).unwrap();
        let second =
            run_experiment(&a, &b, &c, &d, &s, 1_000_000, 2024, JointMode::Circuit).unwrap();
        let dev = (first.estimates.delta_rho - first.exact.delta_rho).abs();
        let se = first.estimates.stderr_rho;
        let identical = first.to_json() == second.to_json();
        ok &= dev <= 5.0 * se && identical;
        details.push(format!(
            "γ={gamma}°: |Δ̂−Δ| = {dev:.2e} vs 5·stderr = {:.2e}, identical reruns: {identical}",
            5.0 * se
        ));
    }
    report(11, ok, details.join("; "));
}

#[test]
fn criterion_12_worst_state() {
    let mut rng = common::rng(12);
    let mut worst_eq = 0.0f64;
    let mut worst_excess = f64::NEG_INFINITY;
    for i in 0..200 {
        let a = common::sharp(&mut rng);
        let b = common::sharp(&mut rng);
        let (c, d) = if i % 2 == 0 {
            (common::biased(&mut rng), common::biased(&mut rng))
        } else {
            let (c, d) = common::compatible_pair(&mut rng);
            (
                BinaryObservable::unbiased(c).unwrap(),
                BinaryObservable::unbiased(d).unwrap(),
            )
        };
        let delta = worst_case_inaccuracy(&a, &b, &c, &d).unwrap();
        let ws = worst_case_state(&a, &b, &c, &d).unwrap().state;
        let at_ws = combined_inaccuracy(&a, &b, &c, &d, &ws).unwrap().delta_rho;
        worst_eq = worst_eq.max((at_ws - delta).abs());
        for _ in 0..500 {
            let s = common::state(&mut rng);
            let v = combined_inaccuracy(&a, &b, &c, &d, &s).unwrap().delta_rho;
            worst_excess = worst_excess.max(v - delta);
        }
    }
    report(
        12,
        worst_eq <= 1e-12 && worst_excess <= 1e-9,
        format!(
            "max |Δ_ρ(worst state) − Δ| = {worst_eq:.1e} over 200 devices; \
             max Δ_ρ − Δ over 10^5 sampled states = {worst_excess:.1e}"
        ),
    );
}
