//! Finite-shot simulation of the joint measurement at the worst-case state.

use murkit::{family_fig3, run_experiment, targets_from_theta, worst_case_state, JointMode};

fn main() -> murkit::Result<()> {
    let (a, b) = targets_from_theta(90.0)?;
    let seed = 7;
    for gamma in [15.0, 45.0] {
        let (c, d) = family_fig3(gamma)?;
        let state = worst_case_state(&a, &b, &c, &d)?.state;
        for shots in [1_000, 100_000, 1_000_000] {
            let r = run_experiment(&a, &b, &c, &d, &state, shots, seed, JointMode::Circuit)?;
            println!(
                "gamma = {gamma:>4}, shots = {shots:>7}: estimate {:.5} +/- {:.5}, exact {:.5}, bound {:.5}",
                r.estimates.delta_rho, r.estimates.stderr_rho, r.exact.delta_rho, r.delta_lb
            );
        }
    }

    let (c, d) = family_fig3(45.0)?;
    let state = worst_case_state(&a, &b, &c, &d)?.state;
    let report = run_experiment(&a, &b, &c, &d, &state, 10_000, seed, JointMode::Circuit)?;
    println!("\n{}", report.to_json());
    Ok(())
}
