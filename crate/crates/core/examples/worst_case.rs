//! Worst-case inaccuracy of a device: closed form, maximizing state, brute-force check,
//! and a compatible pair that is exact on one chosen state.

use murkit::{
    combined_inaccuracy, family_fig3, targets_from_theta, worst_case_bruteforce,
    worst_case_inaccuracy, worst_case_state, zero_inaccuracy_approximators, QubitState, Vec3,
};

fn main() -> murkit::Result<()> {
    let (a, b) = targets_from_theta(90.0)?;
    for gamma in [15.0, 30.0, 45.0] {
        let (c, d) = family_fig3(gamma)?;
        let delta = worst_case_inaccuracy(&a, &b, &c, &d)?;
        let worst = worst_case_state(&a, &b, &c, &d)?;
        let brute = worst_case_bruteforce(&a, &b, &c, &d, 100_000)?;
        let at_up = combined_inaccuracy(&a, &b, &c, &d, &QubitState::up())?;
        println!("gamma = {gamma:>4}:  delta = {delta:.9}  brute force = {brute:.9}");
        println!("              worst state = {}", worst.state.bloch());
        println!("              on |0>: delta_rho = {:.9}", at_up.delta_rho);
    }

    // Any single state admits a compatible pair with zero inaccuracy.
    let s = QubitState::new(Vec3::new(0.3, 0.1, -0.5))?;
    let (c, d) = zero_inaccuracy_approximators(&a, &b, &s)?;
    let report = combined_inaccuracy(&a, &b, &c, &d, &s)?;
    println!(
        "\nexact on {}: delta_rho = {}, but delta = {:.6} (lower bound {:.6})",
        s.bloch(),
        report.delta_rho,
        worst_case_inaccuracy(&a, &b, &c, &d)?,
        report.delta_lb
    );
    Ok(())
}
