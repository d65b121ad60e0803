//! Solves the ancilla-circuit parameters for boundary-compatible pairs and checks that the
//! induced POVM is the symmetrized joint observable.

use murkit::{
    assemble_povm, family_fig4, joint_probabilities, solve_circuit_params, symmetrized_joint,
    BinaryObservable, QubitState, Vec3,
};

fn main() -> murkit::Result<()> {
    let s = QubitState::up();
    for phi in [0.0, 60.0, 90.0, 150.0, 180.0] {
        let (c, d) = family_fig4(phi)?;
        let params = solve_circuit_params(&c, &d)?;
        let export = params.export();
        let povm = assemble_povm(&params);
        let p = joint_probabilities(&povm, &s)?;
        println!(
            "phi = {phi:>5}: omega = {:.9}  R = {:.3} deg about {}  round trip {:.1e}  p(|0>) = {:.4?}",
            params.omega_weight(),
            export.r_angle_deg,
            export.r_axis,
            povm.max_abs_diff(&symmetrized_joint(&c, &d)),
            p
        );
    }

    // Interior pairs have a full-rank joint effect and no circuit of this form.
    let c = BinaryObservable::unbiased(Vec3::X * 0.3)?;
    let d = BinaryObservable::unbiased(Vec3::Z * 0.3)?;
    if let Err(e) = solve_circuit_params(&c, &d) {
        println!("\ninterior pair: {e}");
    }
    Ok(())
}
