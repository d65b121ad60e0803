//! Optimal compatible approximators reach the lower bound at every opening angle.

use murkit::compatibility::compatible_unbiased;
use murkit::{
    incompatibility_degree, optimal_approximators, targets_from_theta, worst_case_inaccuracy,
    BinaryObservable, Rotation, Vec3,
};

fn main() -> murkit::Result<()> {
    println!(
        "{:>6}  {:>32}  {:>14}  {:>14}",
        "theta", "c", "delta", "delta_lb"
    );
    for theta in [10.0, 45.0, 90.0, 135.0, 170.0] {
        let (a, b) = targets_from_theta(theta)?;
        let (c, d) = optimal_approximators(&a, &b)?;
        println!(
            "{theta:>6}  {:>32}  {:>14.12}  {:>14.12}",
            c.vector().to_string(),
            worst_case_inaccuracy(&a, &b, &c, &d)?,
            incompatibility_degree(a.vector(), b.vector())?
        );
        assert!(compatible_unbiased(c.vector(), d.vector())?.margin.abs() < 1e-12);
    }

    // The construction does not depend on the targets lying in the xz-plane.
    let rot = Rotation::from_axis_angle(Vec3::new(1.0, 2.0, 3.0), 0.8);
    let (a0, b0) = targets_from_theta(60.0)?;
    let a = BinaryObservable::sharp(rot.apply(a0.vector()))?;
    let b = BinaryObservable::sharp(rot.apply(b0.vector()))?;
    let (c, d) = optimal_approximators(&a, &b)?;
    println!(
        "\nrotated targets, theta = 60: delta - delta_lb = {:.1e}",
        worst_case_inaccuracy(&a, &b, &c, &d)? - incompatibility_degree(a.vector(), b.vector())?
    );
    Ok(())
}
