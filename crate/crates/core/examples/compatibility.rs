//! Joint measurability of two noisy spin observables, by the norm criterion and by
//! positivity of the symmetrized joint observable.

use std::f64::consts::FRAC_1_SQRT_2;

use murkit::compatibility::{compatible_unbiased, JOINT_LABELS};
use murkit::{compatible_symmetrized, symmetrized_joint, BinaryObservable, Vec3};

fn main() -> murkit::Result<()> {
    // Orthogonal spin directions with shrinking sharpness; the boundary is at 1/sqrt(2).
    for eta in [0.5, 0.7, FRAC_1_SQRT_2, 0.75, 1.0] {
        let c = BinaryObservable::unbiased(Vec3::X * eta)?;
        let d = BinaryObservable::unbiased(Vec3::Z * eta)?;
        let crit = compatible_unbiased(c.vector(), d.vector())?;
        let sym = compatible_symmetrized(&c, &d);
        println!(
            "eta = {eta:.6}  margin = {:+.3e}  min eigenvalue = {:+.3e}  compatible: {}",
            crit.margin, sym.min_eigenvalue, sym.compatible
        );
    }

    // Biased pairs are checked through the symmetrized joint only.
    let c = BinaryObservable::new(0.8, Vec3::new(0.3, 0.0, 0.2))?;
    let d = BinaryObservable::new(1.1, Vec3::new(0.0, 0.4, -0.1))?;
    let joint = symmetrized_joint(&c, &d);
    println!("\nbiased pair, valid joint: {}", joint.is_valid());
    for (label, e) in JOINT_LABELS.iter().zip(joint.flat()) {
        println!("  M{label}: t = {:.4}, w = {}", e.weight, e.vector);
    }
    let rows = joint.row_sums();
    println!(
        "  row sums reproduce C+: {}",
        rows[0].max_abs_diff(&c.plus()) < 1e-15
    );
    Ok(())
}
