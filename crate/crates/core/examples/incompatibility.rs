//! Degree of incompatibility of two sharp observables as their opening angle varies.

use murkit::{incompatibility_degree, targets_from_theta, Vec3};

fn main() -> murkit::Result<()> {
    println!("{:>8}  {:>14}", "theta", "delta_lb");
    for theta in (0..=180).step_by(15) {
        let (a, b) = targets_from_theta(theta as f64)?;
        let lb = incompatibility_degree(a.vector(), b.vector())?;
        println!("{theta:>8}  {lb:>14.12}");
    }

    // Any two unit vectors work, not only the symmetric pair in the xz-plane.
    let a: Vec3 = "0.6,0.8,0".parse()?;
    let b = Vec3::Y;
    println!("\na = {a}, b = {b}: {:.12}", incompatibility_degree(a, b)?);

    match incompatibility_degree(Vec3::new(0.0, 0.0, 2.0), Vec3::X) {
        Err(e) => println!("rejected: {e}"),
        Ok(v) => println!("unexpected: {v}"),
    }
    Ok(())
}
