//! Target pairs, the two experimental approximator families, and the optimal
//! (bound-attaining) compatible approximators.
//!
//! All angles at this interface are degrees. Vectors are written `(x, z)` in the
//! plane of the configuration and embedded as `(x, 0, z)`.

use crate::qubit::{BinaryObservable, Vec3};
use crate::tolerance::LINALG_TOL;
use crate::{Error, Result};

fn check_range(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value,
            lo,
            hi,
        })
    }
}

/// Sharp targets symmetric about `z` with opening angle `θ`:
/// `a = (−sin(θ/2), cos(θ/2))`, `b = (sin(θ/2), cos(θ/2))`.
pub fn targets_from_theta(theta_deg: f64) -> Result<(BinaryObservable, BinaryObservable)> {
    check_range("theta", theta_deg, 0.0, 180.0)?;
    let (s, k) = (0.5 * theta_deg.to_radians()).sin_cos();
    Ok((
        BinaryObservable::sharp(Vec3::xz(-s, k))?,
        BinaryObservable::sharp(Vec3::xz(s, k))?,
    ))
}

/// Unbiased pair `c = (−sinγ cosγ, sin²γ)`, `d = (sinγ cosγ, cos²γ)`, `γ ∈ [0°, 90°]`.
///
/// The end points of `c` and `d` are diametrically opposite on the circle of radius ½
/// centred at `(0, ½)`, so `c·d = 0` and `|c ± d| = 1`.
pub fn family_fig3(gamma_deg: f64) -> Result<(BinaryObservable, BinaryObservable)> {
    check_range("gamma", gamma_deg, 0.0, 90.0)?;
    let (s, c) = gamma_deg.to_radians().sin_cos();
    Ok((
        BinaryObservable::unbiased(Vec3::xz(-s * c, s * s))?,
        BinaryObservable::unbiased(Vec3::xz(s * c, c * c))?,
    ))
}

/// Unbiased pair `c = (−1/[1 + cot(φ/2)], 1/[1 + tan(φ/2)])`, `d` mirrored in `x`.
///
/// Evaluated as `sin/(sin + cos)` and `cos/(sin + cos)` of `φ/2`, which is finite on the
/// closed range `[0°, 180°]` and gives the analytic limits at both ends.
pub fn family_fig4(phi_deg: f64) -> Result<(BinaryObservable, BinaryObservable)> {
    check_range("phi", phi_deg, 0.0, 180.0)?;
    let (s, c) = (0.5 * phi_deg.to_radians()).sin_cos();
    let across = s / (s + c);
    let up = c / (s + c);
    Ok((
        BinaryObservable::unbiased(Vec3::xz(-across, up))?,
        BinaryObservable::unbiased(Vec3::xz(across, up))?,
    ))
}

/// Optimal compatible approximators of two sharp observables.
///
/// In the plane of `a` and `b`, take the isosceles right triangle inscribed in the unit
/// circle with its apex on the bisector `n = (a+b)/|a+b|` and its hypotenuse along
/// `m = (b−a)/|b−a|`. `c` is the foot of the perpendicular from `a` onto the leg from `n`
/// to `−m`, and `d` the mirror image. With `s = sin(θ/2)`, `k = cos(θ/2)` and
/// `t = (1 − s + k)/2` this is `c = (t − 1)m + t n`, `d = (1 − t)m + t n`, giving
/// `Δ = 2(s + k − 1) = Δ_lb`. Collinear targets return `(A, B)` unchanged.
pub fn optimal_approximators(
    a: &BinaryObservable,
    b: &BinaryObservable,
) -> Result<(BinaryObservable, BinaryObservable)> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    let (av, bv) = (a.vector(), b.vector());
    if av.cross(&bv).norm() <= LINALG_TOL {
        return Ok((*a, *b));
    }
    let sum = av + bv;
    let diff = bv - av;
    let k = 0.5 * sum.norm();
    let s = 0.5 * diff.norm();
    let n = sum / sum.norm();
    let m = diff / diff.norm();
    let t = 0.5 * (1.0 - s + k);
    Ok((
        BinaryObservable::unbiased(m * (t - 1.0) + n * t)?,
        BinaryObservable::unbiased(m * (1.0 - t) + n * t)?,
    ))
}
