//! Proper rotations of the Bloch ball and their SU(2) lifts.

use num_complex::Complex64;
use serde::Serialize;

use crate::qubit::Vec3;
use crate::tolerance::DEFAULT_TOL;
use crate::{Error, Result};

/// A 3×3 proper orthogonal matrix acting on Bloch vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

/// Axis–angle form of a rotation. `angle` is in radians, in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisAngle {
    pub axis: Vec3,
    pub angle: f64,
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Right-handed rotation by `angle` radians about the unit vector `axis` (Rodrigues).
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Rotation {
        let n = axis.normalized(0.0).unwrap_or(Vec3::Z);
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (n.x, n.y, n.z);
        Rotation {
            m: [
                [c + t * x * x, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, c + t * y * y, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, c + t * z * z],
            ],
        }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn inverse(&self) -> Rotation {
        let m = &self.m;
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m[j][i];
            }
        }
        Rotation { m: t }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Rotation { m: out }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry of `|RᵀR − 𝟙|`.
    pub fn orthogonality_error(&self) -> f64 {
        let p = self.inverse().compose(self);
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                err = err.max((p.m[i][j] - id).abs());
            }
        }
        err
    }

    pub fn axis_angle(&self) -> AxisAngle {
        let m = &self.m;
        let sin_axis = Vec3::new(m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]) * 0.5;
        let cos = 0.5 * (m[0][0] + m[1][1] + m[2][2] - 1.0);
        let sin = sin_axis.norm();
        let angle = sin.atan2(cos);
        if sin > 1e-9 {
            return AxisAngle {
                axis: sin_axis / sin,
                angle,
            };
        }
        if cos > 0.0 {
            return AxisAngle {
                axis: Vec3::Z,
                angle: 0.0,
            };
        }
        // Half-turn: (R + 𝟙)/2 = n nᵀ. Take the column with the largest diagonal entry.
        let k = (0..3)
            .max_by(|&a, &b| m[a][a].total_cmp(&m[b][b]))
            .unwrap_or(0);
        let col = Vec3::new(
            0.5 * (m[0][k] + if k == 0 { 1.0 } else { 0.0 }),
            0.5 * (m[1][k] + if k == 1 { 1.0 } else { 0.0 }),
            0.5 * (m[2][k] + if k == 2 { 1.0 } else { 0.0 }),
        );
        let mut axis = col.normalized(0.0).unwrap_or(Vec3::Z);
        let first = [axis.x, axis.y, axis.z]
            .into_iter()
            .find(|c| c.abs() > 1e-12)
            .unwrap_or(1.0);
        if first < 0.0 {
            axis = -axis;
        }
        AxisAngle {
            axis,
            angle: std::f64::consts::PI,
        }
    }

    /// SU(2) element `U = cos(θ/2)𝟙 − i sin(θ/2) n·σ`, so that `U (v·σ) U† = (Rv)·σ`.
    pub fn to_su2(&self) -> [[Complex64; 2]; 2] {
        let AxisAngle { axis: n, angle } = self.axis_angle();
        let (s, c) = (0.5 * angle).sin_cos();
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        // n·σ = [[z, x − iy], [x + iy, −z]]
        let ns = [
            [one * n.z, Complex64::new(n.x, -n.y)],
            [Complex64::new(n.x, n.y), -one * n.z],
        ];
        [
            [one * c - i * s * ns[0][0], -i * s * ns[0][1]],
            [-i * s * ns[1][0], one * c - i * s * ns[1][1]],
        ]
    }
}

/// The deterministic proper rotation taking unit `u` to unit `v`.
///
/// Rotation is about `u × v` by the angle between them. For antipodal inputs the axis is
/// the component of the coordinate axis least aligned with `u` (ties to the lower index)
/// orthogonal to `u`, e.g. `x` for `u = z`.
pub fn rotation_between(u: Vec3, v: Vec3) -> Result<Rotation> {
    let u = require_unit(u, "rotation source")?;
    let v = require_unit(v, "rotation target")?;

    let k = u.cross(&v);
    let cos = u.dot(&v);
    let k_norm = k.norm();
    if k_norm < 1e-14 {
        if cos > 0.0 {
            return Ok(Rotation::IDENTITY);
        }
        return Ok(Rotation::from_axis_angle(
            perpendicular_to(u),
            std::f64::consts::PI,
        ));
    }
    // Re-orthogonalize the axis against u; keeps R·u = v accurate near the antipode.
    let axis = (k - u * k.dot(&u)).normalized(0.0).unwrap_or(k / k_norm);
    Ok(Rotation::from_axis_angle(axis, k_norm.atan2(cos)))
}

fn require_unit(v: Vec3, what: &'static str) -> Result<Vec3> {
    if !v.is_finite() {
        return Err(Error::NonFinite(what));
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NonUnitVector { what, norm });
    }
    Ok(v / norm)
}

pub(crate) fn perpendicular_to(u: Vec3) -> Vec3 {
    let comps = [u.x.abs(), u.y.abs(), u.z.abs()];
    let mut k = 0;
    for i in 1..3 {
        if comps[i] < comps[k] {
            k = i;
        }
    }
    let e = [Vec3::X, Vec3::Y, Vec3::Z][k];
    (e - u * e.dot(&u)).normalized(0.0).unwrap_or(Vec3::X)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn identity_for_equal_vectors() {
        let r = rotation_between(Vec3::Z, Vec3::Z).unwrap();
        assert_eq!(r, Rotation::IDENTITY);
    }

    #[test]
    fn quarter_turn_x_to_z() {
        let r = rotation_between(Vec3::X, Vec3::Z).unwrap();
        assert!(r.apply(Vec3::X).max_abs_diff(&Vec3::Z) < 1e-12);
        let aa = r.axis_angle();
        assert!(aa.axis.max_abs_diff(&Vec3::new(0.0, -1.0, 0.0)) < 1e-12);
        assert!((aa.angle - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn antipodal_uses_documented_axis() {
        let r = rotation_between(Vec3::Z, -Vec3::Z).unwrap();
        assert!(r.apply(Vec3::Z).max_abs_diff(&-Vec3::Z) < 1e-12);
        let aa = r.axis_angle();
        assert!(aa.axis.max_abs_diff(&Vec3::X) < 1e-12);
        assert!((aa.angle - PI).abs() < 1e-12);
    }

    #[test]
    fn near_antipodal_is_accurate() {
        let u = Vec3::Z;
        let v = Vec3::new(1e-9, 0.0, -1.0).normalized(0.0).unwrap();
        let r = rotation_between(u, v).unwrap();
        assert!(r.apply(u).max_abs_diff(&v) < 1e-12);
        assert!(r.orthogonality_error() < 1e-12);
    }

    #[test]
    fn rejects_non_unit() {
        assert!(matches!(
            rotation_between(Vec3::new(0.0, 0.0, 2.0), Vec3::Z),
            Err(Error::NonUnitVector { .. })
        ));
    }

    #[test]
    fn su2_lift_matches_so3_action() {
        let r = Rotation::from_axis_angle(Vec3::new(0.3, -0.5, 0.8), 2.1);
        let u = r.to_su2();
        let w = Vec3::new(0.2, 0.7, -0.4);
        let e = crate::qubit::Effect::new(0.0, w).to_dense();
        // U E U†
        let mut ue = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        ue[i][j] += u[i][k] * e[k][l] * u[j][l].conj();
                    }
                }
            }
        }
        let back = crate::qubit::Effect::from_dense(&ue);
        assert!(back.vector.max_abs_diff(&r.apply(w)) < 1e-12);
    }

    #[test]
    fn axis_angle_round_trip() {
        for &(axis, angle) in &[
            (Vec3::new(1.0, 2.0, 3.0), 0.4),
            (Vec3::new(-1.0, 0.5, 0.0), PI),
            (Vec3::new(0.0, -1.0, 0.0), 3.0),
        ] {
            let r = Rotation::from_axis_angle(axis, angle);
            let aa = r.axis_angle();
            let back = Rotation::from_axis_angle(aa.axis, aa.angle);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((back.m[i][j] - r.m[i][j]).abs() < 1e-12);
                }
            }
        }
    }
}
