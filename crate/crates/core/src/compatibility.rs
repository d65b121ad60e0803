//! Joint measurability of two-outcome qubit observables.
//!
//! Two observables `C`, `D` are compatible when a four-outcome POVM `M` has them as
//! marginals. The candidate used throughout is the symmetrized product
//! `M_ij = (C_i D_j + D_j C_i)/2`, which reproduces the marginals by construction;
//! compatibility then reduces to positivity of its four effects.

use serde::Serialize;

use crate::qubit::{BinaryObservable, Effect, Validity, Vec3};
use crate::tolerance::DEFAULT_TOL;
use crate::{Error, Result};

/// Outcome labels in storage order: `M++`, `M+-`, `M-+`, `M--`.
pub const JOINT_LABELS: [&str; 4] = ["++", "+-", "-+", "--"];

/// Four-outcome POVM `{M_ij}` with `i` the first marginal's outcome and `j` the second's.
#[derive(Clone, Debug, PartialEq)]
pub struct JointObservable {
    effects: [[Effect; 2]; 2],
    source: Option<(BinaryObservable, BinaryObservable)>,
    min_eigenvalue: f64,
    valid: bool,
}

impl JointObservable {
    /// Wraps four effects given as `[[M++, M+-], [M-+, M--]]`.
    pub fn from_effects(effects: [[Effect; 2]; 2]) -> Self {
        Self::build(effects, None, DEFAULT_TOL)
    }

    fn build(
        effects: [[Effect; 2]; 2],
        source: Option<(BinaryObservable, BinaryObservable)>,
        tol: f64,
    ) -> Self {
        let min_eigenvalue = effects
            .iter()
            .flatten()
            .map(Effect::min_eigenvalue)
            .fold(f64::INFINITY, f64::min);
        let valid = effects
            .iter()
            .flatten()
            .all(|e| e.validity().margin >= -tol);
        JointObservable {
            effects,
            source,
            min_eigenvalue,
            valid,
        }
    }

    /// `M_ij` with `i, j ∈ {0 ↔ +, 1 ↔ −}`.
    pub fn effect(&self, i: usize, j: usize) -> Effect {
        self.effects[i][j]
    }

    pub fn effects(&self) -> [[Effect; 2]; 2] {
        self.effects
    }

    /// Effects in [`JOINT_LABELS`] order.
    pub fn flat(&self) -> [Effect; 4] {
        let e = &self.effects;
        [e[0][0], e[0][1], e[1][0], e[1][1]]
    }

    /// The pair this joint observable was built from, if any.
    pub fn source(&self) -> Option<&(BinaryObservable, BinaryObservable)> {
        self.source.as_ref()
    }

    /// All four effects positive (and `≤ 𝟙`) within tolerance.
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    /// Smallest eigenvalue across the four effects.
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// `[Σ_j M+j, Σ_j M−j]`: the first marginal.
    pub fn row_sums(&self) -> [Effect; 2] {
        let e = &self.effects;
        [e[0][0] + e[0][1], e[1][0] + e[1][1]]
    }

    /// `[Σ_i Mi+, Σ_i Mi−]`: the second marginal.
    pub fn column_sums(&self) -> [Effect; 2] {
        let e = &self.effects;
        [e[0][0] + e[1][0], e[0][1] + e[1][1]]
    }

    pub fn total(&self) -> Effect {
        let [a, b] = self.row_sums();
        a + b
    }

    /// Largest coefficient difference against another joint observable.
    pub fn max_abs_diff(&self, other: &JointObservable) -> f64 {
        self.flat()
            .iter()
            .zip(other.flat().iter())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn export(&self) -> JointExport {
        JointExport {
            effects: JOINT_LABELS
                .iter()
                .zip(self.flat())
                .map(|(label, e)| LabeledEffect {
                    label: (*label).to_string(),
                    weight: e.weight,
                    vector: e.vector,
                })
                .collect(),
            valid: self.valid,
            min_eigenvalue: self.min_eigenvalue,
        }
    }
}

/// JSON form of a [`JointObservable`].
#[derive(Clone, Debug, Serialize)]
pub struct JointExport {
    pub effects: Vec<LabeledEffect>,
    pub valid: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledEffect {
    pub label: String,
    pub weight: f64,
    pub vector: Vec3,
}

/// Symmetrized joint observable `M_ij = (C_i D_j + D_j C_i)/2`.
///
/// With `C_i = (t_i, w_i)` and `D_j = (s_j, x_j)` in Pauli form the anticommutator drops
/// the `w × x` term, leaving `M_ij = ((t_i s_j + w_i·x_j)/2, (t_i x_j + s_j w_i)/2)`.
/// The result may be invalid; check [`JointObservable::is_valid`].
pub fn symmetrized_joint(c: &BinaryObservable, d: &BinaryObservable) -> JointObservable {
    symmetrized_joint_with(c, d, DEFAULT_TOL)
}

pub fn symmetrized_joint_with(
    c: &BinaryObservable,
    d: &BinaryObservable,
    tol: f64,
) -> JointObservable {
    let ce = c.effects();
    let de = d.effects();
    let product = |ci: &Effect, dj: &Effect| {
        Effect::new(
            0.5 * (ci.weight * dj.weight + ci.vector.dot(&dj.vector)),
            (dj.vector * ci.weight + ci.vector * dj.weight) * 0.5,
        )
    };
    let effects = [
        [product(&ce[0], &de[0]), product(&ce[0], &de[1])],
        [product(&ce[1], &de[0]), product(&ce[1], &de[1])],
    ];
    JointObservable::build(effects, Some((*c, *d)), tol)
}

/// Compatibility of two unbiased observables: `|c + d| + |c − d| ≤ 2`.
///
/// The margin is `2 − |c + d| − |c − d|`, signed.
pub fn compatible_unbiased(c: Vec3, d: Vec3) -> Result<Validity> {
    compatible_unbiased_with(c, d, DEFAULT_TOL)
}

pub fn compatible_unbiased_with(c: Vec3, d: Vec3, tol: f64) -> Result<Validity> {
    for v in [c, d] {
        if !v.is_finite() {
            return Err(Error::NonFinite("compatibility input"));
        }
        let n = v.norm();
        if n > 1.0 + tol {
            return Err(Error::InvalidEffect {
                weight: 1.0,
                norm: n,
                margin: 1.0 - n,
            });
        }
    }
    let margin = 2.0 - (c + d).norm() - (c - d).norm();
    Ok(Validity::from_margin(margin, tol))
}

/// Result of [`compatible_symmetrized`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymmetrizedCheck {
    pub compatible: bool,
    pub min_eigenvalue: f64,
}

/// Joint measurability certified by positivity of the symmetrized joint observable.
pub fn compatible_symmetrized(c: &BinaryObservable, d: &BinaryObservable) -> SymmetrizedCheck {
    compatible_symmetrized_with(c, d, DEFAULT_TOL)
}

pub fn compatible_symmetrized_with(
    c: &BinaryObservable,
    d: &BinaryObservable,
    tol: f64,
) -> SymmetrizedCheck {
    let m = symmetrized_joint_with(c, d, tol);
    SymmetrizedCheck {
        compatible: m.is_valid(),
        min_eigenvalue: m.min_eigenvalue(),
    }
}

/// Degree of incompatibility of two sharp observables, `|a + b| + |a − b| − 2`.
pub fn incompatibility_degree(a: Vec3, b: Vec3) -> Result<f64> {
    for v in [a, b] {
        if !v.is_finite() {
            return Err(Error::NonFinite("incompatibility input"));
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NonUnitVector {
                what: "target observable",
                norm,
            });
        }
    }
    Ok(((a + b).norm() + (a - b).norm() - 2.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unbiased(x: f64, y: f64, z: f64) -> BinaryObservable {
        BinaryObservable::unbiased(Vec3::new(x, y, z)).unwrap()
    }

    #[test]
    fn identical_sharp_observables() {
        let z = BinaryObservable::sharp(Vec3::Z).unwrap();
        let m = symmetrized_joint(&z, &z);
        assert_eq!(m.effect(0, 0), Effect::new(1.0, Vec3::Z));
        assert_eq!(m.effect(0, 1), Effect::new(0.0, Vec3::ZERO));
        assert_eq!(m.effect(1, 0), Effect::new(0.0, Vec3::ZERO));
        assert_eq!(m.effect(1, 1), Effect::new(1.0, -Vec3::Z));
        assert!(m.is_valid());
    }

    #[test]
    fn optimal_pair_gives_half_projector() {
        let m = symmetrized_joint(&unbiased(-0.5, 0.0, 0.5), &unbiased(0.5, 0.0, 0.5));
        assert!(
            m.effect(0, 0)
                .max_abs_diff(&Effect::new(0.5, Vec3::new(0.0, 0.0, 0.5)))
                < 1e-15
        );
        assert!(m.is_valid());
        assert!(m.min_eigenvalue().abs() < 1e-15);
    }

    #[test]
    fn orthogonal_short_vectors_are_invalid() {
        let m = symmetrized_joint(&unbiased(0.9, 0.0, 0.0), &unbiased(0.0, 0.9, 0.0));
        assert!(!m.is_valid());
        assert!(m.effect(0, 1).min_eigenvalue() < 0.0);
    }

    #[test]
    fn unbiased_criterion_examples() {
        let v = compatible_unbiased(Vec3::new(-0.5, 0.0, 0.5), Vec3::new(0.5, 0.0, 0.5)).unwrap();
        assert!(v.valid);
        assert!(v.margin.abs() < 1e-15);

        let c = Vec3::new(0.3, -0.4, 0.5);
        assert!(compatible_unbiased(c, c).unwrap().valid);

        let v = compatible_unbiased(Vec3::new(0.9, 0.0, 0.0), Vec3::new(0.0, 0.9, 0.0)).unwrap();
        assert!(!v.valid);
        assert!((v.margin - (2.0 - 1.8 * 2f64.sqrt())).abs() < 1e-12);
        assert!((v.margin + 0.545584412272).abs() < 1e-9);

        assert!(compatible_unbiased(Vec3::new(1.5, 0.0, 0.0), Vec3::ZERO).is_err());
    }

    #[test]
    fn symmetrized_criterion_examples() {
        let z = BinaryObservable::sharp(Vec3::Z).unwrap();
        let trivial = BinaryObservable::trivial(1.3).unwrap();
        assert!(compatible_symmetrized(&z, &trivial).compatible);

        let x = BinaryObservable::sharp(Vec3::X).unwrap();
        let check = compatible_symmetrized(&z, &x);
        assert!(!check.compatible);
        assert!((check.min_eigenvalue - (1.0 - 2f64.sqrt()) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn incompatibility_degree_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = Vec3::xz(-s, s);
        let b = Vec3::xz(s, s);
        let lb = incompatibility_degree(a, b).unwrap();
        assert!((lb - 2.0 * (2f64.sqrt() - 1.0)).abs() < 1e-12);

        let h = 22.5f64.to_radians();
        let lb45 = incompatibility_degree(Vec3::xz(-h.sin(), h.cos()), Vec3::xz(h.sin(), h.cos()))
            .unwrap();
        assert!((lb45 - (2.0 / (2.0 - 2f64.sqrt()).sqrt() - 2.0)).abs() < 1e-12);

        assert_eq!(incompatibility_degree(a, a).unwrap(), 0.0);
        assert!(incompatibility_degree(Vec3::new(0.0, 0.0, 2.0), a).is_err());
    }

    #[test]
    fn export_has_four_labeled_records() {
        let z = BinaryObservable::sharp(Vec3::Z).unwrap();
        let json = serde_json::to_value(symmetrized_joint(&z, &z).export()).unwrap();
        let effects = json["effects"].as_array().unwrap();
        assert_eq!(effects.len(), 4);
        assert_eq!(effects[1]["label"], "+-");
        assert_eq!(json["valid"], true);
    }
}
