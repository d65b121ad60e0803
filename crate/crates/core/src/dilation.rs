//! Ancilla-assisted realization of a four-outcome joint observable.
//!
//! The circuit prepares an ancilla in `|ω⟩`, applies a system–ancilla unitary and
//! measures both qubits in the computational basis. Traced over the ancilla, this is
//! the POVM
//!
//! ```text
//! M±± = |⟨−|ω⟩|² |±⟩⟨±|
//! M±∓ = |⟨+|ω⟩|² R†|±⟩⟨±|R
//! ```
//!
//! in a frame where the `M++` projector points along `+z`. Only rank-one joint
//! observables have this form; for unbiased marginals that is exactly the boundary of
//! the compatibility region, `|c + d| + |c − d| = 2`.

use serde::Serialize;

use crate::compatibility::{compatible_unbiased, symmetrized_joint, JointObservable};
use crate::qubit::{outcome_probabilities, BinaryObservable, Effect, QubitState, Vec3};
use crate::rotation::{rotation_between, Rotation};
use crate::tolerance::DEFAULT_TOL;
use crate::{Error, Result};

/// Largest admissible small eigenvalue for an effect to count as rank one.
pub const RANK_ONE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircuitParams {
    omega_weight: f64,
    rotation: Rotation,
    frame: Rotation,
}

impl CircuitParams {
    /// `omega_weight = |⟨−|ω⟩|²`, `rotation` is the Bloch action of `R`, `frame` maps the
    /// lab frame to the one where `M++ ∝ |+⟩⟨+|`.
    pub fn new(omega_weight: f64, rotation: Rotation, frame: Rotation) -> Result<Self> {
        if !(omega_weight.is_finite() && (-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&omega_weight))
        {
            return Err(Error::OutOfRange {
                what: "omega_weight",
                value: omega_weight,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(CircuitParams {
            omega_weight: omega_weight.clamp(0.0, 1.0),
            rotation,
            frame,
        })
    }

    pub fn omega_weight(&self) -> f64 {
        self.omega_weight
    }

    pub fn rotation(&self) -> Rotation {
        self.rotation
    }

    pub fn frame(&self) -> Rotation {
        self.frame
    }

    pub fn export(&self) -> CircuitParamsExport {
        let r = self.rotation.axis_angle();
        let f = self.frame.axis_angle();
        CircuitParamsExport {
            omega_weight: self.omega_weight,
            r_axis: r.axis,
            r_angle_deg: r.angle.to_degrees(),
            frame_axis: f.axis,
            frame_angle_deg: f.angle.to_degrees(),
        }
    }
}

/// JSON form of [`CircuitParams`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CircuitParamsExport {
    pub omega_weight: f64,
    #[serde(rename = "R_axis")]
    pub r_axis: Vec3,
    #[serde(rename = "R_angle_deg")]
    pub r_angle_deg: f64,
    pub frame_axis: Vec3,
    pub frame_angle_deg: f64,
}

/// The joint observable induced by the circuit.
pub fn assemble_povm(p: &CircuitParams) -> JointObservable {
    let w = p.omega_weight;
    let rotated_axis = p.rotation.inverse().apply(Vec3::Z);
    let back = p.frame.inverse();
    let effect = |weight: f64, axis: Vec3| Effect::new(weight, back.apply(axis * weight));
    JointObservable::from_effects([
        [effect(w, Vec3::Z), effect(1.0 - w, rotated_axis)],
        [effect(1.0 - w, -rotated_axis), effect(w, -Vec3::Z)],
    ])
}

/// Circuit parameters realizing the symmetrized joint observable of `C` and `D`.
///
/// Requires unbiased, boundary-compatible marginals. Then `M++ = ω·Π((c+d)/|c+d|)` and
/// `M+- = (1−ω)·Π((c−d)/|c−d|)` with `ω = (1 + c·d)/2`; the frame takes `c + d` to `+z`
/// and `R` takes the frame image of `c − d` to `+z`.
pub fn solve_circuit_params(c: &BinaryObservable, d: &BinaryObservable) -> Result<CircuitParams> {
    if !c.is_unbiased(DEFAULT_TOL) || !d.is_unbiased(DEFAULT_TOL) {
        return Err(Error::Biased {
            c0: c.bias(),
            d0: d.bias(),
        });
    }
    let (cv, dv) = (c.vector(), d.vector());
    let compat = compatible_unbiased(cv, dv)?;
    if !compat.valid {
        return Err(Error::Incompatible {
            margin: compat.margin,
        });
    }
    let joint = symmetrized_joint(c, d);
    let max_small_eigenvalue = joint
        .flat()
        .iter()
        .map(Effect::min_eigenvalue)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_small_eigenvalue > RANK_ONE_TOL {
        return Err(Error::NotRankOne {
            max_small_eigenvalue,
        });
    }

    let omega_weight = 0.5 * (1.0 + cv.dot(&dv));
    let frame = match (cv + dv).normalized(DEFAULT_TOL) {
        Some(n) => rotation_between(n, Vec3::Z)?,
        None => Rotation::IDENTITY,
    };
    let rotation = match (cv - dv).normalized(DEFAULT_TOL) {
        Some(n) => rotation_between(frame.apply(n).normalized(0.0).unwrap_or(Vec3::Z), Vec3::Z)?,
        None => Rotation::IDENTITY,
    };
    CircuitParams::new(omega_weight, rotation, frame)
}

/// Outcome probabilities of a projective measurement in the eigenbasis of a sharp observable.
pub fn projective_probabilities(o: &BinaryObservable, s: &QubitState) -> Result<(f64, f64)> {
    o.require_sharp("O")?;
    Ok(outcome_probabilities(o, s))
}

/// `[p++, p+-, p-+, p--]` with `p_ij = (t_ij + r·w_ij)/2`.
pub fn joint_probabilities(m: &JointObservable, s: &QubitState) -> Result<[f64; 4]> {
    if !m.is_valid() {
        return Err(Error::InvalidJoint {
            min_eigenvalue: m.min_eigenvalue(),
        });
    }
    Ok(m.flat().map(|e| e.probability(s)))
}
