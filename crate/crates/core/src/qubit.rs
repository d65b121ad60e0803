//! Bloch-vector representation of qubit states, effects and two-outcome observables.
//!
//! Everything here is stored as Pauli coefficients. An operator `(t·𝟙 + w·σ)/2` is
//! carried as the pair `(t, w)`, a state `(𝟙 + r·σ)/2` as its Bloch vector `r`.
//! Dense matrices are only produced on request (see [`Effect::to_dense`]).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::tolerance::DEFAULT_TOL;
use crate::{Error, Result};

/// Real 3-vector. Used for Bloch vectors of states and of effects.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    /// Checked constructor for values coming from outside the crate.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("vector"))
        }
    }

    /// Embeds a vector given in the `(x, z)` plane as `(x, 0, z)`.
    pub const fn xz(x: f64, z: f64) -> Self {
        Vec3::new(x, 0.0, z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Unit vector along `self`, or `None` when the norm is below `eps`.
    pub fn normalized(&self, eps: f64) -> Option<Vec3> {
        let n = self.norm();
        if n > eps {
            Some(*self / n)
        } else {
            None
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn max_abs_diff(&self, other: &Vec3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Parses `"x,y,z"` or `"x,z"` (the latter with `y = 0`).
impl FromStr for Vec3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            what: "vector",
            input: s.to_string(),
        };
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| parse_err())?;
        let v = match parts.as_slice() {
            [x, z] => Vec3::xz(*x, *z),
            [x, y, z] => Vec3::new(*x, *y, *z),
            _ => return Err(parse_err()),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("vector"))
        }
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        <[f64; 3]>::deserialize(deserializer).map(Vec3::from)
    }
}

/// Outcome of a validity check: a boolean plus the signed slack behind it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Validity {
    pub valid: bool,
    pub margin: f64,
}

impl Validity {
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        Validity {
            valid: margin >= -tol,
            margin,
        }
    }
}

/// Positivity and `E ≤ 𝟙` for `(t·𝟙 + w·σ)/2`, i.e. `|w| ≤ min{t, 2 − t}`.
pub fn effect_is_valid(t: f64, w: Vec3) -> Validity {
    effect_is_valid_with(t, w, DEFAULT_TOL)
}

pub fn effect_is_valid_with(t: f64, w: Vec3, tol: f64) -> Validity {
    let margin = t.min(2.0 - t) - w.norm();
    Validity::from_margin(margin, tol)
}

/// A positive operator `(t·𝟙 + w·σ)/2`, stored by its Pauli coefficients.
///
/// Positivity is *not* enforced here: joint observables built from incompatible
/// marginals contain non-positive "effects" and are still useful as data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Effect {
    pub weight: f64,
    pub vector: Vec3,
}

/// Eigen-decomposition of an [`Effect`]: `λ± = (t ± |w|)/2`, eigenvector axis `w/|w|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectEigen {
    pub upper: f64,
    pub lower: f64,
    /// `None` when the effect is (numerically) a multiple of the identity.
    pub axis: Option<Vec3>,
}

impl Effect {
    pub const fn new(weight: f64, vector: Vec3) -> Self {
        Effect { weight, vector }
    }

    /// Rank-one projector `(𝟙 + n·σ)/2` for a unit `n`.
    pub const fn projector(n: Vec3) -> Self {
        Effect::new(1.0, n)
    }

    pub fn scaled(&self, s: f64) -> Effect {
        Effect::new(self.weight * s, self.vector * s)
    }

    pub fn validity(&self) -> Validity {
        effect_is_valid(self.weight, self.vector)
    }

    pub fn eigen(&self) -> EffectEigen {
        effect_eigen(self)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        0.5 * (self.weight - self.vector.norm())
    }

    /// Born-rule probability `tr(ρE) = (t + r·w)/2`.
    pub fn probability(&self, state: &QubitState) -> f64 {
        0.5 * (self.weight + state.bloch().dot(&self.vector))
    }

    pub fn max_abs_diff(&self, other: &Effect) -> f64 {
        (self.weight - other.weight)
            .abs()
            .max(self.vector.max_abs_diff(&other.vector))
    }

    /// Dense 2×2 matrix `(t·𝟙 + w·σ)/2` in the computational basis.
    pub fn to_dense(&self) -> [[Complex64; 2]; 2] {
        let Vec3 { x, y, z } = self.vector;
        let t = self.weight;
        [
            [
                Complex64::new(0.5 * (t + z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
            ],
            [
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (t - z), 0.0),
            ],
        ]
    }

    /// Inverse of [`Effect::to_dense`] for a Hermitian input.
    pub fn from_dense(m: &[[Complex64; 2]; 2]) -> Effect {
        let t = (m[0][0] + m[1][1]).re;
        let z = (m[0][0] - m[1][1]).re;
        let x = (m[0][1] + m[1][0]).re;
        let y = (m[1][0] - m[0][1]).im;
        Effect::new(t, Vec3::new(x, y, z))
    }
}

impl Add for Effect {
    type Output = Effect;
    fn add(self, o: Effect) -> Effect {
        Effect::new(self.weight + o.weight, self.vector + o.vector)
    }
}

pub fn effect_eigen(e: &Effect) -> EffectEigen {
    let n = e.vector.norm();
    EffectEigen {
        upper: 0.5 * (e.weight + n),
        lower: 0.5 * (e.weight - n),
        axis: e.vector.normalized(DEFAULT_TOL),
    }
}

/// Two-outcome observable `±1 ↦ O±` with `O+ = (b0·𝟙 + v·σ)/2` and `O− = 𝟙 − O+`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BinaryObservable {
    bias: f64,
    vector: Vec3,
}

impl BinaryObservable {
    pub fn new(bias: f64, vector: Vec3) -> Result<Self> {
        Self::with_tolerance(bias, vector, DEFAULT_TOL)
    }

    pub fn with_tolerance(bias: f64, vector: Vec3, tol: f64) -> Result<Self> {
        if !bias.is_finite() || !vector.is_finite() {
            return Err(Error::NonFinite("observable"));
        }
        let validity = effect_is_valid_with(bias, vector, tol);
        if !validity.valid {
            return Err(Error::InvalidEffect {
                weight: bias,
                norm: vector.norm(),
                margin: validity.margin,
            });
        }
        Ok(BinaryObservable { bias, vector })
    }

    /// Projective observable along a unit vector. Non-unit input is rejected.
    pub fn sharp(vector: Vec3) -> Result<Self> {
        Self::sharp_with_tolerance(vector, DEFAULT_TOL)
    }

    pub fn sharp_with_tolerance(vector: Vec3, tol: f64) -> Result<Self> {
        if !vector.is_finite() {
            return Err(Error::NonFinite("observable"));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NonUnitVector {
                what: "sharp observable",
                norm,
            });
        }
        Ok(BinaryObservable { bias: 1.0, vector })
    }

    /// Bias-one observable with `|v| ≤ 1`.
    pub fn unbiased(vector: Vec3) -> Result<Self> {
        Self::new(1.0, vector)
    }

    /// Observable whose effects are multiples of the identity: `O+ = (b0/2)·𝟙`.
    pub fn trivial(bias: f64) -> Result<Self> {
        Self::new(bias, Vec3::ZERO)
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn vector(&self) -> Vec3 {
        self.vector
    }

    pub fn plus(&self) -> Effect {
        Effect::new(self.bias, self.vector)
    }

    pub fn minus(&self) -> Effect {
        Effect::new(2.0 - self.bias, -self.vector)
    }

    /// `[O+, O−]`
    pub fn effects(&self) -> [Effect; 2] {
        [self.plus(), self.minus()]
    }

    pub fn is_sharp(&self, tol: f64) -> bool {
        (self.bias - 1.0).abs() <= tol && (self.vector.norm() - 1.0).abs() <= tol
    }

    pub fn is_unbiased(&self, tol: f64) -> bool {
        (self.bias - 1.0).abs() <= tol
    }

    pub(crate) fn require_sharp(&self, name: &'static str) -> Result<()> {
        if self.is_sharp(DEFAULT_TOL) {
            Ok(())
        } else {
            Err(Error::NotSharp(name))
        }
    }
}

/// Qubit density operator `ρ = (𝟙 + r·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    r: Vec3,
}

impl QubitState {
    pub fn new(r: Vec3) -> Result<Self> {
        Self::with_tolerance(r, DEFAULT_TOL)
    }

    pub fn with_tolerance(r: Vec3, tol: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite("state"));
        }
        let n = r.norm();
        if n > 1.0 + tol {
            return Err(Error::InvalidState(n));
        }
        Ok(QubitState { r })
    }

    /// Pure state along `direction`; the direction is normalized. `None` for a zero vector.
    pub fn pure_along(direction: Vec3) -> Option<Self> {
        direction.normalized(0.0).map(|r| QubitState { r })
    }

    pub fn maximally_mixed() -> Self {
        QubitState { r: Vec3::ZERO }
    }

    /// Computational-basis state `|+⟩` (Bloch vector `+z`).
    pub fn up() -> Self {
        QubitState { r: Vec3::Z }
    }

    pub fn bloch(&self) -> Vec3 {
        self.r
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.r.norm() - 1.0).abs() <= tol
    }
}

impl Serialize for QubitState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.r.serialize(serializer)
    }
}

/// `(p+, p−)` with `p+ = (b0 + r·v)/2` and `p− = 1 − p+`.
pub fn outcome_probabilities(o: &BinaryObservable, s: &QubitState) -> (f64, f64) {
    let p_plus = o.plus().probability(s);
    (p_plus, 1.0 - p_plus)
}
