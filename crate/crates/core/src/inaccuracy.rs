//! Statistical-distance inaccuracy of approximating sharp targets `A`, `B` by `C`, `D`.
//!
//! For a state `ρ` the distance between two binary observables is
//! `δ_ρ(O1, O2) = 2 Σ_i |p_i¹ − p_i²|`, the combined inaccuracy is
//! `Δ_ρ = δ_ρ(A, C) + δ_ρ(B, D)`, and the device figure of merit is its maximum over
//! states, `Δ = max_ρ Δ_ρ`.
//!
//! Writing `u = a − c`, `v = b − d`, `α = 1 − c0`, `β = 1 − d0`, one has
//! `Δ_ρ/2 = |α + r·u| + |β + r·v| = max(|α + β + r·(u+v)|, |α − β + r·(u−v)|)`, so
//!
//! ```text
//! Δ = 2 · max(|α + β| + |u + v|, |α − β| + |u − v|)
//! ```
//!
//! attained on the pure state along the winning branch vector. The Fibonacci-lattice
//! search in [`crate::bruteforce`] is the independent check of this closed form.

use serde::Serialize;

use crate::compatibility::incompatibility_degree;
use crate::qubit::{outcome_probabilities, BinaryObservable, QubitState, Vec3};
use crate::tolerance::LINALG_TOL;
use crate::Result;

pub use crate::bruteforce::worst_case_bruteforce;

/// `δ_ρ(O1, O2) = 2(|p+¹ − p+²| + |p−¹ − p−²|)`, evaluated from outcome probabilities.
pub fn statistical_distance(o1: &BinaryObservable, o2: &BinaryObservable, s: &QubitState) -> f64 {
    let (p1, q1) = outcome_probabilities(o1, s);
    let (p2, q2) = outcome_probabilities(o2, s);
    2.0 * ((p1 - p2).abs() + (q1 - q2).abs())
}

/// Inaccuracies of one approximating device on one state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InaccuracyReport {
    #[serde(rename = "delta_AC")]
    pub delta_ac: f64,
    #[serde(rename = "delta_BD")]
    pub delta_bd: f64,
    pub delta_rho: f64,
    /// Worst-case inaccuracy `Δ`, present when the report was taken at the worst-case state.
    pub delta_worst: Option<f64>,
    pub delta_lb: f64,
    #[serde(rename = "state")]
    pub state_used: QubitState,
    pub degenerate: bool,
}

/// `Δ_ρ(A, B; C, D)` together with its two parts and `Δ_lb(A, B)`.
pub fn combined_inaccuracy(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
    s: &QubitState,
) -> Result<InaccuracyReport> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    let delta_ac = statistical_distance(a, c, s);
    let delta_bd = statistical_distance(b, d, s);
    Ok(InaccuracyReport {
        delta_ac,
        delta_bd,
        delta_rho: delta_ac + delta_bd,
        delta_worst: None,
        delta_lb: incompatibility_degree(a.vector(), b.vector())?,
        state_used: *s,
        degenerate: false,
    })
}

/// Evaluates the device at its worst-case state and fills in `delta_worst`.
pub fn inaccuracy_at_worst(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
) -> Result<InaccuracyReport> {
    let worst = worst_case_state(a, b, c, d)?;
    let mut report = combined_inaccuracy(a, b, c, d, &worst.state)?;
    report.delta_worst = Some(worst_case_inaccuracy(a, b, c, d)?);
    report.degenerate = worst.degenerate;
    Ok(report)
}

/// The two branch terms of the closed form, before the factor 2.
#[derive(Clone, Copy, Debug)]
struct Branches {
    sum_bias: f64,
    sum_vec: Vec3,
    diff_bias: f64,
    diff_vec: Vec3,
}

impl Branches {
    fn new(
        a: &BinaryObservable,
        b: &BinaryObservable,
        c: &BinaryObservable,
        d: &BinaryObservable,
    ) -> Self {
        let alpha = a.bias() - c.bias();
        let beta = b.bias() - d.bias();
        let u = a.vector() - c.vector();
        let v = b.vector() - d.vector();
        Branches {
            sum_bias: alpha + beta,
            sum_vec: u + v,
            diff_bias: alpha - beta,
            diff_vec: u - v,
        }
    }

    fn sum_value(&self) -> f64 {
        self.sum_bias.abs() + self.sum_vec.norm()
    }

    fn diff_value(&self) -> f64 {
        self.diff_bias.abs() + self.diff_vec.norm()
    }
}

/// Pure state maximizing `Δ_ρ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorstCaseState {
    pub state: QubitState,
    /// Every state is a maximizer (`a − c = b − d = 0`); `state` is then `+z`.
    pub degenerate: bool,
}

/// Worst-case state for the device `(C, D)` approximating sharp `(A, B)`.
///
/// The branch with the larger value wins, ties going to `u + v`. The Bloch vector is
/// `±(u+v)/|u+v|` or `±(u−v)/|u−v|`, the sign following the branch's bias term
/// (`+` when it is zero). For unbiased `C`, `D` this is collinear with `a + b − c − d`
/// when `u·v > 0` and with `a − b − c + d` when `u·v < 0`.
pub fn worst_case_state(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
) -> Result<WorstCaseState> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    let br = Branches::new(a, b, c, d);
    let use_diff = br.diff_value() > br.sum_value() + LINALG_TOL;
    let sign = |bias: f64| if bias < 0.0 { -1.0 } else { 1.0 };
    let sum_dir = br
        .sum_vec
        .normalized(LINALG_TOL)
        .map(|n| n * sign(br.sum_bias));
    let diff_dir = br
        .diff_vec
        .normalized(LINALG_TOL)
        .map(|n| n * sign(br.diff_bias));
    let direction = if use_diff {
        diff_dir.or(sum_dir)
    } else {
        sum_dir.or(diff_dir)
    };
    Ok(match direction.and_then(QubitState::pure_along) {
        Some(state) => WorstCaseState {
            state,
            degenerate: false,
        },
        None => WorstCaseState {
            state: QubitState::up(),
            degenerate: true,
        },
    })
}

/// `Δ = 2 · max(|α + β| + |u + v|, |α − β| + |u − v|)`.
pub fn worst_case_inaccuracy(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
) -> Result<f64> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    let br = Branches::new(a, b, c, d);
    Ok(2.0 * br.sum_value().max(br.diff_value()))
}

/// A compatible pair with `Δ_ρ = 0` on the given state: `C = A` and the trivial
/// observable `D+ = (d0/2)·𝟙` with `d0 = 1 + r·b`.
pub fn zero_inaccuracy_approximators(
    a: &BinaryObservable,
    b: &BinaryObservable,
    s: &QubitState,
) -> Result<(BinaryObservable, BinaryObservable)> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    let d0 = (1.0 + s.bloch().dot(&b.vector())).clamp(0.0, 2.0);
    Ok((*a, BinaryObservable::trivial(d0)?))
}
