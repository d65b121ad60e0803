//! Finite-shot simulation of the joint and reference measurements.
//!
//! Every run draws from xoshiro256++ seeded through SplitMix64 (`seed_from_u64`). The
//! joint measurement, the `A` measurement and the `B` measurement use consecutive
//! `jump()`-separated streams of the same seed, so one seed pins the whole report.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::compatibility::{symmetrized_joint, JointObservable, JOINT_LABELS};
use crate::dilation::{
    assemble_povm, joint_probabilities, projective_probabilities, solve_circuit_params,
    CircuitParamsExport,
};
use crate::inaccuracy::{combined_inaccuracy, worst_case_inaccuracy};
use crate::qubit::{BinaryObservable, QubitState, Vec3};
use crate::tolerance::DEFAULT_TOL;
use crate::{Error, Result};

/// Identity of the pseudo-random generator, recorded in every report.
pub const GENERATOR: &str = "xoshiro256++ (rand_xoshiro 0.6, seed_from_u64 via SplitMix64)";

pub const BINARY_LABELS: [&str; 2] = ["+1", "-1"];

/// Counts of one measurement run, with the exact probabilities they were drawn from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShotRecord {
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    pub shots: u64,
    pub seed: Option<u64>,
    pub probabilities_exact: Vec<f64>,
    /// Infinite-shot record: frequencies are the exact probabilities.
    pub exact: bool,
}

impl ShotRecord {
    /// Infinite-statistics record carrying probabilities instead of counts.
    pub fn exact(labels: &[&str], probabilities: &[f64]) -> Self {
        ShotRecord {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            counts: vec![0; probabilities.len()],
            shots: 0,
            seed: None,
            probabilities_exact: probabilities.to_vec(),
            exact: true,
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        if self.exact {
            self.probabilities_exact.clone()
        } else {
            let n = self.shots as f64;
            self.counts.iter().map(|&c| c as f64 / n).collect()
        }
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }
}

fn default_labels(k: usize) -> Vec<String> {
    match k {
        2 => BINARY_LABELS.iter().map(|s| s.to_string()).collect(),
        4 => JOINT_LABELS.iter().map(|s| s.to_string()).collect(),
        _ => (0..k).map(|i| i.to_string()).collect(),
    }
}

/// Checks, clamps and renormalizes a probability vector.
fn normalize(probabilities: &[f64]) -> Result<Vec<f64>> {
    if probabilities.is_empty() {
        return Err(Error::InvalidProbabilities("empty distribution".into()));
    }
    if let Some(p) = probabilities
        .iter()
        .find(|p| !p.is_finite() || **p < -DEFAULT_TOL)
    {
        return Err(Error::InvalidProbabilities(format!("entry {p}")));
    }
    let clamped: Vec<f64> = probabilities.iter().map(|p| p.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if (total - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::InvalidProbabilities(format!("sum {total} != 1")));
    }
    Ok(clamped.into_iter().map(|p| p / total).collect())
}

fn draw_counts<R: Rng>(probabilities: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut cumulative: Vec<f64> = probabilities
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    // Close the distribution at its last non-zero entry so rounding never leaks mass
    // into trailing zero-probability outcomes.
    if let Some(last) = probabilities.iter().rposition(|&p| p > 0.0) {
        for c in &mut cumulative[last..] {
            *c = 1.0;
        }
    }
    let mut counts = vec![0u64; probabilities.len()];
    for _ in 0..shots {
        let u: f64 = rng.gen();
        let k = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(probabilities.len() - 1);
        counts[k] += 1;
    }
    counts
}

fn sample_with<R: Rng>(
    probabilities: &[f64],
    shots: u64,
    seed: u64,
    rng: &mut R,
) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::OutOfRange {
            what: "shots",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let p = normalize(probabilities)?;
    let counts = draw_counts(&p, shots, rng);
    Ok(ShotRecord {
        labels: default_labels(p.len()),
        counts,
        shots,
        seed: Some(seed),
        probabilities_exact: probabilities.to_vec(),
        exact: false,
    })
}

/// Multinomial draw of `shots` outcomes from `probabilities` with a fixed seed.
pub fn sample_counts(probabilities: &[f64], shots: u64, seed: u64) -> Result<ShotRecord> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    sample_with(probabilities, shots, seed, &mut rng)
}

/// Empirical statistical distance between two two-outcome records and its standard error.
///
/// `δ̂ = 2 Σ_i |p̂_i − q̂_i| = 4 |p̂+ − q̂+|`. Treating the two records as independent
/// binomial samples, the standard error is `4 √(p̂+(1 − p̂+)/N₁ + q̂+(1 − q̂+)/N₂)`; an
/// exact record contributes no variance.
pub fn empirical_distance(rec_a: &ShotRecord, rec_c: &ShotRecord) -> Result<(f64, f64)> {
    if rec_a.labels != rec_c.labels {
        return Err(Error::LabelMismatch {
            left: rec_a.labels.clone(),
            right: rec_c.labels.clone(),
        });
    }
    if rec_a.labels.len() != 2 {
        return Err(Error::Usage(
            "empirical distance needs two-outcome records".into(),
        ));
    }
    let p = rec_a.frequencies();
    let q = rec_c.frequencies();
    let delta = 2.0 * p.iter().zip(&q).map(|(x, y)| (x - y).abs()).sum::<f64>();
    let var = |r: &ShotRecord, f: f64| {
        if r.exact {
            0.0
        } else {
            f * (1.0 - f) / r.shots as f64
        }
    };
    let stderr = 4.0 * (var(rec_a, p[0]) + var(rec_c, q[0])).sqrt();
    Ok((delta, stderr))
}

/// How the joint measurement is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JointMode {
    /// Through the solved ancilla circuit; needs boundary-compatible unbiased marginals.
    Circuit,
    /// Directly from the symmetrized POVM; any compatible pair.
    DirectPovm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub a: Vec3,
    pub b: Vec3,
    pub c: Vec3,
    pub d: Vec3,
    pub c0: f64,
    pub d0: f64,
    pub state: Vec3,
    pub shots: u64,
    pub mode: JointMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counts {
    pub joint: Vec<u64>,
    #[serde(rename = "C")]
    pub c: Vec<u64>,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "B")]
    pub b: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimates {
    #[serde(rename = "delta_AC")]
    pub delta_ac: f64,
    #[serde(rename = "delta_BD")]
    pub delta_bd: f64,
    pub delta_rho: f64,
    #[serde(rename = "stderr_AC")]
    pub stderr_ac: f64,
    #[serde(rename = "stderr_BD")]
    pub stderr_bd: f64,
    /// `stderr_AC + stderr_BD`: the C and D counts share one record, so the two terms
    /// are correlated and their errors are added linearly.
    pub stderr_rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactValues {
    #[serde(rename = "delta_AC")]
    pub delta_ac: f64,
    #[serde(rename = "delta_BD")]
    pub delta_bd: f64,
    pub delta_rho: f64,
    pub delta_worst: f64,
    pub joint_probabilities: [f64; 4],
    #[serde(rename = "A_probabilities")]
    pub a_probabilities: [f64; 2],
    #[serde(rename = "B_probabilities")]
    pub b_probabilities: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub counts: Counts,
    pub estimates: Estimates,
    pub exact: ExactValues,
    pub delta_lb: f64,
    pub seed: u64,
    pub generator: &'static str,
    /// No decoherence or readout noise is modelled.
    pub ideal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitParamsExport>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Row and column sums of a four-outcome record: the `C` and `D` records.
pub fn joint_marginals(joint: &ShotRecord) -> (ShotRecord, ShotRecord) {
    let n = &joint.counts;
    let p = &joint.probabilities_exact;
    let make = |counts: Vec<u64>, probs: Vec<f64>| ShotRecord {
        labels: default_labels(2),
        counts,
        shots: joint.shots,
        seed: joint.seed,
        probabilities_exact: probs,
        exact: joint.exact,
    };
    (
        make(
            vec![n[0] + n[1], n[2] + n[3]],
            vec![p[0] + p[1], p[2] + p[3]],
        ),
        make(
            vec![n[0] + n[2], n[1] + n[3]],
            vec![p[0] + p[2], p[1] + p[3]],
        ),
    )
}

/// Simulates the full protocol: one joint measurement of `M` on `shots` copies of the
/// state (giving the `C` and `D` statistics from the same record) and separate projective
/// measurements of `A` and `B` with `shots` copies each.
#[allow(clippy::too_many_arguments)]
pub fn run_experiment(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
    state: &QubitState,
    shots: u64,
    seed: u64,
    mode: JointMode,
) -> Result<ExperimentReport> {
    if shots == 0 {
        return Err(Error::OutOfRange {
            what: "shots",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let exact_report = combined_inaccuracy(a, b, c, d, state)?;
    let (joint, circuit): (JointObservable, _) = match mode {
        JointMode::Circuit => {
            let params = solve_circuit_params(c, d)?;
            (assemble_povm(&params), Some(params.export()))
        }
        JointMode::DirectPovm => (symmetrized_joint(c, d), None),
    };
    let joint_p = joint_probabilities(&joint, state)?;
    let (pa_plus, pa_minus) = projective_probabilities(a, state)?;
    let (pb_plus, pb_minus) = projective_probabilities(b, state)?;

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let joint_rec = sample_with(&joint_p, shots, seed, &mut rng)?;
    rng.jump();
    let a_rec = sample_with(&[pa_plus, pa_minus], shots, seed, &mut rng)?;
    rng.jump();
    let b_rec = sample_with(&[pb_plus, pb_minus], shots, seed, &mut rng)?;
    let (c_rec, d_rec) = joint_marginals(&joint_rec);

    let (delta_ac, stderr_ac) = empirical_distance(&a_rec, &c_rec)?;
    let (delta_bd, stderr_bd) = empirical_distance(&b_rec, &d_rec)?;

    Ok(ExperimentReport {
        config: ExperimentConfig {
            a: a.vector(),
            b: b.vector(),
            c: c.vector(),
            d: d.vector(),
            c0: c.bias(),
            d0: d.bias(),
            state: state.bloch(),
            shots,
            mode,
        },
        counts: Counts {
            joint: joint_rec.counts.clone(),
            c: c_rec.counts,
            d: d_rec.counts,
            a: a_rec.counts,
            b: b_rec.counts,
        },
        estimates: Estimates {
            delta_ac,
            delta_bd,
            delta_rho: delta_ac + delta_bd,
            stderr_ac,
            stderr_bd,
            stderr_rho: stderr_ac + stderr_bd,
        },
        exact: ExactValues {
            delta_ac: exact_report.delta_ac,
            delta_bd: exact_report.delta_bd,
            delta_rho: exact_report.delta_rho,
            delta_worst: worst_case_inaccuracy(a, b, c, d)?,
            joint_probabilities: joint_p,
            a_probabilities: [pa_plus, pa_minus],
            b_probabilities: [pb_plus, pb_minus],
        },
        delta_lb: exact_report.delta_lb,
        seed,
        generator: GENERATOR,
        ideal: true,
        circuit,
    })
}
