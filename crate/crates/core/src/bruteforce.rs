//! Grid search for the worst-case state over pure states.
//!
//! Evaluates `Δ_ρ` on a Fibonacci lattice of the Bloch sphere, then refines around the
//! best few lattice points with two levels of local angular grids, each ten times finer
//! than the last. Only the definition of `Δ_ρ` is used, so this serves as an oracle for
//! the closed form in [`crate::inaccuracy`].

use std::f64::consts::PI;

use crate::inaccuracy::statistical_distance;
use crate::qubit::{BinaryObservable, QubitState, Vec3};
use crate::rotation::perpendicular_to;
use crate::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 100_000;
pub const MIN_GRID_POINTS: usize = 1_000;

/// Half-width of a refinement window, in grid steps.
const WINDOW: i32 = 10;
const MAX_SEEDS: usize = 4;
const SEED_SCAN: usize = 2_000;
const SEED_SEPARATION: f64 = 0.3;

/// Deterministic near-uniform point set on the unit sphere.
#[derive(Clone, Debug)]
pub struct FibonacciLattice {
    points: Vec<Vec3>,
}

impl FibonacciLattice {
    pub fn new(n: usize) -> Self {
        let golden_angle = PI * (3.0 - 5f64.sqrt());
        let nf = n as f64;
        let points = (0..n)
            .map(|i| {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / nf;
                let rho = (1.0 - z * z).max(0.0).sqrt();
                let (s, c) = (golden_angle * i as f64).sin_cos();
                Vec3::new(rho * c, rho * s, z)
            })
            .collect();
        FibonacciLattice { points }
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Mean angular spacing, `sqrt(4π / n)`.
    pub fn spacing(&self) -> f64 {
        (4.0 * PI / self.points.len().max(1) as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceResult {
    /// Best value on the lattice alone.
    pub lattice_max: f64,
    /// Smallest lattice index attaining `lattice_max`.
    pub lattice_index: usize,
    /// Best value after local refinement (never below `lattice_max`).
    pub refined_max: f64,
    pub refined_state: Vec3,
}

/// Refined brute-force estimate of the worst-case inaccuracy `Δ`.
pub fn worst_case_bruteforce(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
    grid_points: usize,
) -> Result<f64> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::OutOfRange {
            what: "grid_points",
            value: grid_points as f64,
            lo: MIN_GRID_POINTS as f64,
            hi: f64::INFINITY,
        });
    }
    let lattice = FibonacciLattice::new(grid_points);
    Ok(search_worst_case(a, b, c, d, &lattice)?.refined_max)
}

/// Full search on a caller-provided lattice (reusable across many devices).
pub fn search_worst_case(
    a: &BinaryObservable,
    b: &BinaryObservable,
    c: &BinaryObservable,
    d: &BinaryObservable,
    lattice: &FibonacciLattice,
) -> Result<BruteForceResult> {
    a.require_sharp("A")?;
    b.require_sharp("B")?;
    if lattice.is_empty() {
        return Err(Error::OutOfRange {
            what: "grid_points",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let objective = |r: Vec3| -> f64 {
        // Lattice points are unit up to rounding; QubitState::pure_along renormalizes.
        let s = QubitState::pure_along(r).unwrap_or_else(QubitState::up);
        statistical_distance(a, c, &s) + statistical_distance(b, d, &s)
    };

    let values: Vec<f64> = lattice.points().iter().map(|&p| objective(p)).collect();
    let mut best_index = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best_index] {
            best_index = i;
        }
    }
    let lattice_max = values[best_index];

    let seeds = pick_seeds(lattice.points(), &values, best_index);
    let spacing = lattice.spacing();
    let mut refined_max = lattice_max;
    let mut refined_state = lattice.points()[best_index];
    for seed in seeds {
        let (value, point) = refine(&objective, seed, spacing);
        if value > refined_max {
            refined_max = value;
            refined_state = point;
        }
    }

    Ok(BruteForceResult {
        lattice_max,
        lattice_index: best_index,
        refined_max,
        refined_state,
    })
}

/// Up to [`MAX_SEEDS`] high-scoring lattice points, pairwise separated by at least
/// [`SEED_SEPARATION`] radians, always starting with the global lattice maximum.
fn pick_seeds(points: &[Vec3], values: &[f64], best: usize) -> Vec<Vec3> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let min_cos = SEED_SEPARATION.cos();
    let mut seeds = vec![points[best]];
    for &i in order.iter().take(SEED_SCAN) {
        if seeds.len() == MAX_SEEDS {
            break;
        }
        let p = points[i];
        if seeds.iter().all(|s| s.dot(&p) < min_cos) {
            seeds.push(p);
        }
    }
    seeds
}

fn refine<F: Fn(Vec3) -> f64>(objective: &F, start: Vec3, spacing: f64) -> (f64, Vec3) {
    let mut center = start;
    let mut best = objective(center);
    let mut half_width = spacing;
    for _level in 0..2 {
        // Re-center while the maximum sits on the window edge.
        for _ in 0..5 {
            let (value, point, on_edge) = scan_window(objective, center, half_width);
            if value > best {
                best = value;
                center = point;
            }
            if !on_edge {
                break;
            }
        }
        half_width *= 0.1;
    }
    (best, center)
}

fn scan_window<F: Fn(Vec3) -> f64>(
    objective: &F,
    center: Vec3,
    half_width: f64,
) -> (f64, Vec3, bool) {
    let e1 = perpendicular_to(center);
    let e2 = center.cross(&e1);
    let step = half_width / WINDOW as f64;
    let mut best = (f64::NEG_INFINITY, center, false);
    for i in -WINDOW..=WINDOW {
        for j in -WINDOW..=WINDOW {
            let t = e1 * (i as f64 * step) + e2 * (j as f64 * step);
            let angle = t.norm();
            let p = if angle > 0.0 {
                center * angle.cos() + t * (angle.sin() / angle)
            } else {
                center
            };
            let v = objective(p);
            if v > best.0 {
                best = (v, p, i.abs() == WINDOW || j.abs() == WINDOW);
            }
        }
    }
    best
}
