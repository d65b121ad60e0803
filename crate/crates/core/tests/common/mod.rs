#![allow(dead_code)]

use std::f64::consts::PI;

use murkit::{BinaryObservable, QubitState, Rotation, Vec3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn unit(rng: &mut StdRng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Uniform in the unit ball.
pub fn in_ball(rng: &mut StdRng) -> Vec3 {
    unit(rng) * rng.gen::<f64>().cbrt()
}

pub fn rotation(rng: &mut StdRng) -> Rotation {
    Rotation::from_axis_angle(unit(rng), rng.gen_range(0.0..PI))
}

pub fn sharp(rng: &mut StdRng) -> BinaryObservable {
    BinaryObservable::sharp(unit(rng)).unwrap()
}

pub fn state(rng: &mut StdRng) -> QubitState {
    if rng.gen_bool(0.5) {
        QubitState::new(unit(rng)).unwrap()
    } else {
        QubitState::new(in_ball(rng)).unwrap()
    }
}

pub fn compat_sum(c: Vec3, d: Vec3) -> f64 {
    (c + d).norm() + (c - d).norm()
}

/// Scales `(c, d)` onto the compatibility boundary `|c+d| + |c−d| = 2`.
pub fn to_boundary(c: Vec3, d: Vec3) -> (Vec3, Vec3) {
    let k = 2.0 / compat_sum(c, d);
    (c * k, d * k)
}

/// Random compatible unbiased pair; a third land on the boundary.
pub fn compatible_pair(rng: &mut StdRng) -> (Vec3, Vec3) {
    let (c, d) = (in_ball(rng), in_ball(rng));
    if compat_sum(c, d) > 2.0 || rng.gen_bool(1.0 / 3.0) {
        to_boundary(c, d)
    } else {
        (c, d)
    }
}

/// Bias in `[0, 2]` and a vector short enough for a valid observable.
pub fn biased(rng: &mut StdRng) -> BinaryObservable {
    let t: f64 = rng.gen_range(0.0..=2.0);
    let len = t.min(2.0 - t) * rng.gen::<f64>();
    BinaryObservable::new(t, unit(rng) * len).unwrap()
}
