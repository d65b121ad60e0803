//! Measurement uncertainty for qubit joint measurements.
//!
//! Two sharp qubit observables `A`, `B` with Bloch vectors `a`, `b` can only be measured
//! together approximately, through a compatible pair `C`, `D`. This crate quantifies how
//! well such a device can do:
//!
//! - [`qubit`] and [`rotation`]: Bloch-vector arithmetic for states, effects and
//!   two-outcome observables.
//! - [`compatibility`]: the symmetrized joint observable, compatibility criteria and the
//!   degree of incompatibility `Δ_lb = |a + b| + |a − b| − 2`.
//! - [`inaccuracy`]: statistical distances, the worst-case inaccuracy `Δ` in closed form,
//!   its maximizing state, and the relation `Δ ≥ Δ_lb`. [`bruteforce`] checks the closed
//!   form by searching the Bloch sphere.
//! - [`approximation`] and [`sweep`]: optimal approximators and the two experimental
//!   families, swept over their parameter.
//! - [`dilation`]: the ancilla circuit realizing a rank-one joint observable.
//! - [`sampling`]: seeded finite-shot simulation of the whole protocol.
//! - [`cli`]: the `murkit` command-line front end.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory:
//!
//! ```bash
//! cargo run -p murkit --example incompatibility
//! cargo run -p murkit --example compatibility
//! cargo run -p murkit --example worst_case
//! cargo run -p murkit --example optimal_approximators
//! cargo run -p murkit --release --example figure_sweeps
//! cargo run -p murkit --example dilation_circuit
//! cargo run -p murkit --release --example shot_simulation
//! ```

pub mod approximation;
pub mod bruteforce;
pub mod cli;
pub mod compatibility;
pub mod dilation;
pub mod error;
pub mod format;
pub mod inaccuracy;
pub mod qubit;
pub mod rotation;
pub mod sampling;
pub mod sweep;
pub mod tolerance;

pub use approximation::{family_fig3, family_fig4, optimal_approximators, targets_from_theta};
pub use compatibility::{
    compatible_symmetrized, compatible_unbiased, incompatibility_degree, symmetrized_joint,
    JointObservable,
};
pub use dilation::{assemble_povm, joint_probabilities, solve_circuit_params, CircuitParams};
pub use error::{Error, ErrorCode, Result};
pub use inaccuracy::{
    combined_inaccuracy, statistical_distance, worst_case_bruteforce, worst_case_inaccuracy,
    worst_case_state, zero_inaccuracy_approximators, InaccuracyReport,
};
pub use qubit::{outcome_probabilities, BinaryObservable, Effect, QubitState, Vec3};
pub use rotation::{rotation_between, Rotation};
pub use sampling::{run_experiment, sample_counts, ExperimentReport, JointMode, ShotRecord};
pub use sweep::{run_sweep, Family, SweepResult, SweepSpec};
