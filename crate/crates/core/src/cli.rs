//! The `murkit` command-line interface.
//!
//! Every subcommand prints one JSON document (or CSV for `sweep --format csv`) on
//! stdout. Failures print `{"error": {"code": ..., "message": ...}}` on stderr and
//! exit non-zero: 2 for usage errors, 1 for everything else.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::approximation::{family_fig3, family_fig4, optimal_approximators, targets_from_theta};
use crate::bruteforce::{DEFAULT_GRID_POINTS, MIN_GRID_POINTS};
use crate::compatibility::{
    compatible_symmetrized_with, compatible_unbiased_with, incompatibility_degree,
    symmetrized_joint_with,
};
use crate::dilation::solve_circuit_params;
use crate::error::ErrorCode;
use crate::format::round_json;
use crate::inaccuracy::{
    combined_inaccuracy, inaccuracy_at_worst, worst_case_inaccuracy, worst_case_state,
};
use crate::qubit::{BinaryObservable, QubitState, Vec3};
use crate::sampling::{run_experiment, JointMode};
use crate::sweep::{run_sweep, Family, SweepSpec, DEFAULT_STEPS};
use crate::tolerance::tolerance_from_env;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "murkit",
    version,
    about = "Qubit measurement-uncertainty toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree of incompatibility Δ_lb of two sharp observables.
    Incompat {
        #[command(flatten)]
        targets: TargetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Joint-measurability checks for a pair C, D.
    CompatCheck {
        #[command(flatten)]
        approx: ApproxArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Symmetrized joint observable of C and D.
    Joint {
        #[command(flatten)]
        approx: ApproxArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Statistical-distance inaccuracy of C, D approximating A, B.
    Inaccuracy {
        #[command(flatten)]
        targets: TargetArgs,
        #[command(flatten)]
        approx: ApproxArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal compatible approximators of A, B.
    Optimal {
        #[command(flatten)]
        targets: TargetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Δ along one approximator family, as CSV or JSON.
    Sweep {
        /// fig3 (parameter γ) or fig4 (parameter φ).
        #[arg(long)]
        family: String,
        /// Target opening angle θ in degrees.
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Lattice size for the brute-force column; 0 disables it.
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid_points: usize,
        /// Parameter range "lo,hi" in degrees (defaults to the family's full range).
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-shot simulation of the joint and reference measurements.
    Simulate {
        #[command(flatten)]
        targets: TargetArgs,
        #[command(flatten)]
        approx: ApproxArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Measure the symmetrized POVM directly instead of through the solved circuit.
        #[arg(long)]
        direct_povm: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Bloch vector of A, "x,y,z" or "x,z".
    #[arg(long, conflicts_with = "theta", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Bloch vector of B, "x,y,z" or "x,z".
    #[arg(long, conflicts_with = "theta", allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Symmetric targets with opening angle θ (degrees).
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub c0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub d0: f64,
    /// Use the circle family at angle γ (degrees).
    #[arg(long, conflicts_with_all = ["c", "d", "phi"])]
    pub gamma: Option<f64>,
    /// Use the chord family at opening angle φ (degrees).
    #[arg(long, conflicts_with_all = ["c", "d", "gamma"])]
    pub phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Bloch vector of the state.
    #[arg(long, conflicts_with = "worst", allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Use the worst-case state.
    #[arg(long)]
    pub worst: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_vec(raw: &str) -> Result<Vec3> {
    raw.parse()
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::Usage(format!("missing --{flag}")))
}

impl TargetArgs {
    fn resolve(&self) -> Result<(BinaryObservable, BinaryObservable)> {
        if let Some(theta) = self.theta {
            return targets_from_theta(theta);
        }
        let a = parse_vec(require(&self.a, "a (or --theta)")?)?;
        let b = parse_vec(require(&self.b, "b (or --theta)")?)?;
        Ok((BinaryObservable::sharp(a)?, BinaryObservable::sharp(b)?))
    }
}

impl ApproxArgs {
    fn resolve(&self, tol: f64) -> Result<(BinaryObservable, BinaryObservable)> {
        if let Some(g) = self.gamma {
            return family_fig3(g);
        }
        if let Some(p) = self.phi {
            return family_fig4(p);
        }
        let c = parse_vec(require(&self.c, "c (or --gamma/--phi)")?)?;
        let d = parse_vec(require(&self.d, "d (or --gamma/--phi)")?)?;
        Ok((
            BinaryObservable::with_tolerance(self.c0, c, tol)?,
            BinaryObservable::with_tolerance(self.d0, d, tol)?,
        ))
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn json_only(output: &OutputArgs) -> Result<()> {
    if output.format == Format::Csv {
        return Err(Error::Usage(
            "--format csv is only available for sweep".into(),
        ));
    }
    Ok(())
}

fn observable_json(o: &BinaryObservable) -> Value {
    json!({"bias": o.bias(), "vector": o.vector()})
}

fn execute(command: &Command, tol: f64) -> Result<(Output, Option<PathBuf>)> {
    let (value, output) = match command {
        Command::Incompat { targets, output } => {
            json_only(output)?;
            let (a, b) = targets.resolve()?;
            let lb = incompatibility_degree(a.vector(), b.vector())?;
            (
                json!({"delta_lb": lb, "a": a.vector(), "b": b.vector()}),
                output,
            )
        }
        Command::CompatCheck { approx, output } => {
            json_only(output)?;
            let (c, d) = approx.resolve(tol)?;
            let unbiased = if c.is_unbiased(tol) && d.is_unbiased(tol) {
                Some(compatible_unbiased_with(c.vector(), d.vector(), tol)?)
            } else {
                None
            };
            let sym = compatible_symmetrized_with(&c, &d, tol);
            (
                json!({
                    "c": observable_json(&c),
                    "d": observable_json(&d),
                    "unbiased": unbiased,
                    "symmetrized": sym,
                    "compatible": sym.compatible,
                }),
                output,
            )
        }
        Command::Joint { approx, output } => {
            json_only(output)?;
            let (c, d) = approx.resolve(tol)?;
            let joint = symmetrized_joint_with(&c, &d, tol);
            (
                serde_json::to_value(joint.export()).expect("joint serializes"),
                output,
            )
        }
        Command::Inaccuracy {
            targets,
            approx,
            state,
            output,
        } => {
            json_only(output)?;
            let (a, b) = targets.resolve()?;
            let (c, d) = approx.resolve(tol)?;
            let report = match (&state.state, state.worst) {
                (_, true) => inaccuracy_at_worst(&a, &b, &c, &d)?,
                (Some(raw), false) => {
                    let s = QubitState::with_tolerance(parse_vec(raw)?, tol)?;
                    combined_inaccuracy(&a, &b, &c, &d, &s)?
                }
                (None, false) => {
                    return Err(Error::Usage("inaccuracy needs --state or --worst".into()))
                }
            };
            let sym = compatible_symmetrized_with(&c, &d, tol);
            let mut value = serde_json::to_value(report).expect("report serializes");
            value["compatible"] = json!(sym.compatible);
            value["min_eigenvalue"] = json!(sym.min_eigenvalue);
            (value, output)
        }
        Command::Optimal { targets, output } => {
            json_only(output)?;
            let (a, b) = targets.resolve()?;
            let (c, d) = optimal_approximators(&a, &b)?;
            let collinear = c == a && d == b;
            let circuit = solve_circuit_params(&c, &d).ok().map(|p| p.export());
            let mut value = json!({
                "a": a.vector(),
                "b": b.vector(),
                "c": c.vector(),
                "d": d.vector(),
                "c0": c.bias(),
                "d0": d.bias(),
                "delta": worst_case_inaccuracy(&a, &b, &c, &d)?,
                "delta_lb": incompatibility_degree(a.vector(), b.vector())?,
                "compat_margin": compatible_unbiased_with(c.vector(), d.vector(), tol)?.margin,
                "collinear": collinear,
                "circuit": circuit,
            });
            if collinear {
                value["note"] = json!("targets are collinear; C = A and D = B");
            }
            (value, output)
        }
        Command::Sweep {
            family,
            theta,
            steps,
            grid_points,
            range,
            output,
        } => {
            let family: Family = family.parse()?;
            let mut spec = SweepSpec::new(family, *theta).with_steps(*steps);
            spec = spec.with_grid_points(match *grid_points {
                0 => None,
                n if n < MIN_GRID_POINTS => {
                    return Err(Error::OutOfRange {
                        what: "grid_points",
                        value: n as f64,
                        lo: MIN_GRID_POINTS as f64,
                        hi: f64::INFINITY,
                    })
                }
                n => Some(n),
            });
            if let Some(raw) = range {
                let (lo, hi) = parse_range(raw)?;
                spec = spec.with_range(lo, hi);
            }
            let result = run_sweep(&spec)?;
            let out = match output.format {
                Format::Csv => Output::Text(result.to_csv_string()),
                Format::Json => {
                    let mut v = serde_json::to_value(&result).expect("sweep serializes");
                    round_json(&mut v);
                    Output::Json(v)
                }
            };
            return Ok((out, output.out.clone()));
        }
        Command::Simulate {
            targets,
            approx,
            state,
            shots,
            seed,
            direct_povm,
            output,
        } => {
            json_only(output)?;
            let (a, b) = targets.resolve()?;
            let (c, d) = approx.resolve(tol)?;
            let s = match &state.state {
                Some(raw) => QubitState::with_tolerance(parse_vec(raw)?, tol)?,
                None => worst_case_state(&a, &b, &c, &d)?.state,
            };
            let mode = if *direct_povm {
                JointMode::DirectPovm
            } else {
                JointMode::Circuit
            };
            let report = run_experiment(&a, &b, &c, &d, &s, *shots, *seed, mode)?;
            (
                serde_json::to_value(report).expect("report serializes"),
                output,
            )
        }
    };
    let mut value = value;
    round_json(&mut value);
    Ok((Output::Json(value), output.out.clone()))
}

fn parse_range(raw: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let bad = || Error::Parse {
        what: "range",
        input: raw.to_string(),
    };
    match parts.as_slice() {
        [lo, hi] => Ok((
            lo.parse().map_err(|_| bad())?,
            hi.parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn error_json(code: ErrorCode, message: &str) -> String {
    json!({"error": {"code": code, "message": message}}).to_string()
}

/// Runs the CLI with explicit argument list and output streams; returns the exit code.
pub fn run<I, T, O, E>(args: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = writeln!(
                stderr,
                "{}",
                error_json(ErrorCode::Usage, &e.render().to_string())
            );
            return 2;
        }
    };

    let result = tolerance_from_env().and_then(|tol| execute(&cli.command, tol));
    match result {
        Ok((output, path)) => {
            let text = match output {
                Output::Json(v) => {
                    serde_json::to_string_pretty(&v).expect("json serializes") + "\n"
                }
                Output::Text(t) => t,
            };
            let written = match path {
                Some(p) => std::fs::write(p, text.as_bytes()).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "{}", error_json(e.code(), &e.to_string()));
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(e.code(), &e.to_string()));
            if e.code() == ErrorCode::Usage {
                2
            } else {
                1
            }
        }
    }
}
