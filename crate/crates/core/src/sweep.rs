//! Parameter sweeps over the approximator families, producing plot-ready tables of
//! `Δ` against the family parameter.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::approximation::{family_fig3, family_fig4, targets_from_theta};
use crate::bruteforce::{
    search_worst_case, FibonacciLattice, DEFAULT_GRID_POINTS, MIN_GRID_POINTS,
};
use crate::compatibility::{compatible_unbiased, incompatibility_degree};
use crate::format::fmt_sig;
use crate::inaccuracy::worst_case_inaccuracy;
use crate::qubit::BinaryObservable;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "param_deg,delta_analytic,delta_bruteforce,delta_lb,compat_margin";
pub const DEFAULT_STEPS: usize = 91;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Circle family parameterized by `γ ∈ [0°, 90°]`.
    Fig3Gamma,
    /// Chord family parameterized by the opening angle `φ ∈ [0°, 180°]`.
    Fig4Phi,
}

impl Family {
    pub fn default_range(self) -> (f64, f64) {
        match self {
            Family::Fig3Gamma => (0.0, 90.0),
            Family::Fig4Phi => (0.0, 180.0),
        }
    }

    pub fn approximators(self, param_deg: f64) -> Result<(BinaryObservable, BinaryObservable)> {
        match self {
            Family::Fig3Gamma => family_fig3(param_deg),
            Family::Fig4Phi => family_fig4(param_deg),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig3" | "fig3_gamma" | "gamma" => Ok(Family::Fig3Gamma),
            "fig4" | "fig4_phi" | "phi" => Ok(Family::Fig4Phi),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub family: Family,
    pub theta_deg: f64,
    pub range: (f64, f64),
    pub steps: usize,
    /// Lattice size for the brute-force column; `None` skips it.
    pub grid_points: Option<usize>,
}

impl SweepSpec {
    /// Full default range, 91 steps, brute-force column on at 10⁵ lattice points.
    pub fn new(family: Family, theta_deg: f64) -> Self {
        SweepSpec {
            family,
            theta_deg,
            range: family.default_range(),
            steps: DEFAULT_STEPS,
            grid_points: Some(DEFAULT_GRID_POINTS),
        }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = (lo, hi);
        self
    }

    pub fn with_grid_points(mut self, grid_points: Option<usize>) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::OutOfRange {
                what: "steps",
                value: self.steps as f64,
                lo: 2.0,
                hi: f64::INFINITY,
            });
        }
        let (lo, hi) = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Usage(format!(
                "sweep range must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if let Some(n) = self.grid_points {
            if n < MIN_GRID_POINTS {
                return Err(Error::OutOfRange {
                    what: "grid_points",
                    value: n as f64,
                    lo: MIN_GRID_POINTS as f64,
                    hi: f64::INFINITY,
                });
            }
        }
        Ok(())
    }

    /// Parameter values, evenly spaced and including both ends.
    pub fn parameters(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub param_deg: f64,
    pub delta_analytic: f64,
    pub delta_bruteforce: Option<f64>,
    pub delta_lb: f64,
    pub compat_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Row with the smallest analytic `Δ` (first one on ties).
    pub fn argmin(&self) -> Option<&SweepRow> {
        self.rows.iter().reduce(|best, r| {
            if r.delta_analytic < best.delta_analytic {
                r
            } else {
                best
            }
        })
    }

    /// CSV with header, LF line endings, 12 significant digits. A disabled brute-force
    /// column is written as empty fields.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            let brute = r.delta_bruteforce.map(fmt_sig).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_sig(r.param_deg),
                fmt_sig(r.delta_analytic),
                brute,
                fmt_sig(r.delta_lb),
                fmt_sig(r.compat_margin)
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// Evaluates one family over a parameter range for fixed targets.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let (a, b) = targets_from_theta(spec.theta_deg)?;
    let delta_lb = incompatibility_degree(a.vector(), b.vector())?;
    let lattice = spec.grid_points.map(FibonacciLattice::new);

    let rows = spec
        .parameters()
        .into_iter()
        .map(|param| {
            let (c, d) = spec.family.approximators(param)?;
            let delta_analytic = worst_case_inaccuracy(&a, &b, &c, &d)?;
            let delta_bruteforce = match &lattice {
                Some(l) => Some(search_worst_case(&a, &b, &c, &d, l)?.refined_max),
                None => None,
            };
            let compat_margin = compatible_unbiased(c.vector(), d.vector())?.margin;
            Ok(SweepRow {
                param_deg: param,
                delta_analytic,
                delta_bruteforce,
                delta_lb,
                compat_margin,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepResult { spec: *spec, rows })
}
