//! Numerical tolerances shared by the whole crate.

/// Absolute tolerance for validity and compatibility margins.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute tolerance for linear-algebra identities (rotations, frame changes).
pub const LINALG_TOL: f64 = 1e-12;

/// Environment variable that overrides [`DEFAULT_TOL`] for the command-line tool.
pub const TOLERANCE_ENV: &str = "MURKIT_TOLERANCE";

/// Reads [`TOLERANCE_ENV`], falling back to [`DEFAULT_TOL`] when unset.
///
/// A value that does not parse as a positive finite number is reported as an error
/// rather than silently ignored.
pub fn tolerance_from_env() -> crate::Result<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(raw) => parse_tolerance(&raw),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

pub(crate) fn parse_tolerance(raw: &str) -> crate::Result<f64> {
    match raw.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(crate::Error::Parse {
            what: TOLERANCE_ENV,
            input: raw.to_string(),
        }),
    }
}
