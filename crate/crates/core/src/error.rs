use serde::Serialize;
use thiserror::Error;

/// Stable machine-readable error categories, used by the CLI error envelope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    Parse,
    NonFinite,
    NonUnitVector,
    InvalidEffect,
    InvalidState,
    NotSharp,
    OutOfRange,
    Biased,
    NotRankOne,
    Incompatible,
    InvalidJoint,
    InvalidProbabilities,
    LabelMismatch,
    Usage,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("non-finite component in {0}")]
    NonFinite(&'static str),

    #[error("non-unit vector for {what}: norm {norm}")]
    NonUnitVector { what: &'static str, norm: f64 },

    #[error(
        "invalid effect: |w| = {norm} exceeds min(t, 2 - t) for t = {weight} (margin {margin})"
    )]
    InvalidEffect { weight: f64, norm: f64, margin: f64 },

    #[error("invalid state: Bloch vector norm {0} exceeds 1")]
    InvalidState(f64),

    #[error("observable {0} must be sharp (bias 1, unit Bloch vector)")]
    NotSharp(&'static str),

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("circuit form requires unbiased observables (c0 = {c0}, d0 = {d0})")]
    Biased { c0: f64, d0: f64 },

    #[error("joint observable not rank-1; no ancilla-circuit form (largest small eigenvalue {max_small_eigenvalue})")]
    NotRankOne { max_small_eigenvalue: f64 },

    #[error("observables are incompatible (margin {margin})")]
    Incompatible { margin: f64 },

    #[error("joint observable is not a valid POVM (min eigenvalue {min_eigenvalue})")]
    InvalidJoint { min_eigenvalue: f64 },

    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),

    #[error("outcome labels do not match: {left:?} vs {right:?}")]
    LabelMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::Parse { .. } => ErrorCode::Parse,
            Error::NonFinite(_) => ErrorCode::NonFinite,
            Error::NonUnitVector { .. } => ErrorCode::NonUnitVector,
            Error::InvalidEffect { .. } => ErrorCode::InvalidEffect,
            Error::InvalidState(_) => ErrorCode::InvalidState,
            Error::NotSharp(_) => ErrorCode::NotSharp,
            Error::OutOfRange { .. } => ErrorCode::OutOfRange,
            Error::Biased { .. } => ErrorCode::Biased,
            Error::NotRankOne { .. } => ErrorCode::NotRankOne,
            Error::Incompatible { .. } => ErrorCode::Incompatible,
            Error::InvalidJoint { .. } => ErrorCode::InvalidJoint,
            Error::InvalidProbabilities(_) => ErrorCode::InvalidProbabilities,
            Error::LabelMismatch { .. } => ErrorCode::LabelMismatch,
            Error::Usage(_) => ErrorCode::Usage,
            Error::Io(_) => ErrorCode::Io,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
