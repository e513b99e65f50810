//! Verification and computation toolkit for nonhomogeneous dual framelet systems.
//!
//! The crate is organized around six pieces:
//!
//! * [`laurent`] — sparse Laurent (trigonometric) polynomials over exact complex
//!   rationals or complex doubles, with the coset (polyphase) split that turns
//!   shifted filter-bank identities into root-of-unity-free polynomial identities.
//! * [`filterbank`] — exact verification of the perfect-reconstruction identities
//!   for stationary and level-dependent filter banks, plus normalization and
//!   mask-constant certificates.
//! * [`refinable`] — frequency-domain refinable functions as truncated infinite
//!   products with certified truncation-error bounds, and the generator sets
//!   built from them.
//! * [`framecheck`] — numerical validation of the distribution-space duality:
//!   pairing quadrature, bracket-product identities, partial-sum convergence
//!   tables, and the characterization residuals.
//! * [`fwt`] — the discrete multi-level framelet transform (transition and
//!   subdivision operators) and its perfect-reconstruction test harness.
//! * [`config`] / [`report`] — JSON configuration ingestion and deterministic
//!   report/CSV emission used by the `framelets` binary and the examples.
//!
//! Every example under `examples/` is a runnable entry point for one of these
//! capabilities; `cargo run --example verify_haar` is a good place to start.

pub mod banks;
pub mod config;
pub mod filterbank;
pub mod framecheck;
pub mod fwt;
pub mod laurent;
pub mod refinable;
pub mod report;
pub mod scalar;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// A dilation factor outside the accepted range (|d| >= 2 for lattice
    /// operations, |d| > 1 for product evaluation).
    InvalidDilation(String),
    /// The zero polynomial has no degree.
    ZeroPolynomialDegree,
    /// Coset index out of `0..|d|`.
    CosetIndexOutOfRange { gamma: i64, modulus: i64 },
    /// A mask failed the `sum of coefficients = 1` precondition.
    NormalizationViolated(String),
    /// A level-dependent bank was asked for data past its declared levels.
    LevelsExhausted { requested: usize, provided: usize },
    /// The check at the last provided level needs the next Theta and the tail
    /// rule does not supply one.
    MissingFinalTheta,
    /// Inconsistent per-level list lengths in a level-dependent bank.
    LevelShape(String),
    /// Product evaluation would overflow the certified bound.
    EvaluationRange { xi: f64, limit: f64 },
    /// Bad sampling grid or parameter.
    InvalidParameter(String),
    /// Adaptive quadrature hit the refinement cap before stabilizing.
    QuadratureDidNotConverge { points: usize, last_delta: f64 },
    /// Pyramid does not belong to the bank it is being synthesized with.
    BankPyramidMismatch(String),
    /// Real-dilation checks need the dilation's rationality declared.
    UndeclaredRationality,
    /// Exact and float data mixed in one configuration.
    ModeMismatch(String),
    /// Malformed configuration file.
    Config(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDilation(msg) => write!(f, "invalid dilation: {msg}"),
            Error::ZeroPolynomialDegree => write!(f, "the zero polynomial has no degree"),
            Error::CosetIndexOutOfRange { gamma, modulus } => {
                write!(f, "coset index {gamma} outside 0..{modulus}")
            }
            Error::NormalizationViolated(msg) => write!(f, "mask normalization violated: {msg}"),
            Error::LevelsExhausted {
                requested,
                provided,
            } => write!(
                f,
                "level {requested} requested but only {provided} provided and no tail rule covers it"
            ),
            Error::MissingFinalTheta => write!(
                f,
                "the last level's check needs the next Theta; provide `theta_final` or use the repeat_last tail rule"
            ),
            Error::LevelShape(msg) => write!(f, "inconsistent level data: {msg}"),
            Error::EvaluationRange { xi, limit } => write!(
                f,
                "|xi| = {xi:.3e} outside the certified range (|xi| <= {limit:.3e} for this mask family)"
            ),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::QuadratureDidNotConverge { points, last_delta } => write!(
                f,
                "quadrature did not stabilize within {points} points (last delta {last_delta:.3e})"
            ),
            Error::BankPyramidMismatch(msg) => write!(f, "bank/pyramid mismatch: {msg}"),
            Error::UndeclaredRationality => {
                write!(f, "real dilation checks require a declared rationality")
            }
            Error::ModeMismatch(msg) => write!(f, "mode mismatch: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
