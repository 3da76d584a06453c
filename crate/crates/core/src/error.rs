//! Error type shared by the computational kernels.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by kernel operations on malformed input.
///
/// Mathematical "negative" outcomes (a failing identity, an inconclusive
/// certificate) are not errors; they are encoded in the operation results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live in polynomial rings with different variable counts.
    VarCountMismatch { left: usize, right: usize },
    /// Matrix dimensions are incompatible for the requested operation.
    ShapeMismatch { left: usize, right: usize },
    /// A variable index is outside `0..nvars`.
    VarIndexOutOfRange { index: usize, nvars: usize },
    /// An evaluation point has the wrong number of coordinates.
    PointLength { expected: usize, got: usize },
    /// Row/column index sets for a minor are malformed (repeated, out of
    /// range, or of unequal size).
    BadIndexSet(String),
    /// A point claimed to lie on `X` does not satisfy `psi = 0`.
    PointNotOnVariety { component: usize },
    /// A matrix required to be symmetric is not.
    NotSymmetric { row: usize, col: usize },
    /// A set defined by charts has no charts to sample from.
    EmptyCharts,
    /// An enumeration would exceed the configured size cap.
    SizeCap { requested: usize, limit: usize },
    /// A sampling plan violates its invariants.
    BadPlan(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VarCountMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            Error::ShapeMismatch { left, right } => {
                write!(f, "matrix dimension mismatch: {left} vs {right}")
            }
            Error::VarIndexOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            Error::PointLength { expected, got } => {
                write!(f, "evaluation point has {got} coordinates, expected {expected}")
            }
            Error::BadIndexSet(msg) => write!(f, "malformed index set: {msg}"),
            Error::PointNotOnVariety { component } => {
                write!(f, "point is not on X: psi_{} does not vanish there", component + 1)
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({}, {})", row + 1, col + 1)
            }
            Error::EmptyCharts => write!(f, "chart-defined set has an empty chart list"),
            Error::SizeCap { requested, limit } => {
                write!(f, "enumeration of {requested} items exceeds the cap of {limit}")
            }
            Error::BadPlan(msg) => write!(f, "invalid sampling plan: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
