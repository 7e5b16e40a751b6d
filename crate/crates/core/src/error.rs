use alloc::string::String;
use core::fmt;

use crate::C64;

/// Errors raised by the series, class and bound constructions.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two series of different truncation order were combined.
    OrderMismatch {
        /// Order of the left operand.
        left: usize,
        /// Order of the right operand.
        right: usize,
    },
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// The two-atom moment problem has no solution within tolerance.
    Infeasible {
        /// Largest moment residual of the best candidate.
        residual: f64,
    },
    /// The moment data describe a single atom (`c = 2`).
    Degenerate,
    /// `f` or `f′` vanished at a sample point of a membership check.
    Evaluation {
        /// The offending sample point.
        z: C64,
        /// Which quantity vanished.
        what: &'static str,
    },
}

/// Crate result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderMismatch { left, right } => {
                write!(f, "truncation orders differ: {left} vs {right}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Infeasible { residual } => {
                write!(f, "two-atom representation infeasible (residual {residual:e})")
            }
            Error::Degenerate => write!(f, "c = 2 forces a single atom at 1"),
            Error::Evaluation { z, what } => write!(f, "{what} vanishes at z = {z}"),
        }
    }
}

impl core::error::Error for Error {}
