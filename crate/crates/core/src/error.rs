use thiserror::Error;

use crate::cartan::CartanType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),

    #[error("root system mismatch: {left} vs {right}")]
    Mismatch { left: CartanType, right: CartanType },

    #[error("coweight is not dominant: {0}")]
    NotDominant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} of size {measured} exceeds budget {budget}")]
    Budget {
        what: &'static str,
        measured: u64,
        budget: u64,
    },

    #[error("element is not an involution")]
    NotInvolution,

    #[error("level {0} is not spherical")]
    NotSpherical(String),

    #[error("depth hypothesis violated: depth(mu) = {depth}, required >= {required}")]
    DepthHypothesis { depth: String, required: u64 },

    #[error("not neutrally acceptable (kappa(b) = mu^natural, nu(b) <= mu): {0}")]
    NotNeutrallyAcceptable(String),

    #[error("no certified good decomposition of w0 for level {0}")]
    NoDecomposition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn budget(what: &'static str, measured: impl TryInto<u64>, budget: impl TryInto<u64>) -> Self {
        Error::Budget {
            what,
            measured: measured.try_into().unwrap_or(u64::MAX),
            budget: budget.try_into().unwrap_or(u64::MAX),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
