use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {n} is invalid: {reason}")]
    InvalidModulus { n: u64, reason: String },

    #[error("{n} = 2 mod 4 is not used; Z[xi_{n}] equals Z[xi_{half}], use n = {half}")]
    RedundantModulus { n: u64, half: u64 },

    #[error("{k} is not a unit modulo {n}")]
    NotCoprime { k: u64, n: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("L(s, chi) for the trivial character has a pole at s = 1")]
    TrivialCharacter,

    #[error("capacity exceeded: {what} = {value} (limit {limit})")]
    Capacity {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("coefficient overflow at k = {0}")]
    Overflow(u64),

    #[error("could not fully factor {0} within the trial-division budget")]
    FactorizationBudget(u64),

    #[error("sublattice enumeration exceeded the node budget of {0}")]
    NodeBudget(u64),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Capacity-style errors: the input is well-formed but outside the
    /// supported envelope.
    pub fn is_envelope(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. }
                | Error::Overflow(_)
                | Error::FactorizationBudget(_)
                | Error::NodeBudget(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
