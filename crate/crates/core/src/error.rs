use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which Gröbner resource budget was exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    SPairs { limit: u64 },
    Degree { limit: u32 },
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::SPairs { limit } => write!(f, "more than {limit} S-pairs"),
            Budget::Degree { limit } => write!(f, "a basis element of degree above {limit}"),
        }
    }
}

/// A hypothesis of the biquotient K-theory computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// Every intersection `S1 ∩ w(S2)` must be trivial.
    StrictCondition,
    /// `rank S1 + rank S2 >= rank G - 1`.
    RankInequality,
    /// Both subgroups must be connected (subtori).
    Subtorus,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::StrictCondition => write!(f, "strict biquotient condition"),
            Hypothesis::RankInequality => write!(f, "rank S1 + rank S2 >= rank G - 1"),
            Hypothesis::Subtorus => write!(f, "subgroups must be subtori"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientRankMismatch { left: usize, right: usize },
    #[error("subgroup is not a subtorus (its character quotient has torsion)")]
    NotSubtorus,
    #[error("invalid group factor: {0}")]
    InvalidFactor(String),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    WeylGroupTooLarge { order: u128, cap: u64 },
    #[error("exponent does not fit in a machine integer")]
    ExponentOverflow,
    #[error("invalid prime modulus {0}")]
    InvalidModulus(u64),
    #[error("coefficient {0} is not defined in the coefficient field")]
    NotInField(String),
    #[error("Gröbner budget exceeded: {0}")]
    BudgetExceeded(Budget),
    #[error("Buchberger certificate failed: an S-polynomial of the returned basis does not reduce to zero")]
    CertificateFailed,
    #[error("torus enlargement failed verification after {attempts} attempts")]
    EnlargementFailed { attempts: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
