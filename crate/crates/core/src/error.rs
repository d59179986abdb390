use std::fmt;

use thiserror::Error;

use crate::field::FieldDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    DescriptorMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus {0}: must be a prime greater than 3")]
    InvalidModulus(String),
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("non-generic input: {0}")]
    NonGeneric(Hypothesis),
    #[error("polynomial arity mismatch: {0} vs {1} points")]
    ArityMismatch(usize, usize),
    #[error("identity denominator reduces to zero: {0}")]
    ZeroDenominator(String),
    #[error("bad prime for randomized check: {0}")]
    BadPrime(u64),
    #[error("exact expansion exceeded its time budget")]
    Timeout,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The genericity hypothesis a closed-form evaluation found violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// An input was the point at infinity.
    AffineInputs,
    /// Two inputs share an x-coordinate (P_i = ±P_j).
    DistinctX { i: usize, j: usize },
    /// The partial sum P_1 + P_2 equals ±P_3.
    PartialSumNotOpposite,
    /// A step of the left fold left case (I) of the addition law.
    ChordStep { step: usize },
    /// A cofactor used as a denominator vanished.
    NonzeroDenominator(&'static str),
    /// Fewer points than the formula needs.
    MinimumPoints { needed: usize, got: usize },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::AffineInputs => write!(f, "all points must be affine"),
            Hypothesis::DistinctX { i, j } => {
                write!(f, "P{i} and P{j} share an x-coordinate (P{i} = ±P{j})")
            }
            Hypothesis::PartialSumNotOpposite => write!(f, "P1 + P2 = ±P3"),
            Hypothesis::ChordStep { step } => {
                write!(f, "fold step {step} is not a chord addition")
            }
            Hypothesis::NonzeroDenominator(what) => write!(f, "{what} is zero"),
            Hypothesis::MinimumPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
        }
    }
}

impl Hypothesis {
    /// Stable machine-readable tag, used in JSON error reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Hypothesis::AffineInputs => "affine-inputs",
            Hypothesis::DistinctX { .. } => "distinct-x",
            Hypothesis::PartialSumNotOpposite => "partial-sum-not-opposite",
            Hypothesis::ChordStep { .. } => "chord-step",
            Hypothesis::NonzeroDenominator(_) => "nonzero-denominator",
            Hypothesis::MinimumPoints { .. } => "minimum-points",
        }
    }
}
