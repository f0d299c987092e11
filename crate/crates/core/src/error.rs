use thiserror::Error;

/// Errors raised by the quiddity library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings ({0} vs {1})")]
    MixedRing(String, String),
    #[error("element {0} has no complex modulus in this representation")]
    NoModulus(String),
    #[error("tuple is not a lambda-quiddity")]
    NotAQuiddity,
    #[error("tuple has odd size {0}")]
    OddSize(usize),
    #[error("size {size} is below the minimum {min}")]
    SizeTooSmall { size: usize, min: usize },
    #[error("size {size} exceeds the supported maximum {max}")]
    SizeLimit { size: usize, max: usize },
    #[error("search needs {required} nodes but the work limit is {limit}")]
    WorkLimitExceeded { required: u128, limit: u64 },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("no zero entry at index {0}")]
    NotZeroAt(usize),
    #[error("no unit entry at index {0}")]
    NotUnitAt(usize),
    #[error("labeling is not admissible")]
    NotAdmissible,
    #[error("theorem violated: {0}")]
    TheoremViolated(String),
    #[error("generator {0} is not valid here: {1}")]
    WrongGenerator(String, String),
    #[error("coefficient {0} is not divisible by {1}")]
    NotDivisible(i64, u64),
    #[error("coefficient does not fit in 64 bits")]
    CoefficientOverflow,
    #[error("element is not in the subgroup generated by {0}")]
    NotInSubgroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint mismatch: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
