use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidPrime(u32),
    DimensionMismatch { expected: usize, found: usize },
    /// Operands live in different algebras (characteristic or dimension differ).
    AlgebraMismatch,
    /// Structure constants violate associativity at `(e_i e_j) e_k`.
    NotAssociative { i: usize, j: usize, k: usize },
    /// The declared unit does not act as identity on basis element `index`.
    InvalidUnit { index: usize },
    NotAnIdeal,
    NotPrime,
    /// An exhaustive scan would visit `required` items but the budget is `budget`.
    BudgetExceeded { required: u128, budget: u64 },
    InvalidParameter(String),
    UnknownTheorem(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "{p} is not a prime in [2, 65536]"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            Error::NotAssociative { i, j, k } => {
                write!(f, "structure constants not associative at basis triple ({i}, {j}, {k})")
            }
            Error::InvalidUnit { index } => {
                write!(f, "declared unit does not fix basis element {index}")
            }
            Error::NotAnIdeal => write!(f, "subspace is not a two-sided ideal"),
            Error::NotPrime => write!(f, "ideal is not prime"),
            Error::BudgetExceeded { required, budget } => {
                write!(f, "budget exceeded: need {required} items, budget is {budget}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::UnknownTheorem(id) => write!(f, "unknown theorem id {id:?}"),
        }
    }
}

impl core::error::Error for Error {}
