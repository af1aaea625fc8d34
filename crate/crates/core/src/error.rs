use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    /// A supplied defining polynomial has a nontrivial factor.
    Reducible,
    /// Field or parameter outside what the implementation supports.
    Unsupported(String),
    InvalidInput(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    FieldMismatch,
    DivisionByZero,
    ZeroVector,
    /// An enumeration would visit `needed` objects, more than `budget`.
    BudgetExceeded {
        needed: u128,
        budget: u64,
    },
    NotScattered,
    DegenerateForm,
    /// The input lacks a structure it is known to have.
    StructureAbsent(String),
    /// An asserted invariant failed; the string names it.
    InvariantViolated(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Reducible => f.write_str("polynomial is reducible"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::FieldMismatch => f.write_str("operands live in different fields"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::ZeroVector => f.write_str("zero vector has no projective point"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {needed} objects exceeds budget {budget}")
            }
            Error::NotScattered => f.write_str("subspace is not scattered"),
            Error::DegenerateForm => f.write_str("form is degenerate"),
            Error::StructureAbsent(s) => write!(f, "expected structure absent: {s}"),
            Error::InvariantViolated(s) => write!(f, "invariant violated: {s}"),
        }
    }
}

impl core::error::Error for Error {}
