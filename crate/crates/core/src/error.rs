use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument was required to be an odd prime and is not.
    NotAnOddPrime(String),
    /// An argument fell outside a documented operating range.
    OutOfRange(String),
    /// A modulus was < 2 or otherwise unusable.
    BadModulus(String),
    /// Division by the zero polynomial or a zero scalar.
    DivisionByZero,
    /// Polynomial division did not come out exact where exactness is required.
    InexactDivision(String),
    /// Input violated a structural precondition (wrong residue class,
    /// non-monic, non-reciprocal, odd degree, endpoint is a root, ...).
    BadInput(String),
    /// A quantity the underlying theorems guarantee failed to hold.
    /// This always indicates a bug or a genuine counterexample; it is
    /// never swallowed.
    Defect(String),
    /// A certificate search exhausted its prime bound. The payload names
    /// the clause (1-based) that never found a witness.
    WitnessNotFound { clause: usize, bound: u64 },
    /// A congruence check could not be evaluated (non-invertible
    /// denominator or cofactor mod p).
    NotInvertible(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAnOddPrime(s) => write!(f, "not an odd prime: {s}"),
            Error::OutOfRange(s) => write!(f, "out of supported range: {s}"),
            Error::BadModulus(s) => write!(f, "bad modulus: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InexactDivision(s) => write!(f, "inexact polynomial division: {s}"),
            Error::BadInput(s) => write!(f, "bad input: {s}"),
            Error::Defect(s) => write!(f, "internal defect (theorem violated): {s}"),
            Error::WitnessNotFound { clause, bound } => {
                write!(f, "no witness prime below {bound} for clause {clause}")
            }
            Error::NotInvertible(s) => write!(f, "not invertible: {s}"),
        }
    }
}

impl std::error::Error for Error {}
