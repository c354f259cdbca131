use std::fmt;

/// Errors reported by the algebra engine.
///
/// Preconditions are always checked; the error carries enough text to
/// reconstruct which check fired and on what input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Syntax error while parsing a polynomial; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
    /// A name in the input is not a variable of the active ring.
    UnknownVariable { pos: usize, name: String },
    /// GF(p) was requested with a modulus that is not prime (or too large).
    NonPrimeModulus(u64),
    /// Operands live in different rings, fields or algebras.
    ContextMismatch(String),
    /// The ideal does not cut out a finite-dimensional quotient.
    NotZeroDimensional(String),
    /// The quotient is finite-dimensional but not local (some variable
    /// is not nilpotent), so no unique maximal ideal exists.
    NotLocal(String),
    /// A documented precondition of the operation fails on this input.
    Precondition(String),
    /// Matrix/row sizes do not line up.
    SizeMismatch(String),
    /// The question is well posed but this routine does not apply
    /// (e.g. palindrome check on a non-graded or non-Gorenstein algebra).
    NotApplicable(String),
    /// A bounded search ran out of budget before reaching a verdict.
    Inconclusive(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at byte {}: {}", pos, msg),
            Error::UnknownVariable { pos, name } => {
                write!(f, "unknown variable `{}` at byte {}", name, pos)
            }
            Error::NonPrimeModulus(p) => write!(f, "modulus {} is not a prime below 2^31", p),
            Error::ContextMismatch(m) => write!(f, "context mismatch: {}", m),
            Error::NotZeroDimensional(m) => write!(f, "not zero-dimensional: {}", m),
            Error::NotLocal(m) => write!(f, "not local: {}", m),
            Error::Precondition(m) => write!(f, "precondition violated: {}", m),
            Error::SizeMismatch(m) => write!(f, "size mismatch: {}", m),
            Error::NotApplicable(m) => write!(f, "not applicable: {}", m),
            Error::Inconclusive(m) => write!(f, "inconclusive: {}", m),
        }
    }
}

impl std::error::Error for Error {}
