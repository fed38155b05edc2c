use core::fmt;

use crate::field::FieldElement;

/// Errors raised by the arithmetic, certificate and search layers.
///
/// Variants fall in three families: bad input (`NotPrime`, `NotDivisor`, ...),
/// resource limits (`CapExceeded`, `BudgetExceeded`) and theorem-backed
/// invariant violations (`BoundViolated`, `CorollaryViolated`, ...). The last
/// family can only be produced by an implementation bug or a counterexample.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NotPrime(u64),
    TooSmall(u64),
    TooLarge(u64),
    ZeroInverse,
    NotDivisor { d: u64, order: u64 },
    NotProperDivisor { d: u64, p: u64 },
    FieldMismatch { left: u32, right: u32 },
    LengthMismatch { coeffs: usize, shifts: usize },
    ExponentTooLarge { exponent: u64, p: u32 },
    ExponentOverflow { exponent: u64, p: u32 },
    ZeroPolynomial,
    DuplicateElements(FieldElement),
    EmptySet,
    SumsetEscapesSubgroup { a: FieldElement, b: FieldElement },
    MultiplicityShortfall { b: FieldElement, found: usize, required: usize },
    OddSubgroupOrder(u64),
    BudgetExceeded { explored_nodes: u64 },
    BoundViolated(&'static str),
    CapExceeded { value: u64, cap: u64 },
    CorollaryViolated(&'static str),
    BadRange,
    TrivialCharacter,
    NotExact,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::TooSmall(p) => write!(f, "modulus {p} is below 3"),
            Error::TooLarge(p) => write!(f, "modulus {p} is not below 2^31"),
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::NotDivisor { d, order } => write!(f, "{d} does not divide {order}"),
            Error::NotProperDivisor { d, p } => {
                write!(f, "{d} is not a proper divisor of p-1 = {}", p - 1)
            }
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: F_{left} vs F_{right}")
            }
            Error::LengthMismatch { coeffs, shifts } => {
                write!(f, "{coeffs} coefficients but {shifts} shifts")
            }
            Error::ExponentTooLarge { exponent, p } => {
                write!(f, "exponent {exponent} must be below the characteristic {p}")
            }
            Error::ExponentOverflow { exponent, p } => {
                write!(f, "auxiliary exponent {exponent} exceeds p-1 = {}", p - 1)
            }
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::DuplicateElements(x) => write!(f, "duplicate element {x}"),
            Error::EmptySet => write!(f, "set must be nonempty"),
            Error::SumsetEscapesSubgroup { a, b } => {
                write!(f, "sum {a} + {b} lies outside Z_d and is nonzero")
            }
            Error::MultiplicityShortfall { b, found, required } => {
                write!(f, "root order {found} at {b}, expected at least {required}")
            }
            Error::OddSubgroupOrder(d) => {
                write!(f, "subgroup order {d} is odd; the Cayley graph would be directed")
            }
            Error::BudgetExceeded { explored_nodes } => {
                write!(f, "search budget exhausted after {explored_nodes} nodes")
            }
            Error::BoundViolated(what) => write!(f, "bound violated: {what}"),
            Error::CapExceeded { value, cap } => write!(f, "{value} exceeds the configured cap {cap}"),
            Error::CorollaryViolated(what) => write!(f, "corollary violated: {what}"),
            Error::BadRange => write!(f, "range must satisfy 0 < y < z"),
            Error::TrivialCharacter => write!(f, "character is trivial"),
            Error::NotExact => write!(f, "result is a lower bound, not exact"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
