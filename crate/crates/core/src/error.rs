use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by a series that vanishes up to its truncation")]
    ZeroDivision,
    #[error("[{twice}/2]_q is not a polynomial in q^(1/2)")]
    NonDivisible { twice: i64 },
    #[error("operation requires an untruncated polynomial")]
    Truncated,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("partition has {len} parts, more than the allowed {max}")]
    LengthExceeded { len: usize, max: usize },
    #[error("input too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("formal series does not converge: {0}")]
    NonConvergent(String),
    #[error("degenerate Weyl denominator at the chosen points")]
    DegenerateDenominator,
    #[error("value has exponents off the q^(1/2) grid")]
    OffGrid,
    #[error("integrand contract violated: {0}")]
    ContractViolation(String),
    #[error("coefficient overflow in machine-integer kernel")]
    Overflow,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
