use thiserror::Error;

/// Errors produced by the library.
///
/// `Invalid*` variants describe bad caller input; `Internal` means a computed
/// object failed a post-condition, which indicates a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length must be odd, got {0}")]
    EvenLength(u64),

    #[error("length must be positive")]
    ZeroLength,

    #[error("reciprocal requires a monic polynomial with unit constant term, got {0}")]
    NotReciprocable(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{poly} is not a product of distinct factors of x^{n}-1 over Z4")]
    NotAFactorProduct { poly: String, n: u64 },

    #[error("f and g share the factor {0}")]
    SharedFactor(String),

    #[error("{0} does not divide x^{1}+1 over F2")]
    NotAFactor(String, u64),

    #[error("assignment has {got} entries, the factor table of length {n} has {expected}")]
    AssignmentLength { n: u64, expected: usize, got: usize },

    #[error("{what} requires n <= {max}, got {n}")]
    SizeGuard {
        what: &'static str,
        n: u64,
        max: u64,
    },

    #[error("operation requires n outside N2, but {0} is in N2")]
    InN2(u64),

    #[error("invalid range {0:?}")]
    Range(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_odd(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroLength)
    } else if n.is_multiple_of(2) {
        Err(Error::EvenLength(n))
    } else {
        Ok(())
    }
}
