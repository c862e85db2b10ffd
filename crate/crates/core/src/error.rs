use thiserror::Error;

/// Errors raised by validation and by the enumeration guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("table is not closed or not a Latin square at element {0}")]
    NotClosed(usize),
    #[error("{what}: size {actual} exceeds bound {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("cochain arity n={n}, m={m} is not supported")]
    ArityUnsupported { n: usize, m: usize },
    #[error("no 1-cell exists for the requested map")]
    NoCellExists,
    #[error("module category is not pointed: {0}")]
    NotPointed(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("middle groups or cocycles of the bimodules do not match")]
    MiddleMismatch,
    #[error("stabilizer is not abelian")]
    NonAbelianStabilizer,
    #[error("no monomial intertwiner exists for the stabilizer action")]
    NonMonomialIntertwiner,
    #[error("data does not define a fiber functor: {0}")]
    NotAFiberFunctor(String),
    #[error("integer overflow in exact linear algebra")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by size guards rather than malformed input.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::Overflow)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
