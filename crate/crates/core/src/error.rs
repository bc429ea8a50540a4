use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient list of length {len} does not fit order {order}")]
    TooManyCoefficients { len: usize, order: usize },

    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("coefficient index {index} is outside 0..={order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("substitution q -> q^k requires k >= 1")]
    ZeroSubstitution,

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("coefficient at q^{index} has denominator {denominator} not invertible mod {modulus}")]
    DenominatorNotInvertible {
        index: usize,
        denominator: String,
        modulus: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration guard exceeded: n = {n} > {guard}")]
    GuardExceeded { n: u64, guard: u64 },

    #[error("operation needs basis {expected}, got {found}")]
    WrongBasis {
        expected: &'static str,
        found: &'static str,
    },

    #[error("series order {order} is below the required {required}")]
    OrderTooSmall { order: usize, required: usize },

    #[error("series is not in the span of the basis; first failing coefficient at q^{index}")]
    NotInSpan { index: usize },

    #[error("basis monomials are linearly dependent on the sampled coefficients")]
    Underdetermined,

    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
