use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be a positive integer, got 0")]
    ZeroArgument,

    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("arithmetic function is not Dirichlet-invertible: f(1) = 0")]
    NotInvertible,

    #[error("sequence length must be at least 1")]
    EmptySequence,

    #[error("truncation order {order} is too small, need at least {required}")]
    OrderTooSmall { order: usize, required: usize },

    #[error("basis is linearly dependent at order {order}")]
    DependentBasis { order: usize },

    #[error("series is not in the span of the basis at order {order} (first mismatch at q^{index})")]
    NotInSpan { order: usize, index: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}
