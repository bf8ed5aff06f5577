use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be at least 2, got {0}")]
    InvalidOrder(i64),

    #[error("weight list is empty")]
    EmptyWeights,

    #[error("need 2 <= n < d, got n = {n}, d = {d}")]
    DimensionTooSmall { n: usize, d: u32 },

    #[error("gcd of the order and the weights is {gcd}, expected 1")]
    GcdViolation { gcd: u32 },

    #[error("all weights are congruent modulo d")]
    DegenerateSpec,

    #[error("exponent vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("block degree multiplier must be at least 1")]
    ZeroBlockDegree,

    #[error("{monomial} is not an invariant of degree {expected_degree}")]
    NotInvariant {
        monomial: String,
        expected_degree: u32,
    },

    #[error("no zero-sum subsequence of length {d} among {len} residues")]
    ZeroSumNotFound { d: usize, len: usize },

    #[error("binomial sides have different images or coincide")]
    NotSuitable,

    #[error("{required} index multisets exceed the configured cap of {cap}")]
    ResourceBound { required: u128, cap: u128 },

    #[error("{0} is not a level GT ring with nonempty degree-d canonical part")]
    NotLevelGt(String),

    #[error("parameterizing set misses x{i}^(d-1)*x{j}")]
    EmbeddingCondition { i: usize, j: usize },

    #[error("expected an integer, got {0}")]
    IntegralityViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name, for diagnostics and machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::EmptyWeights => "EmptyWeights",
            Error::DimensionTooSmall { .. } => "DimensionTooSmall",
            Error::GcdViolation { .. } => "GcdViolation",
            Error::DegenerateSpec => "DegenerateSpec",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ZeroBlockDegree => "ZeroBlockDegree",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::ZeroSumNotFound { .. } => "ZeroSumNotFound",
            Error::NotSuitable => "NotSuitable",
            Error::ResourceBound { .. } => "ResourceBound",
            Error::NotLevelGt(_) => "NotLevelGt",
            Error::EmbeddingCondition { .. } => "EmbeddingCondition",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Whether the error comes from validating a `(d; α…)` tuple.
    pub fn is_spec_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidOrder(_)
                | Error::EmptyWeights
                | Error::DimensionTooSmall { .. }
                | Error::GcdViolation { .. }
                | Error::DegenerateSpec
        )
    }
}
