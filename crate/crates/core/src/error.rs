use thiserror::Error;

/// Errors raised while building frames or comparing them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("frame must contain at least one vector")]
    Empty,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    /// `column` is 1-based, matching how frame vectors are usually numbered.
    #[error("vector {column} has norm {norm}, expected 1")]
    NotUnitNorm { column: usize, norm: f64 },
    #[error("vectors span a subspace of rank {rank}, expected {dim}")]
    NotSpanning { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("frames have different vector counts ({left} vs {right})")]
    CountMismatch { left: usize, right: usize },
    #[error("the angle method needs frames in R^2, got R^{dim}")]
    NotPlanar { dim: usize },
    #[error("{count} vectors exceeds the exhaustive search limit of {max}")]
    TooLarge { count: usize, max: usize },
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = FrameError> = std::result::Result<T, E>;
