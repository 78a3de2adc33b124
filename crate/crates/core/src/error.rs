use thiserror::Error;

/// Errors raised by the library. Every variant except `Malformed` is a domain
/// error: the input was well-formed but violated a precondition of the
/// requested operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero vector where a nonzero one is required")]
    ZeroVector,

    #[error("zero binary form")]
    ZeroForm,

    #[error("points are not in general position; dependent subset {subset:?}")]
    NotGeneralPosition { subset: Vec<usize> },

    #[error("inconsistent samples: no polynomial of the requested degree fits")]
    InconsistentSamples,

    #[error("sample set is rank deficient ({rank} < {needed})")]
    Underdetermined { rank: usize, needed: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("map through the incidence data is not unique (solution dimension {dim})")]
    NonUniqueMap { dim: usize },

    #[error("the monoidal complex equation vanishes identically")]
    WholeGrassmannian,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("geometric classification and intertwiner solver disagree: {0}")]
    CrossValidation(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::ZeroVector => "zero_vector",
            Error::ZeroForm => "zero_form",
            Error::NotGeneralPosition { .. } => "not_general_position",
            Error::InconsistentSamples => "inconsistent_samples",
            Error::Underdetermined { .. } => "underdetermined",
            Error::Degenerate(_) => "degenerate",
            Error::Precondition(_) => "precondition",
            Error::NonUniqueMap { .. } => "non_unique_map",
            Error::WholeGrassmannian => "whole_grassmannian",
            Error::HypothesisNotMet(_) => "hypothesis_not_met",
            Error::CrossValidation(_) => "cross_validation",
            Error::Malformed(_) => "malformed_input",
        }
    }

    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Malformed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
