use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("excluded surface: {0}")]
    ExcludedSurface(String),
    #[error("empty marking: every boundary component needs a marked point and the surface needs at least one")]
    EmptyMarking,
    #[error("(n={n}, rank={rank}) is not realizable by a closed surface")]
    NotRealizable { n: usize, rank: usize },

    #[error("unknown arc {0}")]
    UnknownArc(usize),
    #[error("arc {0} is the fold of a self-folded triangle and cannot be flipped")]
    NotFlippable(usize),
    #[error("tagged arc {0} is not present in the triangulation")]
    ArcNotPresent(usize),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix dimension {n} exceeds the canonical-form bound {bound}")]
    DimensionTooLarge { n: usize, bound: usize },
    #[error("integer overflow during mutation")]
    Overflow,
    #[error("bad quiver spec: {0}")]
    BadSpec(String),

    #[error("excluded model: {0}")]
    ExcludedModel(String),

    #[error("exchange relation produced a non-Laurent result")]
    NonLaurentResult,
    #[error("denominator vector of the zero element is undefined")]
    ZeroElement,

    #[error("invalid block decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ExcludedSurface(_) => "excluded_surface",
            Error::EmptyMarking => "empty_marking",
            Error::NotRealizable { .. } => "not_realizable",
            Error::UnknownArc(_) => "unknown_arc",
            Error::NotFlippable(_) => "not_flippable",
            Error::ArcNotPresent(_) => "arc_not_present",
            Error::InvalidTriangulation(_) => "invalid_triangulation",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotSkewSymmetric => "not_skew_symmetric",
            Error::DimensionTooLarge { .. } => "dimension_too_large",
            Error::Overflow => "overflow",
            Error::BadSpec(_) => "bad_spec",
            Error::ExcludedModel(_) => "excluded_model",
            Error::NonLaurentResult => "non_laurent_result",
            Error::ZeroElement => "zero_element",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::Parse(_) => "parse_error",
        }
    }
}
