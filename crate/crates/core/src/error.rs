use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant maps to a short kebab-case [`Error::reason`] code so that
/// command-line callers can report failures in a machine-readable way.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("polar form is not alternating (must be symmetric with zero diagonal)")]
    NotAlternating,
    #[error("polar form is degenerate")]
    DegenerateForm,
    #[error("subspace is not totally singular")]
    NotTotallySingular,
    #[error("subspace has dimension {found}, expected half the ambient dimension {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("subspaces do not form a direct sum decomposition of the ambient space")]
    NotComplementary,
    #[error("vectors do not form a basis of the subspace")]
    NotABasis,
    #[error("map is not orthogonal for the quadratic form")]
    NotOrthogonal,
    #[error("map does not preserve the intersection form")]
    NotSymplectic,
    #[error("operands carry different quadratic forms")]
    FormMismatch,
    #[error("invalid embedding data: {0}")]
    InvalidEmbeddingData(String),
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("embeddings are not regularly homotopic")]
    NotRegularlyHomotopic,
    #[error("component {index}: embeddings are not regularly homotopic")]
    ComponentNotRegularlyHomotopic { index: usize },
    #[error("component count mismatch: {left} vs {right}")]
    ComponentCountMismatch { left: usize, right: usize },
    #[error("pieces carry different orientations")]
    OrientationMismatch,
}

/// Broad failure class, used to pick a process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input could not be parsed or failed structural validation.
    Malformed,
    /// The input is well formed but the requested quantity is undefined for it.
    Domain,
}

impl Error {
    pub fn reason(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotSquare { .. } => "not-square",
            Error::SingularMatrix => "singular-matrix",
            Error::Parse(_) => "parse-error",
            Error::DimensionTooLarge { .. } => "dimension-too-large",
            Error::NotAlternating => "not-alternating",
            Error::DegenerateForm => "degenerate-form",
            Error::NotTotallySingular => "not-totally-singular",
            Error::WrongDimension { .. } => "wrong-dimension",
            Error::NotComplementary => "not-complementary",
            Error::NotABasis => "not-a-basis",
            Error::NotOrthogonal => "not-orthogonal",
            Error::NotSymplectic => "not-symplectic",
            Error::FormMismatch => "form-mismatch",
            Error::InvalidEmbeddingData(_) => "invalid-embedding-data",
            Error::GenusMismatch { .. } => "genus-mismatch",
            Error::NotRegularlyHomotopic | Error::ComponentNotRegularlyHomotopic { .. } => {
                "not-regularly-homotopic"
            }
            Error::ComponentCountMismatch { .. } => "component-count-mismatch",
            Error::OrientationMismatch => "orientation-mismatch",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotTotallySingular
            | Error::WrongDimension { .. }
            | Error::NotOrthogonal
            | Error::FormMismatch
            | Error::GenusMismatch { .. }
            | Error::NotRegularlyHomotopic
            | Error::ComponentNotRegularlyHomotopic { .. }
            | Error::ComponentCountMismatch { .. }
            | Error::OrientationMismatch
            | Error::DimensionTooLarge { .. } => ErrorClass::Domain,
            _ => ErrorClass::Malformed,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
