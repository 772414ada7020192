use thiserror::Error;

/// Errors produced while building, synthesizing or simulating discriminators.
///
/// State indices are 0-based positions in the input list; a state that is
/// not normalized is reported as `NotOrthonormal` with the pair `(i, i)`. Eigenvalue-array
/// indices are 1-based operator labels (array `j` belongs to `U_j`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("states {} and {} are not orthonormal (|overlap| = {overlap:.3e})", pair.0, pair.1)]
    NotOrthonormal { pair: (usize, usize), overlap: f64 },

    #[error("expected 2^n states of dimension 2^n, got {count} states of dimension {dim}")]
    BadCardinality { count: usize, dim: usize },

    #[error("amplitudes ({alpha}, {beta}) do not satisfy alpha^2 + beta^2 = 1")]
    NotNormalized { alpha: f64, beta: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("eigenvalue array {0} does not contain equal numbers of +1 and -1")]
    UnbalancedArray(usize),

    #[error("eigenvalue array {0} equals array {1} or its complement")]
    DuplicateOrComplement(usize, usize),

    #[error("states {0} and {1} share the same eigenvalue signature")]
    NonInjectiveSignatures(usize, usize),

    #[error("eigenvalue arrays are malformed: {0}")]
    MalformedArrays(String),

    #[error("no decomposition for family `{family}` operator {index}")]
    UnsupportedFamily { family: String, index: usize },

    #[error("input is not a member of the set (largest branch probability {best_probability:.12})")]
    NotAMember { best_probability: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("spin {spin} is out of range for a {n_spins}-spin system")]
    UnknownSpin { spin: usize, n_spins: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid spec file: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Json(#[from] JsonError),
}

/// Wrapper so `Error` can stay `Clone + PartialEq`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("json: {0}")]
pub struct JsonError(pub String);

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(JsonError(e.to_string()))
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotOrthonormal { .. } => "NotOrthonormal",
            Error::BadCardinality { .. } => "BadCardinality",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonHermitian { .. } => "NonHermitian",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::UnbalancedArray(_) => "UnbalancedArray",
            Error::DuplicateOrComplement(..) => "DuplicateOrComplement",
            Error::NonInjectiveSignatures(..) => "NonInjectiveSignatures",
            Error::MalformedArrays(_) => "MalformedArrays",
            Error::UnsupportedFamily { .. } => "UnsupportedFamily",
            Error::NotAMember { .. } => "NotAMember",
            Error::InvalidDensity(_) => "InvalidDensity",
            Error::InvalidCircuit(_) => "InvalidCircuit",
            Error::UnknownSpin { .. } => "UnknownSpin",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::Parse { .. } => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
