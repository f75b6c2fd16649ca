use alloc::string::String;

/// Errors raised by state construction, channel application, geometry and
/// the resource-inequality language.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("subsystem dimension must be at least 1 (label `{0}`)")]
    ZeroDimension(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("eigenvalue {0:e} is below the PSD tolerance")]
    NegativeEigenvalue(f64),
    #[error("vector norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("Kraus operators are not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("matrix columns are not orthonormal (deviation {0:e})")]
    NotIsometry(f64),
    #[error("instrument completeness violated (deviation {0:e})")]
    Completeness(f64),
    #[error("probabilities must be non-negative and sum to 1 (sum {0})")]
    BadProbabilities(f64),
    #[error("classical register is not block diagonal (off-block mass {0:e})")]
    NotBlockDiagonal(f64),
    #[error("subsystem groups overlap on `{0}`")]
    OverlappingGroups(String),
    #[error("{0} outcomes exceed the cap of {1}")]
    TooManyOutcomes(usize, usize),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("unsupported number of copies {0} (only 1 and 2)")]
    UnsupportedCopies(usize),
    #[error("value {value} for `{name}` is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("invalid model spec: {0}")]
    Model(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// True for failures caused by numerically invalid inputs or results, as
    /// opposed to malformed requests.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_)
                | Error::BadTrace(_)
                | Error::NegativeEigenvalue(_)
                | Error::NotNormalized(_)
                | Error::NotTracePreserving(_)
                | Error::NotIsometry(_)
                | Error::Completeness(_)
                | Error::BadProbabilities(_)
                | Error::NotBlockDiagonal(_)
        )
    }
}
