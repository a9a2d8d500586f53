use thiserror::Error;

/// Errors produced by the library.
///
/// Validation failures carry the measured violation so callers can report
/// how far off an input was, not just that it was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} exceeds the supported maximum of {1}")]
    DimensionOverflow(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension d = {0}")]
    UnsupportedDimension(usize),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix trace deviates from 1 by {0:e}")]
    NotUnitTrace(f64),
    #[error("matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("vector norm deviates from 1 by {0:e}")]
    NotNormalized(f64),
    #[error("not an orthonormal basis (max deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("design condition violated (max deviation {0:e})")]
    InvalidDesign(f64),
    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("subset enumeration needs {count} subsets, above the cap of {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },
    #[error("optimizer did not converge after {restarts} restarts (best value {best})")]
    NonConvergence { restarts: usize, best: f64 },
    #[error("bounds were computed for {bounds}, but the measurement is {spec}")]
    SpecMismatch { spec: String, bounds: String },
    #[error("invalid index {index} (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt { line: usize, column: usize, message: String },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
