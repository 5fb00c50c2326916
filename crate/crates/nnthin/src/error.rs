use std::fmt;

/// Errors surfaced by dataset construction, parsing, and the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A dataset or point list was empty where at least one element is required.
    EmptyDataset,
    /// A point was constructed with no coordinates.
    EmptyPoint,
    /// Two operands disagree on dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// A coordinate was NaN or infinite.
    NonFiniteCoordinate,
    /// Two dataset points carry identical coordinates (0-based indices).
    DuplicatePoints { a: usize, b: usize },
    /// Two CSV rows carry identical coordinates (1-based file lines).
    DuplicateRows { a: usize, b: usize },
    /// Sphere inversion was asked to map its own center.
    DegenerateInversion,
    /// An index referred outside a collection.
    IndexOutOfBounds { index: usize, len: usize },
    /// A linear program failed structural validation.
    MalformedLp(String),
    /// A CSV cell or row could not be parsed (1-based line/column).
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// An operation only defined for a specific dimension was asked for another.
    UnsupportedDimension { expected: usize, got: usize },
    /// A configuration value was out of range.
    InvalidParameter(String),
    /// Reading or writing a file failed.
    Io { path: String, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDataset => write!(f, "dataset must contain at least one point"),
            Error::EmptyPoint => write!(f, "point must have at least one coordinate"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NonFiniteCoordinate => write!(f, "coordinates must be finite"),
            Error::DuplicatePoints { a, b } => {
                write!(f, "points {a} and {b} have identical coordinates")
            }
            Error::DuplicateRows { a, b } => {
                write!(f, "rows {a} and {b} have identical coordinates")
            }
            Error::DegenerateInversion => {
                write!(f, "cannot invert the center of the inversion sphere")
            }
            Error::IndexOutOfBounds { index, len } => {
                write!(f, "index {index} out of bounds for length {len}")
            }
            Error::MalformedLp(msg) => write!(f, "malformed linear program: {msg}"),
            Error::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line}, column {column}: {message}"),
            Error::UnsupportedDimension { expected, got } => {
                write!(f, "operation requires dimension {expected}, got {got}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for Error {}
