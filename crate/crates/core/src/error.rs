use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value lies outside the domain its owner accepts.
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    /// The trajectory never entered the stimulus neighbourhood within the cap.
    #[error("no convergence to stimulus {stimulus} within {max_iterations} iterations{}", location(.row, .column))]
    NonConvergence {
        stimulus: f64,
        max_iterations: u64,
        row: Option<usize>,
        column: Option<usize>,
    },

    #[error("none of the {0} grid points converged")]
    NoConvergedGridPoint(usize),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("class {0} has no rows")]
    EmptyClass(i64),

    #[error("at least two distinct classes are required, found {0}")]
    TooFewClasses(usize),

    #[error("class {label} has {available} rows, {requested} requested")]
    InsufficientClassCount {
        label: i64,
        available: usize,
        requested: usize,
    },

    #[error("test set is empty")]
    EmptyTestSet,

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("label column {0:?} not found")]
    MissingLabelColumn(String),

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn location(row: &Option<usize>, column: &Option<usize>) -> String {
    match (row, column) {
        (Some(r), Some(c)) => format!(" (row {r}, column {c})"),
        (Some(r), None) => format!(" (row {r})"),
        (None, Some(c)) => format!(" (column {c})"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: impl ToString, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            reason,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
