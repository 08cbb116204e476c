use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown modality `{0}`")]
    UnknownModality(String),

    #[error("modality `{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("modality `{name}` redeclared with arity {found} (was {expected})")]
    ConflictingArity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("no value for `{0}`")]
    Unassigned(String),

    #[error("formula `{0}` is not propositional")]
    NotPropositional(String),

    #[error("formula `{0}` nests modal operators")]
    Iterative(String),

    #[error("formula `{0}` is not closed")]
    NotClosed(String),

    #[error("state {state} out of range for {size} state(s)")]
    StateOutOfRange { state: usize, size: usize },

    #[error("set {set} is not a subset of a base set of size {base}")]
    BaseMismatch { set: String, base: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("internal certification failure: {0}")]
    Certification(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Re-anchors a formula-level syntax error onto a file line.
    pub(crate) fn at_line(self, line: usize, col_offset: usize) -> Self {
        match self {
            Error::Syntax { col, msg, .. } => Error::Syntax {
                line,
                col: col + col_offset,
                msg,
            },
            other => other,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
