use fockcat::SpaceObject;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("type error in `{subexpr}`: {message} ({left} vs {right})")]
    Type {
        subexpr: String,
        message: String,
        left: SpaceObject,
        right: SpaceObject,
    },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("in `{subexpr}`: {source}")]
    Eval {
        subexpr: String,
        source: fockcat::Error,
    },
    #[error(transparent)]
    Core(#[from] fockcat::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ExprError {
    /// Whether the error is a failed law check rather than bad input.
    pub fn is_law_failure(&self) -> bool {
        matches!(
            self,
            ExprError::Core(fockcat::Error::LawViolation { .. })
                | ExprError::Eval {
                    source: fockcat::Error::LawViolation { .. },
                    ..
                }
        )
    }
}

pub type Result<T> = std::result::Result<T, ExprError>;
