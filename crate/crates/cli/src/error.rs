use thiserror::Error;

/// Failures of a subcommand, each tied to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input: exit 2.
    #[error("input error: {0}")]
    Input(String),

    /// A documented precondition does not hold: exit 3.
    #[error("precondition violation: {0}")]
    Precondition(String),

    /// A proved inequality failed beyond its error budget: exit 4.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// A replayed run produced different verdicts: exit 1.
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),

    /// Numerical failure inside the library: exit 1.
    #[error(transparent)]
    Numerical(steinsym::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::TheoremViolation(_) => 4,
            CliError::ReplayMismatch(_) | CliError::Numerical(_) => 1,
        }
    }

    pub fn io(context: impl std::fmt::Display, e: std::io::Error) -> CliError {
        CliError::Input(format!("{context}: {e}"))
    }
}

impl From<steinsym::Error> for CliError {
    fn from(e: steinsym::Error) -> Self {
        use steinsym::Error as E;
        match e {
            E::InvalidInput(m) => CliError::Input(m),
            E::Io(e) => CliError::Input(e.to_string()),
            E::Json(e) => CliError::Input(e.to_string()),
            E::PreconditionViolation(m) => CliError::Precondition(m),
            E::StepFailure { step, source } => match CliError::from(*source) {
                CliError::Numerical(inner) => CliError::Numerical(E::StepFailure {
                    step,
                    source: Box::new(inner),
                }),
                other => other,
            },
            other => CliError::Numerical(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
