use std::path::PathBuf;

/// Failures of a CLI run, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("model stage '{0}' failed")]
    Stage(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Other(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Stage(_) => 4,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Wraps a library error from reading `what`.
    pub fn context(what: &str, e: liepool::Error) -> Self {
        match CliError::from(e) {
            CliError::Input(msg) => CliError::Input(format!("{what}: {msg}")),
            other => other,
        }
    }
}

impl From<liepool::Error> for CliError {
    fn from(e: liepool::Error) -> Self {
        use liepool::Error as E;
        let msg = e.to_string();
        match e {
            E::DimensionCap { .. } | E::TooMany { .. } | E::QubitCount(_) => CliError::Cap(msg),
            E::Parse { .. }
            | E::Config(_)
            | E::QubitMismatch { .. }
            | E::NotAntiHermitian
            | E::NotHermitian
            | E::NonUnitCoefficient(_)
            | E::InvalidIndices(_)
            | E::NotBasisState
            | E::NotNormalized(_)
            | E::LinearlyDependent
            | E::TermsCommute(..) => CliError::Input(msg),
            E::NotClosed { .. } => CliError::Other(msg),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
