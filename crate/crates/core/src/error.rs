use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("qubit count {0} is outside the supported range")]
    QubitCount(usize),

    #[error("operator is not anti-Hermitian")]
    NotAntiHermitian,

    #[error("operator is not Hermitian")]
    NotHermitian,

    #[error("Pauli term must have unit coefficient, got {0}")]
    NonUnitCoefficient(num_complex::Complex64),

    #[error("invalid mode indices: {0}")]
    InvalidIndices(String),

    #[error("closure dimension exceeds cap {cap}")]
    DimensionCap { cap: usize },

    #[error("basis is not closed under commutation (residual {residual:e})")]
    NotClosed { residual: f64 },

    #[error("basis elements are linearly dependent")]
    LinearlyDependent,

    #[error("Pauli terms {0} and {1} commute")]
    TermsCommute(usize, usize),

    #[error("reference state must be a computational basis state")]
    NotBasisState,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("too many {what}: {got} > {max}")]
    TooMany {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
