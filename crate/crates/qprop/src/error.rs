use qprop_core::Error as CoreError;

/// Failures of a command, each mapped to a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {origin}: {source}")]
    Json {
        origin: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("unsupported dimension {0}; only 2 is available")]
    UnsupportedDim(usize),
    #[error("{0}")]
    Validation(String),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 parse, 3 dimension, 4 numeric, 5 validation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Json { .. } | CliError::Usage(_) => 2,
            CliError::UnsupportedDim(_) => 3,
            CliError::Validation(_) | CliError::Output(_) => 5,
            CliError::Core(e) => match e {
                CoreError::DimensionTooSmall(_)
                | CoreError::DimensionMismatch { .. }
                | CoreError::NotSquare { .. } => 3,
                CoreError::ZeroVector
                | CoreError::NotHermitian(_)
                | CoreError::NotIdempotent(_)
                | CoreError::NonFinite
                | CoreError::ZeroPivot(_)
                | CoreError::Unnormalized(_) => 4,
                _ => 5,
            },
        }
    }

    /// Short machine-readable category.
    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse",
            3 => "dimension",
            4 => "numeric",
            _ => "validation",
        }
    }

    /// The single stderr line: `error[category]: message`.
    pub fn line(&self) -> String {
        let msg = self.to_string().replace('\n', " ");
        format!("error[{}]: {}", self.category(), msg.trim())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
