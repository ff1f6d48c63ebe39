use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, configuration or environment.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] fivevertex::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// 2 for invalid input (including an exceeded work budget), 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Model(fivevertex::Error::InvalidParameter(_))
            | CliError::Model(fivevertex::Error::BudgetExceeded { .. }) => 2,
            _ => 1,
        }
    }
}
