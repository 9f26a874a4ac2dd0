use std::fmt;
use std::process::ExitCode;

/// Exit status classes of the `ucpc` binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Failure = 1,
    Usage = 2,
    Data = 3,
    Verification = 4,
}

/// An error together with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub source: anyhow::Error,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl fmt::Display) -> Self {
        CliError {
            status: Status::Usage,
            source: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn data(msg: impl fmt::Display) -> Self {
        CliError {
            status: Status::Data,
            source: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn verification(msg: impl fmt::Display) -> Self {
        CliError {
            status: Status::Verification,
            source: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.status as u8)
    }

    /// Prefixes the message with where the failure happened.
    pub fn context(self, what: impl fmt::Display) -> Self {
        CliError {
            status: self.status,
            source: self.source.context(what.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

impl From<ucpc_core::Error> for CliError {
    fn from(e: ucpc_core::Error) -> Self {
        use ucpc_core::Error as E;
        let status = match &e {
            E::Argument(_) | E::EnumerationGuard { .. } => Status::Usage,
            E::Sampling(_) | E::Underflow => Status::Failure,
            _ => Status::Data,
        };
        CliError {
            status,
            source: e.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            status: Status::Data,
            source: e.into(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError {
            status: Status::Data,
            source: e.into(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError {
            status: Status::Data,
            source: e.into(),
        }
    }
}
