use dirac_jmatrix::{Error, ErrorKind};
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("ThresholdError: grid crosses |eps| = 1 (pass --split to evaluate each side separately)")]
    ThresholdCrossing,
    #[error("{module}: {source}")]
    Core { module: &'static str, source: Error },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// 1 for configuration and I/O problems, 2 for domain errors, 3 for
    /// convergence failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::ThresholdCrossing => 2,
            CliError::Core { source, .. } => match source.kind() {
                ErrorKind::Config => 1,
                ErrorKind::Domain => 2,
                ErrorKind::Convergence => 3,
            },
        }
    }
}

/// Wraps a core error, recording the module it came from.
pub fn core<E: Into<Error>>(e: E) -> CliError {
    let source = e.into();
    let module = match &source {
        Error::Specfun(_) => "specfun",
        Error::Pollaczek(_) => "pollaczek",
        Error::Model(_) => "model",
        Error::Spectrum(_) => "spectrum",
        Error::Scattering(_) => "scattering",
        Error::Resolvent(_) => "resolvent",
        Error::Wavefunction(_) => "wavefunction",
    };
    CliError::Core { module, source }
}
