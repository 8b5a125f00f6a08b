use std::path::PathBuf;

use thiserror::Error;
use torus_chaos::ChaosError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    ConfigSyntax {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("invalid value for `{key}`: {message}")]
    InvalidValue { key: &'static str, message: String },

    #[error("missing required setting `{0}`")]
    Missing(&'static str),

    #[error("invalid partition spec `{spec}`: {message}")]
    PartitionSpec { spec: String, message: String },

    #[error("invalid alpha range `{spec}`: {message}")]
    AlphaRange { spec: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed csv {path}: {message}")]
    Csv { path: PathBuf, message: String },

    #[error(transparent)]
    Chaos(#[from] ChaosError),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
