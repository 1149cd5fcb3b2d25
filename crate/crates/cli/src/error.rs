use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{origin}:{line}: `{token}` is not a decimal residue")]
    NotNumeric { origin: String, line: usize, token: String },
    #[error("{origin}:{line}: {token} is outside [0, {modulus})")]
    OutOfRange { origin: String, line: usize, token: String, modulus: u64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] sumprod_core::Error),
}
