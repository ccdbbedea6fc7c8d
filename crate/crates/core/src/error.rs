use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {field}: {message}")]
    Validation { field: &'static str, message: String },

    #[error("{what} outside its domain: {message}")]
    Domain { what: &'static str, message: String },

    #[error("spectral parameter p = {p} lies within {radius:e} of the root {root} of Q")]
    Singular { p: f64, root: f64, radius: f64 },

    #[error("relaxation did not converge after {iterations} iterations (max step {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("atoms of the displaced chains overlap: pair distance {distance:e} m < {limit:e} m")]
    Overlap { distance: f64, limit: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("numerical instability: {0}")]
    Instability(String),

    #[error("unknown material {0:?}")]
    UnknownMaterial(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            what,
            message: message.into(),
        }
    }

    pub(crate) fn validation(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation {
            field,
            message: message.into(),
        }
    }
}
