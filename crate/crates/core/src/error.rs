//! Shared error type and result alias.
//!
//! Error kinds map onto the CLI exit codes: everything that stems from bad
//! inputs (`Domain`, `Validation`, `Parse`, `UnsupportedGeometry`, `BandGap`)
//! exits with code 2, while runtime failures (`Numerical`, `Io`) exit with 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested geometry is not supported by this solver.
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    /// The requested optical frequency lies inside the photonic band gap,
    /// where the guided mode is evanescent.
    #[error("band-gap error: {0}")]
    BandGap(String),

    /// An iterative numerical method failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A configuration document violated its schema or invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A configuration document could not be parsed at all.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code for this error kind (0 is success).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::UnsupportedGeometry(_)
            | Error::BandGap(_)
            | Error::Validation(_)
            | Error::Parse(_) => 2,
            Error::Numerical(_) | Error::Io(_) => 3,
        }
    }

    /// Short machine-readable kind tag used in the CLI's stderr JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::UnsupportedGeometry(_) => "unsupported-geometry",
            Error::BandGap(_) => "band-gap",
            Error::Numerical(_) => "numerical",
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
