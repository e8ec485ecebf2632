//! Scene files, reports, SVG figures and the command implementations behind
//! the `conconic` binary.

pub mod commands;
pub mod report;
pub mod scene;
pub mod svg;

pub use commands::{run_morley, run_poncelet, run_verify, MorleyArgs, Outcome, PonceletArgs};
pub use report::{MorleyReport, PonceletReport, VerifyReport};
pub use scene::{Mode, Scene};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] crate::error::Error),
}
