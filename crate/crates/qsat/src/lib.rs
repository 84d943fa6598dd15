//! File formats, DOT emission and the command implementations behind the
//! `qsat` binary.

pub mod commands;
pub mod dot;
pub mod format;
pub mod io;
pub mod probe;

use thiserror::Error;

/// Anything wrong with the inputs or the file system; the CLI exits with 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Format(String),
    #[error("invalid dag: {0}")]
    Dag(#[from] qsat_core::dag::DagError),
    #[error("bad word: {0}")]
    Word(#[from] qsat_core::word::WordError),
    #[error("bad quotient: {0}")]
    Quotient(#[from] qsat_core::quotient::QuotientError),
    #[error("{0}")]
    Realize(#[from] qsat_core::realize::RealizeError),
    #[error("bad group: {0}")]
    Group(#[from] qsat_core::cep::GroupError),
    #[error("unknown demo `{0}`; known: {known}", known = commands::DEMOS.join(", "))]
    UnknownDemo(String),
}
