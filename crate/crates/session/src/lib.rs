//! File formats, framed TCP sessions and the command line around
//! `magmakey-core`.

pub mod cli;
pub mod doc;
mod error;
pub mod keygen;
pub mod report;
pub mod session;
pub mod wire;

pub use error::{AppError, Result};
