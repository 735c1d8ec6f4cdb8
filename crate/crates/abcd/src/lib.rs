//! File formats, configuration files and the experiment harness for ABCD
//! graphs. The model itself lives in `abcd-core`.

pub mod config;
pub mod error;
pub mod format;
pub mod harness;

pub use error::{Error, Result};
