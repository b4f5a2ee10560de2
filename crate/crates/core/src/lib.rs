pub mod algebra;
pub mod cli;
pub mod comodule;
pub mod constructions;
pub mod coring;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod oracle;
pub mod random;
pub mod report;
pub mod spec_file;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
