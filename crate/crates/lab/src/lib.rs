//! Experiments, file formats and the command-line front end built on
//! `pgmax-core`.

pub mod certfile;
pub mod cli;
pub mod experiments;
pub mod record;
pub mod report;
pub mod stats;
