//! Library side of the `psmetro` command-line tool.

pub mod config;
pub mod error;
pub mod output;
pub mod point;
pub mod sweep;
pub mod validate;
