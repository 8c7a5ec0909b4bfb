//! Command-line front end and acceptance criteria for the DNLS toolkit.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod error;
pub mod report;
