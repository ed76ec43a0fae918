//! Command-line merge driver and scenario replay harness for Java sources.

pub mod config;
pub mod driver;
pub mod harness;
