//! Workspace files, reports and the `pogcat` command line over
//! `pogcat-core`.

pub mod cli;
pub mod commands;
pub mod fixtures;
pub mod format;
pub mod pipeline;
pub mod report;
