//! Command-line front end: file formats, verification suites and reports.

pub mod io;
pub mod report;
pub mod suites;
