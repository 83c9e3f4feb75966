//! Command-line front end for `bergman-core`: file formats, reports and the
//! verification suites.

pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod suites;
