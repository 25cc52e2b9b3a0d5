//! Command-line front end for `orlicz-core`: norms, certificate searches and
//! verification suites, with JSON and CSV output.

mod app;
pub mod config;
pub mod expr;
pub mod fnfile;
pub mod json;
pub mod suites;

pub use app::{exit, run};
