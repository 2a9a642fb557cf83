//! Input documents, reports and the self-test runner behind the `descent` binary.

pub mod commands;
pub mod document;
pub mod model;
pub mod selftest;

pub use commands::CliError;
pub use document::{Diagnostic, Document, Kind};
pub use model::{parse_document, Model};
