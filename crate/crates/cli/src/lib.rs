//! Graph file format, command dispatch and report rendering for the
//! `leavitt` command-line tool.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, run_pyramid, run_text, CliError, Command, Options};
pub use document::{emit, parse_graph_file, Body, GraphDocument, ParseError};
pub use report::Report;
