//! File formats: DIMACS graphs and JSON documents.

mod dimacs;
mod json;

pub use dimacs::{parse_dimacs, write_dimacs, ParseError};
pub use json::{from_json, InstanceDocument, JsonError, SCHEMA_VERSION};
