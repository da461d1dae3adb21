//! File-driven front end for `luna-core`.

pub mod commands;
pub mod doc;
pub mod json;
pub mod report;

pub use commands::{cmd_classify, cmd_compare, cmd_polytope, cmd_recover, cmd_validate};
pub use doc::{parse_input, InputDocument, ParseError};
pub use report::OutputReport;
