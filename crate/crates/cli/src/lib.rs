//! File formats, built-in examples, reports and the `quasitoric` command.

pub mod cli;
pub mod document;
pub mod examples;
pub mod num;
pub mod report;

pub use document::{parse_input, InputDocument, Mode, ParseError};
pub use examples::{generate_example, ExampleError};
pub use report::{check_document, run_report, ReportDocument, ReportError, ReportOptions};
