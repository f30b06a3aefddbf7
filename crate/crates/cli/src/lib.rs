//! Batch front end for the mzlab engine: strict JSON requests in, canonical
//! JSON reports or plain-text tables out.

pub mod report;
pub mod request;
pub mod run;

pub use report::{format_json, format_report, format_text, report_value};
pub use request::{parse_document, parse_request, Command, Document, ParseError, Request};
pub use run::{execute, run_selftest, Outcome, Status};
