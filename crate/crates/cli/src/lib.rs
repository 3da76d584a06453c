//! Command-line companion to the certification library: problem-file
//! parsing, pipeline orchestration, and report rendering.

pub mod parse;
pub mod pipeline;
pub mod report;

pub use parse::{parse_problem, serialize_problem, Diagnostic};
pub use pipeline::{
    run_check, run_loja, run_report, CheckOutcome, LojaOutcome, Report, Verdict, DEFAULT_K_MAX,
};
