//! DSL front end: parser, executor, and report types for the `corres`
//! command-line tool.

pub mod exec;
pub mod parser;
pub mod report;

pub use exec::{execute, ExecError, ExecOptions, IrredMode};
pub use parser::{parse, ParseError, Script};
pub use report::{Report, ResultRow, Status};
