//! Expression parsing, configuration, reports, and command dispatch.

pub mod config;
pub mod expr;
pub mod report;
pub mod run;

pub use config::{Format, RunConfig};
pub use expr::{parse_expression, parse_with_vars, Expr};
pub use report::{Record, Report};
pub use run::{exit_code, run, Command};
