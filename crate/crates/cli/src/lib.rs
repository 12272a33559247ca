//! Batch front end: reads JSON problem specifications, runs the checks and
//! calculators of `reptor`, and produces JSON reports.

pub mod regress;
pub mod report;
pub mod run;
pub mod spec;

pub use run::{
    execute, execute_file, Command, Outcome, EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE,
};
pub use spec::{FieldChoice, Overrides};
