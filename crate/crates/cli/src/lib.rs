//! Library side of the `manin` command: argument types, report schemas and
//! the subcommand implementations, kept here so tests can drive them
//! without spawning a process.

pub mod config;
pub mod report;
pub mod run;

pub use config::RunConfig;
pub use run::{run, run_to, Disagreement};

/// Exit status for an error, by category.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use manin_core::Error as E;
    if err.downcast_ref::<Disagreement>().is_some() {
        return 3;
    }
    match err.downcast_ref::<E>() {
        Some(E::Budget(_)) => 4,
        Some(_) => 2,
        None => 1,
    }
}

/// Short machine-readable category for an error record.
pub fn error_kind(err: &anyhow::Error) -> &'static str {
    use manin_core::Error as E;
    if err.downcast_ref::<Disagreement>().is_some() {
        return "disagreement";
    }
    match err.downcast_ref::<E>() {
        Some(E::Budget(_)) => "budget",
        Some(E::Parse { .. }) => "parse",
        Some(_) => "invalid_input",
        None => "runtime",
    }
}
