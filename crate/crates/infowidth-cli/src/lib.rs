//! Command-line front end for the [`infowidth`] library.
//!
//! Five subcommands cover the library surface:
//!
//! * `width` — information width `I*(l)`, threshold cardinality `r`, and
//!   optimal cost `κ*(l)` for one query, as a CSV row.
//! * `property` — information report (`I`, `H`, `l`, `kappa`, `eta`) for a
//!   binary-function-class property, as JSON.
//! * `measure` — the same report for an explicit property supplied as JSON,
//!   optionally against a specific target subset.
//! * `figure` — regenerates the reference figure tables as CSV and,
//!   optionally, a self-contained SVG line chart.
//! * `mc-validate` — seeded statistical self-checks of the Monte-Carlo
//!   samplers (acceptance rates, χ² uniformity, zero-one thresholds).
//!
//! Exit codes: `0` success, `1` statistical failure in `mc-validate` (or an
//! I/O failure), `2` usage or validation error, `3` infeasible computation
//! (size caps, hopeless rejection sampling).

pub mod args;
pub mod figures;
pub mod output;
pub mod reports;
pub mod run;
pub mod validate;

use std::fmt;

/// Errors surfaced to the user, each with a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input files, out-of-domain parameters.
    Usage(String),
    /// The request is well-formed but computationally out of reach.
    Infeasible(String),
    /// A statistical self-check failed.
    Check(String),
    /// Reading or writing a file failed.
    Io(String),
}

impl CliError {
    /// The process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Check(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(why) => write!(f, "{why}"),
            CliError::Infeasible(why) => write!(f, "infeasible: {why}"),
            CliError::Check(why) => write!(f, "{why}"),
            CliError::Io(why) => write!(f, "{why}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<infowidth::Error> for CliError {
    fn from(e: infowidth::Error) -> Self {
        use infowidth::Error as E;
        match e {
            E::TooLarge { .. }
            | E::SamplingInfeasible { .. }
            | E::RetryCapExceeded { .. }
            | E::AllRejected => CliError::Infeasible(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Convenience alias for CLI results.
pub type CliResult<T> = std::result::Result<T, CliError>;
