//! Exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (for `solve` and `verify`: the certificate verified) |
//! | 1 | verification failed |
//! | 2 | usage, I/O or parse error |
//! | 3 | the input has a bridge the algorithm cannot handle |
//! | 4 | a vertex degree violates the algorithm's precondition |
//! | 5 | a size budget was exceeded |
//! | 6 | any other precondition or internal failure |

use std::fmt;
use std::process::ExitCode;

use subcubic_tsp::Error;

pub const VERIFY_FAILED: u8 = 1;
pub const USAGE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Solver(Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => USAGE,
            CliError::Solver(e) => solver_code(e),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Solver(e) => write!(f, "{}: {e}", status_name(e)),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Solver(e)
    }
}

pub fn solver_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => USAGE,
        Error::BridgeFound(_) => 3,
        Error::DegreeViolation { .. } => 4,
        Error::BudgetExceeded { .. } => 5,
        _ => 6,
    }
}

/// Short name used in CSV status cells and error messages.
pub fn status_name(e: &Error) -> &'static str {
    match solver_code(e) {
        USAGE => "parse-error",
        3 => "bridge-found",
        4 => "degree-violation",
        5 => "budget-exceeded",
        _ => "precondition",
    }
}

pub fn exit(code: u8) -> ExitCode {
    ExitCode::from(code)
}
