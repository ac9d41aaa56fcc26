//! Problem files, command dispatch and reports for the `polyexp` binary.

pub mod commands;
pub mod problem;
pub mod report;

use thiserror::Error;

use polyexp_core::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// A theorem hypothesis does not hold, so the analysis is refused.
    #[error("{0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refused(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<polyexp_core::Error> for CliError {
    fn from(e: polyexp_core::Error) -> Self {
        use polyexp_core::Error;
        match e {
            Error::HypothesisViolated(_) | Error::RequiresGroupedMode => CliError::Refused(e.to_string()),
            Error::Arith(ArithError::OrderTooLarge { .. }) => {
                CliError::Input(format!("{e} (raise it with POLYEXP_MAX_ORDER)"))
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Applies `POLYEXP_MAX_ORDER` when set.
pub fn apply_environment() -> Result<(), CliError> {
    match std::env::var("POLYEXP_MAX_ORDER") {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("POLYEXP_MAX_ORDER: not a positive integer: {v:?}")))?;
            if cap == 0 {
                return Err(CliError::Input("POLYEXP_MAX_ORDER must be positive".into()));
            }
            polyexp_core::arith::set_max_order(cap);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}
