//! Library half of the `two-ion-jcm` binary.
//!
//! Everything the executable does is reachable from here so that the
//! integration suite can drive simulations in-process and compare byte
//! output without spawning.

pub mod config;
pub mod output;
pub mod pipeline;
pub mod svg;

use std::process::ExitCode;

use thiserror::Error;
use two_ion_jcm::analysis::AnalysisError;
use two_ion_jcm::coupling::ParamsError;
use two_ion_jcm::dynamics::DynamicsError;
use two_ion_jcm::oracle::OracleError;

/// Exit code for malformed invocations (clap uses the same one).
pub const EXIT_USAGE: u8 = 2;
/// Exit code for insufficient Fock-space truncation.
pub const EXIT_TRUNCATION: u8 = 3;
/// Exit code for a failed dynamics-versus-oracle comparison.
pub const EXIT_VERIFY_MISMATCH: u8 = 4;
/// Exit code for numerical failures.
pub const EXIT_NUMERICAL: u8 = 5;

/// Everything that can abort a command, mapped onto the documented exit
/// codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("truncation insufficient; rerun with --n-max {required_n_max} or larger")]
    Truncation { required_n_max: usize },
    #[error("verification mismatch: max |Δρ| = {max_error:.3e} exceeds tolerance {tolerance:.3e}")]
    VerifyMismatch { max_error: f64, tolerance: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(EXIT_USAGE),
            CliError::Truncation { .. } => ExitCode::from(EXIT_TRUNCATION),
            CliError::VerifyMismatch { .. } => ExitCode::from(EXIT_VERIFY_MISMATCH),
            CliError::Numerical(_) => ExitCode::from(EXIT_NUMERICAL),
            CliError::Io(_) => ExitCode::FAILURE,
        }
    }
}

impl From<ParamsError> for CliError {
    fn from(e: ParamsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::TruncationInsufficient { required_n_max } => CliError::Truncation { required_n_max },
            DynamicsError::TruncationSearchExceeded { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Numerical(e.to_string())
    }
}
