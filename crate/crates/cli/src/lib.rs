//! Library side of `noncomm-lab`: campaign configuration, the checks behind
//! each subcommand, and JSON report assembly.
//!
//! Exit codes: 0 success, 1 an asserted invariant failed, 2 configuration or
//! parse error, 3 abelian group (empty noncommuting graph), 4 budget
//! exceeded, 5 I/O error.

// `!(x > 0.0)` is how NaN gets rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod commands;
pub mod config;
pub mod report;

pub use campaign::{run, Campaign};
pub use config::{CampaignConfig, Check, ModeKind, Parameters};
pub use report::report_schema_version;

use std::path::PathBuf;

use noncomm_core::graph::GraphError;
use noncomm_core::group::GroupError;
use noncomm_core::inequalities::InequalityError;
use noncomm_core::isoperimetry::IsoError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ABELIAN: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0} is abelian: its noncommuting graph is empty")]
    Abelian(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Abelian(_) => EXIT_ABELIAN,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderCapExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::Graph(g) => g.into(),
            IsoError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<InequalityError> for CliError {
    fn from(e: InequalityError) -> Self {
        CliError::Config(e.to_string())
    }
}
