use hbl_core::Error as CoreError;

use crate::dsl::DslError;

/// Process exit statuses.
pub mod exit {
    pub const INPUT: i32 = 1;
    pub const INFEASIBLE: i32 = 3;
    pub const PARTIAL: i32 = 4;
    pub const BUDGET: i32 = 5;
    pub const VERIFICATION: i32 = 6;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Dsl(#[from] DslError),

    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::InfeasiblePrimal { .. } | CoreError::KernelsIntersect) => exit::INFEASIBLE,
            CliError::Core(CoreError::BudgetExceeded { .. }) => exit::BUDGET,
            _ => exit::INPUT,
        }
    }
}
