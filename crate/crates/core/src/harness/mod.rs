//! Scenario definitions, comparison tables and the invariant suite behind
//! the command-line tool.

pub mod calendar;
mod fig1;
mod report;
mod scenario;
mod validate;

use thiserror::Error;

use crate::error::PricingError;

pub use fig1::{fig1_series, Fig1Series};
pub use report::{emit_csv, run_scenario, ComparisonRow, PrecisionMode};
pub use scenario::{builtin_valuation_date, Scenario, BUILTIN_NAMES};
pub use validate::{validate_suite, CheckOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid scenario: {0}")]
    Config(String),
    #[error(transparent)]
    Pricing(#[from] PricingError),
    /// A pricing failure for one cell of a comparison table.
    #[error("T = {maturity}, {method}: {source}")]
    Cell {
        maturity: f64,
        method: String,
        #[source]
        source: PricingError,
    },
    #[error("post-condition violated: {0}")]
    PostCondition(String),
}

impl HarnessError {
    fn at(line: usize, err: HarnessError) -> Self {
        match err {
            HarnessError::Config(message) => HarnessError::Parse { line, message },
            other => other,
        }
    }

    pub(crate) fn cell(maturity: f64, method: impl Into<String>) -> impl FnOnce(PricingError) -> Self {
        let method = method.into();
        move |source| HarnessError::Cell { maturity, method, source }
    }
}
