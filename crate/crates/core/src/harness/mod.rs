//! Experiment configuration, exact and reference solutions, convergence
//! studies and CSV/SVG output for the benchmark problems.

mod config;
mod exact;
mod output;
mod presets;
mod study;

pub use config::{
    AlphaSpec, BcSpec, ExactSpec, ExperimentConfig, GridSpec, InitialSpec, ModelSpec, MomentumSpec, OutputSpec,
    Resolved, SchemeSpec, SpatialSpec,
};
pub use exact::{erf, erfc, error_norms, exact_linear_advdiff, exact_riemann_erf, NormKind};
pub use output::{convergence_csv, profile_csv, LineChart, Series};
pub use presets::{paper_test_ids, preset, preset_names, run_paper_test, PaperTestReport};
pub use study::{
    exact_profile, observed_orders, restrict_cubic, run_convergence_study, run_experiment, run_reference,
    ConvergenceReport, ConvergenceRow, Outcome, Reference, DEFAULT_LADDER,
};

use crate::integrator::IntegratorError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("relative norm of an all-zero reference")]
    DegenerateNorm,
    #[error("{label}: {source}")]
    Run { label: String, source: IntegratorError },
    #[error("i/o error: {0}")]
    Io(String),
}

impl HarnessError {
    /// Process exit code: 2 for bad input, 3 for blow-up, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Validation(_) | HarnessError::Unsupported(_) | HarnessError::Domain(_) => 2,
            HarnessError::Run { source, .. } if source.is_blow_up() => 3,
            HarnessError::Run { source: IntegratorError::Invalid(_), .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn run(label: impl Into<String>, source: IntegratorError) -> Self {
        HarnessError::Run { label: label.into(), source }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}
