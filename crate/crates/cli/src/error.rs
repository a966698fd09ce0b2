//! Error-to-exit-code mapping. Exit codes: 0 success, 2 usage error,
//! 3 domain/precondition error, 4 numeric failure. Errors print as a single
//! machine-readable JSON line on stderr.

use paspectra_core::experiments::ExperimentError;
use paspectra_core::graph::GraphError;
use paspectra_core::neumann::NeumannError;
use paspectra_core::operators::OperatorError;
use paspectra_core::spectral::SpectralError;

#[derive(Debug)]
pub enum CliError {
    /// Inconsistent or contradictory flags (exit 2).
    Usage(String),
    /// Violated preconditions: ranges, domains, file contents, IO (exit 3).
    Domain(String),
    /// Numeric failure: overflow, non-convergence, violated invariants (exit 4).
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Numeric(_) => "numeric",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Numeric(m) => m,
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.message() }).to_string()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("io: {e}"))
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Overflow => CliError::Numeric(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<OperatorError> for CliError {
    fn from(e: OperatorError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Eigen(_)
            | SpectralError::Solve(_)
            | SpectralError::ContainmentViolated { .. }
            | SpectralError::ZeroModeMissing { .. }
            | SpectralError::ResolventBoundViolated(_) => CliError::Numeric(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<NeumannError> for CliError {
    fn from(e: NeumannError) -> Self {
        match e {
            NeumannError::InvalidTraces(_) => CliError::Numeric(e.to_string()),
            NeumannError::Graph(g) => g.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Overflow(_) | ExperimentError::InvariantViolated(_) => {
                CliError::Numeric(e.to_string())
            }
            ExperimentError::Graph(g) => g.into(),
            ExperimentError::Spectral(s) => s.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<crate::graph_file::GraphFileError> for CliError {
    fn from(e: crate::graph_file::GraphFileError) -> Self {
        CliError::Domain(e.to_string())
    }
}
