use thiserror::Error;

/// Errors shared by all solver modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("graph contains a cycle")]
    Cycle,

    #[error("no topological order starting at source `{0}` (the source has incoming edges)")]
    NoOrderFromSource(String),

    #[error("network is invalid: {0}")]
    InvalidNetwork(String),

    #[error(
        "log-reliability {log_value} of edge `{edge}` state {state} is not an integer multiple \
         of unit {unit} (off by {offset:e})"
    )]
    OffGrid {
        edge: String,
        state: usize,
        log_value: f64,
        unit: f64,
        offset: f64,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),

    #[error("flow decomposition failed: {0}")]
    Decomposition(String),

    #[error("path distribution is empty")]
    EmptyDistribution,

    #[error("width mismatch: template width {expected}, string width {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("no source-to-sink path exists")]
    NoPath,
}

pub type Result<T> = std::result::Result<T, Error>;
