use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input to an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("csv {path}: line {line}: {msg}")]
    Csv { path: PathBuf, line: u64, msg: String },

    #[error("simplex budget of {budget} exceeded while building the filtration (dimension {dim}, eps {eps})")]
    ResourceBudget { budget: usize, dim: usize, eps: u32 },

    #[error("calibration of {param} failed: target {target}, closest {param}={closest} gives {achieved}")]
    Calibration {
        param: &'static str,
        target: String,
        closest: u32,
        achieved: String,
    },

    #[error("training diverged at epoch {epoch}: {msg}")]
    Divergence { epoch: usize, msg: String },

    #[error("non-finite gradient in layer {layer}")]
    NonFiniteGradient { layer: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("all {seeds} seeds failed, last error: {last}")]
    AllSeedsFailed { seeds: usize, last: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::ResourceBudget { .. } => 3,
            Error::AllSeedsFailed { .. } => 4,
            _ => 2,
        }
    }
}
