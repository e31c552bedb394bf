use thiserror::Error;

/// Errors raised by the library. Variant names double as the module error
/// names reported by the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScarfError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("branch {branch} unavailable: {reason}")]
    BranchUnavailable { branch: String, reason: String },
    #[error("real spectrum requested with C = {c} (needs C = 0)")]
    NotRealPhase { c: f64 },
    #[error("classification requires the real phase, got C = {c}")]
    RequiresRealPhase { c: f64 },
    #[error("parameters are off the PT line A = B - alpha/2 (offset {offset:e})")]
    NotOnPtLine { offset: f64 },
    #[error("A = {a} is not an integer multiple of alpha (n = {n})")]
    NotSpectralSingularity { a: f64, n: usize },
    #[error("parameters are off the isospectral line A = -(B - alpha/2) (offset {offset:e})")]
    NotOnIsospectralLine { offset: f64 },
    #[error("eigenvalue {index} did not converge after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },
    #[error("potential magnitude {magnitude:e} at the box edge exceeds {threshold:e}")]
    GridTooSmall { magnitude: f64, threshold: f64 },
    #[error("adaptive step collapsed to {step:e} at x = {x}")]
    StiffFailure { x: f64, step: f64 },
    #[error("potential magnitude {magnitude:e} at x = {x} exceeds decay tolerance {tol:e}")]
    NonDecayedPotential { x: f64, magnitude: f64, tol: f64 },
}

impl ScarfError {
    /// Stable variant name, used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidParams(_) => "InvalidParams",
            Self::InvalidInput(_) => "InvalidInput",
            Self::BranchUnavailable { .. } => "BranchUnavailable",
            Self::NotRealPhase { .. } => "NotRealPhase",
            Self::RequiresRealPhase { .. } => "RequiresRealPhase",
            Self::NotOnPtLine { .. } => "NotOnPTLine",
            Self::NotSpectralSingularity { .. } => "NotSpectralSingularity",
            Self::NotOnIsospectralLine { .. } => "NotOnIsospectralLine",
            Self::NoConvergence { .. } => "NoConvergence",
            Self::GridTooSmall { .. } => "GridTooSmall",
            Self::StiffFailure { .. } => "StiffFailure",
            Self::NonDecayedPotential { .. } => "NonDecayedPotential",
        }
    }
}

pub type Result<T, E = ScarfError> = std::result::Result<T, E>;
