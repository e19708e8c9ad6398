use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("contraction error: {0}")]
    Contraction(String),
    #[error("basis mismatch: holonomic and frame-indexed components cannot be mixed")]
    BasisMismatch,
    #[error("declared symmetry violated: {0}")]
    Symmetry(String),
    #[error("differentiation failed along axis {axis}: non-finite evaluation near point")]
    Differentiation { axis: usize },
    #[error("degenerate metric: |det g| = {det:e}")]
    Degenerate { det: f64 },
    #[error("point outside the chart's valid region: {0}")]
    Region(String),
    #[error("orthogonalization failed: {0}")]
    Orthogonalization(String),
    #[error("loop is not closed: endpoint distance {gap:e}")]
    OpenLoop { gap: f64 },
    #[error("matrix is not a Lorentz transformation: residual {residual:e}")]
    NonLorentz { residual: f64 },
    #[error("speed not below light speed: V/c = {beta}")]
    Superluminal { beta: f64 },
    #[error("integration step failed at s = {s:e}, x = {x:?}: {reason}")]
    StepFailure { s: f64, x: Vec<f64>, reason: String },
    #[error("collinear directions")]
    Collinear,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
