use thiserror::Error;

use crate::color::SpinColor;

#[derive(Debug, Error)]
pub enum SpinError {
    #[error("invalid basis index for color {color}: {reason}")]
    InvalidIndex { color: SpinColor, reason: String },

    #[error("color mismatch: {left} vs {right}")]
    ColorMismatch { left: SpinColor, right: SpinColor },

    #[error("spin count mismatch: {left} vs {right}")]
    SpinCountMismatch { left: usize, right: usize },

    #[error("operation `{op}` is undefined on color {color}")]
    UnsupportedColor { op: &'static str, color: SpinColor },

    #[error("rotation count {ell} out of range for width {width} (need 0 < ell < width)")]
    RotationOutOfRange { ell: usize, width: usize },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("matrix error: {0}")]
    Matrix(String),

    #[error("singular value decomposition did not converge ({rows}x{cols})")]
    NonConvergence { rows: usize, cols: usize },

    #[error("validation failed: {}", .defects.join("; "))]
    Validation { defects: Vec<String> },

    #[error("element is not biunitary: {}", .failed.join("; "))]
    NotBiunitary { failed: Vec<String> },

    #[error("level {level} not available (staircase built through level {built})")]
    LevelOutOfRange { level: usize, built: usize },

    #[error("element is not in the level-{level} kernel (residual {residual:.3e})")]
    NotInKernel { level: usize, residual: f64 },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SpinError>;
