use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least {min}, got {got}")]
    Dimension { min: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("k = {k} is out of range for d = {d} (expected {range})")]
    KOutOfRange { d: usize, k: usize, range: &'static str },

    #[error("point ({x}, {y}) is not on the conic (residual {residual:e})")]
    NotOnConic { x: f64, y: f64, residual: f64 },

    #[error("tangent line passes through the origin; its pole is undefined")]
    TangentThroughOrigin,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("frame vectors are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("sample count must be positive")]
    ZeroSamples,

    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        Err(Error::Dimension { min, got: d })
    } else {
        Ok(())
    }
}
