use thiserror::Error;

use crate::fieldspec::SpecError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid basis index: {0}")]
    InvalidIndex(String),

    #[error("interior product needs a grade-1 left factor, got grade {0}")]
    NotGradeOne(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("dimension below kernel validity: n = {0} (need n >= 3)")]
    KernelDimension(usize),

    #[error("field is not homogeneous in grade")]
    NotHomogeneous,

    #[error("empty region")]
    EmptyRegion,

    #[error("region too thin: no interior nodes at offset {0}")]
    RegionTooThin(usize),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error(transparent)]
    Spec(#[from] SpecError),

    #[error("table: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
