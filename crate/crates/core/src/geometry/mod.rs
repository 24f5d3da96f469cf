//! Periodic charts: grids, metrics, Levi-Civita data and forms.

pub mod catalog;
pub mod connection;
pub mod forms;
pub mod grid;
pub mod metric;

use thiserror::Error;

pub use catalog::{AxisWaves, GeometrySpec};
pub use connection::{frame_connection, join_so4, split_so4, LCConnection};
pub use forms::{exterior_derivative, multi_indices, FormField};
pub use grid::{max_abs, rms, Grid};
pub use metric::{christoffels, orthonormal_frame, Christoffels, Frame, MetricField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("grid needs at least 4 points per axis, got {0}")]
    GridTooSmall(usize),
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("metric is not symmetric at grid point {point:?} (asymmetry {asymmetry:.3e})")]
    NotSymmetric { point: [usize; 4], asymmetry: f64 },
    #[error("metric is not positive definite at grid point {point:?}")]
    NotPositiveDefinite { point: [usize; 4] },
    #[error("forms of degree {0} are not supported")]
    BadDegree(usize),
}
