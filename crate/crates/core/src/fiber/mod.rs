//! Exact single-fiber algebra: quaternions, two-forms, the spinor ↔
//! endomorphism dictionary and the squaring map.

pub mod forms;
pub mod quaternion;
pub mod spinor;

use thiserror::Error;

pub use forms::{hodge_star, j_from_sdform, sd_asd_split, sdform_from_j, AcStructure, TwoForm};
pub use quaternion::{apply, quat_mul, Quaternion};
pub use spinor::{
    classify_endo, clifford_mul, clifford_mul_minus, endo_from_spinor, i_action, left_residual, project_left,
    pullback_form, sigma, spinor_inner, ASDSpinor, SDSpinor, SdConformal, I_UNIT,
};

/// Default tolerance for [`classify_endo`].
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiberError {
    #[error("matrix is not a self-dual conformal map (residual {residual:.3e})")]
    NotSDConformal { residual: f64 },
    #[error("form is not self-dual of length √2 (anti-self-dual part {asd_norm:.3e}, length {length:.6})")]
    NotUnitSD { asd_norm: f64, length: f64 },
    #[error("{0:?} is not a unit imaginary quaternion")]
    NotUnitImaginary([f64; 4]),
}
