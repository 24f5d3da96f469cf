//! Spin-c layer in dictionary form: admissible connections, the spinor
//! derivative, the comparison tensor `B^Aφ`, its splitting and the Dirac operator.
//!
//! The connection `A` on the determinant line is represented by the real
//! 1-form `t` of [`ConnectionParam`], an affine coordinate on the admissible family.

pub mod btensor;
pub mod covariant;
pub mod field;

use thiserror::Error;

pub use btensor::{b_tensor, consistency_tolerance, split_b, BSplit, BTensor, BTensorField};
pub use covariant::{
    dirac, dirac_at, leibniz_residual, pairing_form, spinor_cov_deriv, spinor_derivative_at, tilde_connection,
    CovariantDerivative, ResidualNorms, TildeConnection,
};
pub use field::{sigma_field, ConnectionParam, SpinorField, SpinorSpec, TrigCoefficients};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpincError {
    #[error("direct and evaluated routes to B disagree by {residual:.3e} (tolerance {tolerance:.3e})")]
    ConsistencyFailure { residual: f64, tolerance: f64 },
}
