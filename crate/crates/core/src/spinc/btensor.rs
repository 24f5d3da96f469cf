//! The comparison tensor `B^Aφ ∈ T*⊗T*⊗T` and its splitting into
//! alternating, trace-free symmetric and trace parts.

use std::ops::{Add, Mul, Sub};

use nalgebra::Matrix4;

use super::covariant::{spinor_cov_deriv, tilde_connection, CovariantDerivative};
use super::field::{ConnectionParam, SpinorField};
use super::SpincError;
use crate::fiber::Quaternion;
use crate::geometry::{Grid, LCConnection};

/// Scale of the allowed disagreement between the two routes to `B`, in
/// units of `h⁴ · max(1, max|q|)`.
pub const CONSISTENCY_CONSTANT: f64 = 1e3;

/// Frame components at one point: `entries[k][l] = (B)_{e_k} e_l`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BTensor {
    pub entries: [[Quaternion; 4]; 4],
}

impl BTensor {
    pub const ZERO: Self = Self { entries: [[Quaternion::ZERO; 4]; 4] };

    /// `B_{e_k} e_l = p_k · e_l`: each slice is left multiplication by `p_k`.
    pub fn from_derivative(p: &[Quaternion; 4]) -> Self {
        Self { entries: std::array::from_fn(|k| std::array::from_fn(|l| p[k] * Quaternion::basis(l))) }
    }

    pub fn get(&self, k: usize, l: usize) -> Quaternion {
        self.entries[k][l]
    }

    /// The endomorphism `Y ↦ B_{e_k} Y`.
    pub fn slice_matrix(&self, k: usize) -> Matrix4<f64> {
        Matrix4::from_fn(|m, l| self.entries[k][l][m])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for k in 0..4 {
            for l in 0..4 {
                s += self.entries[k][l].dot(other.entries[k][l]);
            }
        }
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|q| q.max_abs()).fold(0.0, f64::max)
    }

    fn zip(self, o: Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Self {
        Self { entries: std::array::from_fn(|k| std::array::from_fn(|l| f(self.entries[k][l], o.entries[k][l]))) }
    }

    /// `g ⊗ w`, i.e. `δ_kl w`.
    pub fn metric_times(w: Quaternion) -> Self {
        Self { entries: std::array::from_fn(|k| std::array::from_fn(|l| if k == l { w } else { Quaternion::ZERO })) }
    }
}

impl Add for BTensor {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for BTensor {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
}

impl Mul<f64> for BTensor {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self { entries: self.entries.map(|row| row.map(|q| q * s)) }
    }
}

/// `B = Alt B + Sym₀ B + g ⊗ ¼ D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BSplit {
    pub alt: BTensor,
    pub sym0: BTensor,
    pub dirac: Quaternion,
}

impl BSplit {
    pub fn trace_part(&self) -> BTensor {
        BTensor::metric_times(self.dirac * 0.25)
    }

    pub fn reconstruct(&self) -> BTensor {
        self.alt + self.sym0 + self.trace_part()
    }
}

/// Splits frame components of `B` (the metric is `δ` in an orthonormal frame).
pub fn split_b(b: &BTensor) -> BSplit {
    let e = &b.entries;
    let dirac: Quaternion = (0..4).map(|k| e[k][k]).sum();
    let quarter = dirac * 0.25;
    let mut alt = BTensor::ZERO;
    let mut sym0 = BTensor::ZERO;
    for k in 0..4 {
        for l in 0..4 {
            alt.entries[k][l] = (e[k][l] - e[l][k]) * 0.5;
            let sym = (e[k][l] + e[l][k]) * 0.5;
            sym0.entries[k][l] = if k == l { sym - quarter } else { sym };
        }
    }
    BSplit { alt, sym0, dirac }
}

#[derive(Debug, Clone)]
pub struct BTensorField {
    grid: Grid,
    derivative: CovariantDerivative,
    tensors: Vec<BTensor>,
    consistency: f64,
}

impl BTensorField {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn at(&self, idx: usize) -> &BTensor {
        &self.tensors[idx]
    }

    pub fn tensors(&self) -> &[BTensor] {
        &self.tensors
    }

    pub fn derivative(&self) -> &CovariantDerivative {
        &self.derivative
    }

    /// Largest disagreement between the direct finite-difference route and
    /// evaluation of `∇̄^Aφ`.
    pub fn consistency_residual(&self) -> f64 {
        self.consistency
    }

    pub fn split(&self) -> Vec<BSplit> {
        self.grid.map(|idx| split_b(&self.tensors[idx]))
    }
}

/// Direct route: `∇̃_{e_k}(φ ∂_ν) − φ(∇_{e_k} ∂_ν)` on the coordinate fields,
/// using Christoffel symbols for `∇∂_ν` and finite differences for `φ ∂_ν`.
/// Returns, per point, the largest gap to `(∇̄_{e_k} φ)(∂_ν)`.
fn direct_route_gap(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam, p: &CovariantDerivative) -> Vec<f64> {
    let grid = phi.grid();
    let tilde = tilde_connection(lc, t);
    let frame = lc.frame();
    // frame components of ∂_ν are the columns of the coframe
    let coord_fields: [Vec<Quaternion>; 4] = std::array::from_fn(|nu| {
        (0..grid.len())
            .map(|idx| {
                let e = frame.coframe(idx);
                Quaternion::new(e[(0, nu)], e[(1, nu)], e[(2, nu)], e[(3, nu)])
            })
            .collect()
    });
    let images: [Vec<Quaternion>; 4] =
        std::array::from_fn(|nu| (0..grid.len()).map(|idx| phi.at(idx) * coord_fields[nu][idx]).collect());
    let d_images: [Vec<[Quaternion; 4]>; 4] = std::array::from_fn(|nu| grid.gradient(&images[nu]));
    grid.map(|idx| {
        let f = frame.vectors(idx);
        let e = frame.coframe(idx);
        let gamma = lc.christoffels().at(idx);
        let q = phi.at(idx);
        let mut worst = 0.0_f64;
        for k in 0..4 {
            for nu in 0..4 {
                let d_along: Quaternion = (0..4).map(|mu| d_images[nu][idx][mu] * f[(mu, k)]).sum();
                let lhs = d_along + tilde.act(idx, k, images[nu][idx]);
                // ∇_{e_k} ∂_ν = e_k^μ Γ^λ_{μν} ∂_λ, in frame components
                let mut nabla = [0.0; 4];
                for (a, slot) in nabla.iter_mut().enumerate() {
                    for lambda in 0..4 {
                        for mu in 0..4 {
                            *slot += e[(a, lambda)] * gamma[lambda][mu][nu] * f[(mu, k)];
                        }
                    }
                }
                let direct = lhs - q * Quaternion::from_array(nabla);
                let evaluated = p.at(idx)[k] * coord_fields[nu][idx];
                worst = worst.max((direct - evaluated).norm());
            }
        }
        worst
    })
}

/// `B^Aφ` as evaluation of `∇̄^Aφ`, cross-checked against the direct
/// finite-difference definition.
pub fn b_tensor(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam) -> Result<BTensorField, SpincError> {
    let grid = phi.grid();
    let derivative = spinor_cov_deriv(phi, lc, t);
    let tensors = grid.map(|idx| BTensor::from_derivative(&derivative.at(idx)));
    let gaps = direct_route_gap(phi, lc, t, &derivative);
    let consistency = gaps.iter().copied().fold(0.0, f64::max);
    let tolerance = consistency_tolerance(grid, phi);
    if consistency > tolerance {
        return Err(SpincError::ConsistencyFailure { residual: consistency, tolerance });
    }
    Ok(BTensorField { grid, derivative, tensors, consistency })
}

pub fn consistency_tolerance(grid: Grid, phi: &SpinorField) -> f64 {
    CONSISTENCY_CONSTANT * grid.spacing().powi(4) * phi.max_norm().max(1.0)
}
