//! Levi-Civita connection in an orthonormal frame, and its split into
//! self-dual (left) and anti-self-dual (right) quaternionic parts.

use nalgebra::Matrix4;

use super::grid::Grid;
use super::metric::{christoffels, orthonormal_frame, Christoffels, Frame, MetricField};
use crate::fiber::Quaternion;

/// Decomposes a skew 4×4 matrix as `L_a + R_b` with `a, b` imaginary.
///
/// `{L_i, L_j, L_k, R_i, R_j, R_k}` is a Frobenius-orthogonal basis of `so(4)`
/// with every element of squared norm 4, so the coefficients are projections.
pub fn split_so4(theta: &Matrix4<f64>) -> (Quaternion, Quaternion) {
    let coeff = |m: Matrix4<f64>| theta.dot(&m) * 0.25;
    let units = [Quaternion::I, Quaternion::J, Quaternion::K];
    let [a1, a2, a3] = units.map(|u| coeff(u.left_matrix()));
    let [b1, b2, b3] = units.map(|u| coeff(u.right_matrix()));
    (Quaternion::new(0.0, a1, a2, a3), Quaternion::new(0.0, b1, b2, b3))
}

/// Recombines `L_a + R_b`.
pub fn join_so4(a: Quaternion, b: Quaternion) -> Matrix4<f64> {
    a.left_matrix() + b.right_matrix()
}

/// Levi-Civita data of a metric: Christoffels, orthonormal frame and the
/// frame connection form `∇_μ e_l = Θ_μ^k_l e_k`.
#[derive(Debug, Clone)]
pub struct LCConnection {
    grid: Grid,
    christoffels: Christoffels,
    frame: Frame,
    theta: Vec<[Matrix4<f64>; 4]>,
    left: Vec<[Quaternion; 4]>,
    right: Vec<[Quaternion; 4]>,
    left_frame: Vec<[Quaternion; 4]>,
    right_frame: Vec<[Quaternion; 4]>,
    compatibility: f64,
}

impl LCConnection {
    pub fn new(metric: &MetricField) -> Self {
        let gamma = christoffels(metric);
        let frame = orthonormal_frame(metric);
        frame_connection(&gamma, frame)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn christoffels(&self) -> &Christoffels {
        &self.christoffels
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `Θ_μ` in the coordinate direction `μ`.
    pub fn theta(&self, idx: usize) -> &[Matrix4<f64>; 4] {
        &self.theta[idx]
    }

    /// Self-dual part `a_μ` (coordinate directions).
    pub fn left(&self, idx: usize) -> &[Quaternion; 4] {
        &self.left[idx]
    }

    /// Anti-self-dual part `b_μ` (coordinate directions).
    pub fn right(&self, idx: usize) -> &[Quaternion; 4] {
        &self.right[idx]
    }

    /// `a(e_k)` along the frame directions.
    pub fn left_frame(&self, idx: usize) -> &[Quaternion; 4] {
        &self.left_frame[idx]
    }

    /// `b(e_k)` along the frame directions.
    pub fn right_frame(&self, idx: usize) -> &[Quaternion; 4] {
        &self.right_frame[idx]
    }

    /// `Θ(e_k) = L_{a(e_k)} + R_{b(e_k)}`.
    pub fn theta_frame(&self, idx: usize, k: usize) -> Matrix4<f64> {
        join_so4(self.left_frame[idx][k], self.right_frame[idx][k])
    }

    /// Largest symmetric part of the unprojected connection form, i.e. the
    /// finite-difference residual of `∂_μ g(e_k, e_l) = 0`.
    pub fn compatibility_residual(&self) -> f64 {
        self.compatibility
    }

    /// `Θ_μ` is skew by construction; reports the largest `|Θ + Θᵀ|` entry.
    pub fn skewness(&self) -> f64 {
        self.theta.iter().flatten().map(|t| (t + t.transpose()).abs().max()).fold(0.0, f64::max)
    }

    /// Largest entry of `Θ_μ − (L_{a_μ} + R_{b_μ})`.
    pub fn split_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for idx in 0..self.grid.len() {
            for mu in 0..4 {
                let r = self.theta[idx][mu] - join_so4(self.left[idx][mu], self.right[idx][mu]);
                worst = worst.max(r.abs().max());
            }
        }
        worst
    }
}

/// `Θ_μ^k_l = E^k_λ (∂_μ e_l^λ + Γ^λ_{μν} e_l^ν)`, projected onto `so(4)`.
///
/// The projection removes the `O(h⁴)` symmetric part left by finite
/// differencing; its size is kept as the metric-compatibility residual.
pub fn frame_connection(gamma: &Christoffels, frame: Frame) -> LCConnection {
    let grid = gamma.grid();
    let dframe = grid.gradient(frame.all_vectors());
    let per_point: Vec<([Matrix4<f64>; 4], f64)> = grid.map(|idx| {
        let f = frame.vectors(idx);
        let e = frame.coframe(idx);
        let gp = gamma.at(idx);
        let mut worst = 0.0_f64;
        let theta = std::array::from_fn(|mu| {
            // G[λ][ν] = Γ^λ_{μν}
            let g_mu = Matrix4::from_fn(|lambda, nu| gp[lambda][mu][nu]);
            let raw = e * (dframe[idx][mu] + g_mu * f);
            let sym = (raw + raw.transpose()) * 0.5;
            worst = worst.max(sym.abs().max());
            raw - sym
        });
        (theta, worst)
    });
    let compatibility = per_point.iter().map(|p| p.1).fold(0.0, f64::max);
    let theta: Vec<[Matrix4<f64>; 4]> = per_point.into_iter().map(|p| p.0).collect();
    let splits: Vec<([Quaternion; 4], [Quaternion; 4])> = grid.map(|idx| {
        let parts: [(Quaternion, Quaternion); 4] = std::array::from_fn(|mu| split_so4(&theta[idx][mu]));
        (parts.map(|p| p.0), parts.map(|p| p.1))
    });
    let (left, right): (Vec<_>, Vec<_>) = splits.into_iter().unzip();
    let to_frame = |coord: &Vec<[Quaternion; 4]>| -> Vec<[Quaternion; 4]> {
        grid.map(|idx| {
            let f = frame.vectors(idx);
            std::array::from_fn(|k| (0..4).map(|mu| coord[idx][mu] * f[(mu, k)]).sum())
        })
    };
    let left_frame = to_frame(&left);
    let right_frame = to_frame(&right);
    LCConnection {
        grid,
        christoffels: gamma.clone(),
        frame,
        theta,
        left,
        right,
        left_frame,
        right_frame,
        compatibility,
    }
}
