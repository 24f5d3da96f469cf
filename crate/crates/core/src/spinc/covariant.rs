//! Admissible connections `∇̃^A` on `TM` and the induced spinor derivative `∇̄^A`.

use nalgebra::Matrix4;

use super::field::{ConnectionParam, SpinorField};
use crate::fiber::{apply, Quaternion, I_UNIT};
use crate::geometry::{max_abs, rms, Grid, LCConnection};

/// `∇̃^A` in frame directions: `Θ̃(e_k) = R_{b_k} + s_k L_i` with
/// `s_k = ⟨a_k, i⟩ + t_k`.
///
/// Every member of the family is metric, commutes with `J = L_i`, and has the
/// same anti-self-dual (right) part as the Levi-Civita connection.
#[derive(Debug, Clone)]
pub struct TildeConnection {
    grid: Grid,
    right: Vec<[Quaternion; 4]>,
    s: Vec<[f64; 4]>,
}

impl TildeConnection {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Coefficient `s_k` of `L_i` along `e_k`.
    pub fn s(&self, idx: usize) -> [f64; 4] {
        self.s[idx]
    }

    pub fn right(&self, idx: usize) -> [Quaternion; 4] {
        self.right[idx]
    }

    pub fn theta(&self, idx: usize, k: usize) -> Matrix4<f64> {
        self.right[idx][k].right_matrix() + I_UNIT.left_matrix() * self.s[idx][k]
    }

    /// `Θ̃(e_k) v` without forming the matrix.
    pub fn act(&self, idx: usize, k: usize, v: Quaternion) -> Quaternion {
        v * self.right[idx][k] + I_UNIT * v * self.s[idx][k]
    }
}

pub fn tilde_connection(lc: &LCConnection, t: &ConnectionParam) -> TildeConnection {
    let grid = lc.grid();
    assert_eq!(grid, t.grid(), "connection parameter lives on a different grid");
    let s = grid.map(|idx| {
        let a = lc.left_frame(idx);
        let tk = t.at(idx);
        std::array::from_fn(|k| a[k].dot(I_UNIT) + tk[k])
    });
    let right = grid.map(|idx| *lc.right_frame(idx));
    TildeConnection { grid, right, s }
}

/// Labels `p_k` of `∇̄^A_{e_k} φ`, one quaternion per frame direction.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantDerivative {
    grid: Grid,
    values: Vec<[Quaternion; 4]>,
}

impl CovariantDerivative {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn at(&self, idx: usize) -> [Quaternion; 4] {
        self.values[idx]
    }

    pub fn values(&self) -> &[[Quaternion; 4]] {
        &self.values
    }
}

/// Pointwise label formula `p_k = e_k(q) + s_k i q − q a_k`.
///
/// This is the unique solution of
/// `∇̃_X(q·v) = q·(∇_X v) + p_X·v` for all `v`; the right-multiplication
/// parts of `∇̃` and `∇` agree and cancel, so no correction term remains.
#[inline]
pub fn spinor_derivative_at(q: Quaternion, dq: Quaternion, s: f64, a: Quaternion) -> Quaternion {
    dq + I_UNIT * q * s - q * a
}

pub fn spinor_cov_deriv(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam) -> CovariantDerivative {
    let tilde = tilde_connection(lc, t);
    let dq = phi.frame_derivatives(lc);
    let grid = phi.grid();
    let values = grid.map(|idx| {
        let q = phi.at(idx);
        let a = lc.left_frame(idx);
        let s = tilde.s(idx);
        std::array::from_fn(|k| spinor_derivative_at(q, dq[idx][k], s[k], a[k]))
    });
    CovariantDerivative { grid, values }
}

/// `D^Aφ = Σ_k e_k · ∇̄_{e_k} φ = Σ_k p_k e_k`.
#[inline]
pub fn dirac_at(p: &[Quaternion; 4]) -> Quaternion {
    (0..4).map(|k| p[k] * Quaternion::basis(k)).sum()
}

pub fn dirac(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam) -> Vec<Quaternion> {
    let p = spinor_cov_deriv(phi, lc, t);
    phi.grid().map(|idx| dirac_at(&p.values[idx]))
}

/// `λ_k = ⟨∇̄_{e_k} φ, iφ⟩`.
pub fn pairing_form(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam) -> Vec<[f64; 4]> {
    let p = spinor_cov_deriv(phi, lc, t);
    phi.grid().map(|idx| {
        let iq = I_UNIT * phi.at(idx);
        p.values[idx].map(|pk| pk.dot(iq))
    })
}

/// Max and RMS magnitude of a residual field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualNorms {
    pub max: f64,
    pub rms: f64,
}

impl ResidualNorms {
    pub fn from_magnitudes(m: &[f64]) -> Self {
        Self { max: max_abs(m), rms: rms(m) }
    }
}

/// Finite-difference residual of
/// `∇̃^A_X(φ(v)) − φ(∇_X v) − (∇̄^A_X φ)(v)` over all frame directions `X = e_k`,
/// for a vector field `v` given by frame components.
pub fn leibniz_residual(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam, v: &[Quaternion]) -> ResidualNorms {
    let grid = phi.grid();
    assert_eq!(v.len(), grid.len());
    let tilde = tilde_connection(lc, t);
    let p = spinor_cov_deriv(phi, lc, t);
    let image: Vec<Quaternion> = (0..grid.len()).map(|idx| phi.at(idx) * v[idx]).collect();
    let d_image = grid.gradient(&image);
    let d_v = grid.gradient(v);
    let mags: Vec<f64> = grid.map(|idx| {
        let f = lc.frame().vectors(idx);
        let q = phi.at(idx);
        let mut worst = 0.0_f64;
        for k in 0..4 {
            let along = |d: &[Quaternion; 4]| -> Quaternion { (0..4).map(|mu| d[mu] * f[(mu, k)]).sum() };
            let lhs = along(&d_image[idx]) + tilde.act(idx, k, image[idx]);
            let nabla_v = along(&d_v[idx]) + apply(&lc.theta_frame(idx, k), v[idx]);
            let r = lhs - q * nabla_v - p.values[idx][k] * v[idx];
            worst = worst.max(r.norm());
        }
        worst
    });
    ResidualNorms::from_magnitudes(&mags)
}
