//! Pointwise affine least-squares problems over the connection family.
//!
//! At a point, `∇̄^A_{e_k} φ` has label `p_k(t) = c_k + t_k iq`, so every part
//! of the splitting of `B(t)` is affine in `t ∈ R⁴` and its squared norm is a
//! quadratic. No derivative of `t` enters, which makes pointwise and global
//! minimization the same problem.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};

use super::Component;
use crate::fiber::{Quaternion, I_UNIT};
use crate::spinc::{split_b, BTensor};

/// Hessians whose condition number exceeds this are flagged degenerate.
pub const MAX_CONDITION: f64 = 1e8;

/// The data of one fiber: the spinor label and the `t`-independent part of its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberProblem {
    pub q: Quaternion,
    pub base: [Quaternion; 4],
}

/// Solution of the normal equations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberMinimum {
    pub t: [f64; 4],
    /// Minimum of the squared norm.
    pub value: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

impl FiberMinimum {
    pub fn condition(&self) -> f64 {
        if self.min_eigenvalue <= 0.0 {
            f64::INFINITY
        } else {
            self.max_eigenvalue / self.min_eigenvalue
        }
    }

    /// Degenerate when ill-conditioned, or negligible against `hessian_scale`
    /// (the largest Hessian eigenvalue seen over the field).
    pub fn is_degenerate(&self, hessian_scale: f64) -> bool {
        self.condition() > MAX_CONDITION || self.min_eigenvalue * MAX_CONDITION <= hessian_scale
    }
}

/// The part of `b` selected by `component`; for [`Component::Dirac`] this is `g ⊗ ¼D`.
pub fn project(b: &BTensor, component: Component) -> BTensor {
    match component {
        Component::Full => *b,
        Component::Alt => split_b(b).alt,
        Component::Sym0 => split_b(b).sym0,
        Component::Dirac => split_b(b).trace_part(),
    }
}

impl FiberProblem {
    pub fn new(q: Quaternion, base: [Quaternion; 4]) -> Self {
        Self { q, base }
    }

    pub fn derivative(&self, t: [f64; 4]) -> [Quaternion; 4] {
        let iq = I_UNIT * self.q;
        std::array::from_fn(|k| self.base[k] + iq * t[k])
    }

    pub fn b_tensor(&self, t: [f64; 4]) -> BTensor {
        BTensor::from_derivative(&self.derivative(t))
    }

    /// `|P_c B(t)|²`.
    pub fn objective(&self, component: Component, t: [f64; 4]) -> f64 {
        project(&self.b_tensor(t), component).norm_sq()
    }

    /// `∂B/∂t_j`: slice `j` is left multiplication by `iq`, the others vanish.
    fn direction(&self, j: usize) -> BTensor {
        let mut p = [Quaternion::ZERO; 4];
        p[j] = I_UNIT * self.q;
        BTensor::from_derivative(&p)
    }

    /// Solves `G t = −r` with `G_jk = ⟨P M_j, P M_k⟩`, `r_j = ⟨P M_j, P B(0)⟩`.
    ///
    /// Near-singular directions (eigenvalue below `MAX_CONDITION⁻¹` of the largest)
    /// are dropped, giving the minimum-norm solution.
    pub fn minimize(&self, component: Component) -> FiberMinimum {
        let dirs: [BTensor; 4] = std::array::from_fn(|j| project(&self.direction(j), component));
        let b0 = project(&self.b_tensor([0.0; 4]), component);
        let gram = Matrix4::from_fn(|j, k| dirs[j].dot(&dirs[k]));
        let rhs = Vector4::from_fn(|j, _| dirs[j].dot(&b0));
        let eig = SymmetricEigen::new(gram);
        let max_eigenvalue = eig.eigenvalues.max().max(0.0);
        let min_eigenvalue = eig.eigenvalues.min().max(0.0);
        let cutoff = max_eigenvalue / MAX_CONDITION;
        let mut t = Vector4::zeros();
        for m in 0..4 {
            let lambda = eig.eigenvalues[m];
            if lambda > cutoff && lambda > 0.0 {
                let v = eig.eigenvectors.column(m);
                t -= v * (v.dot(&rhs) / lambda);
            }
        }
        let t = [t[0], t[1], t[2], t[3]];
        FiberMinimum { t, value: self.objective(component, t), min_eigenvalue, max_eigenvalue }
    }

    /// `t*_k = −⟨c_k, iq⟩ / |q|²`, the direction-by-direction minimizer of the full norm.
    pub fn full_closed_form(&self) -> Option<[f64; 4]> {
        let n = self.q.norm_sq();
        if n == 0.0 {
            return None;
        }
        let iq = I_UNIT * self.q;
        Some(self.base.map(|c| -c.dot(iq) / n))
    }

    /// `⟨p_k(t), iq⟩`.
    pub fn pairing(&self, t: [f64; 4]) -> [f64; 4] {
        let iq = I_UNIT * self.q;
        self.derivative(t).map(|p| p.dot(iq))
    }
}
