//! Field-level minimization: one affine least-squares solve per grid point.

use super::problem::{FiberMinimum, FiberProblem};
use super::{Component, MinimizationError};
use crate::fiber::{apply, endo_from_spinor, Quaternion, SDSpinor};
use crate::geometry::{Grid, LCConnection};
use crate::spinc::{spinor_cov_deriv, split_b, BTensor, ConnectionParam, SpinorField};

/// The fiber problems of a spinor field, with `c_k` taken at `t = 0`.
pub fn fiber_problems(phi: &SpinorField, lc: &LCConnection) -> Vec<FiberProblem> {
    let grid = phi.grid();
    let base = spinor_cov_deriv(phi, lc, &ConnectionParam::zero(grid));
    grid.map(|idx| FiberProblem::new(phi.at(idx), base.at(idx)))
}

/// Pointwise minimizers `t*(x)` of one component of the splitting.
#[derive(Debug, Clone)]
pub struct Minimizer {
    pub component: Component,
    grid: Grid,
    t: Vec<[f64; 4]>,
    residual: Vec<f64>,
    degenerate: Vec<bool>,
    max_gradient: f64,
}

impl Minimizer {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn t(&self, idx: usize) -> [f64; 4] {
        self.t[idx]
    }

    /// Minimum value of the squared norm at `idx`.
    pub fn residual(&self, idx: usize) -> f64 {
        self.residual[idx]
    }

    pub fn is_degenerate(&self, idx: usize) -> bool {
        self.degenerate[idx]
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().filter(|&&d| d).count()
    }

    pub fn as_param(&self) -> ConnectionParam {
        ConnectionParam::new(self.grid, self.t.clone())
    }

    /// Largest `|∇_t objective|` at the minimizers, relative to the Hessian scale.
    pub fn max_relative_gradient(&self) -> f64 {
        self.max_gradient
    }

    pub fn max_abs_t(&self) -> f64 {
        self.t
            .iter()
            .zip(&self.degenerate)
            .filter(|(_, &d)| !d)
            .flat_map(|(t, _)| t.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn minimize_problems(
    grid: Grid,
    problems: &[FiberProblem],
    component: Component,
) -> Result<Minimizer, MinimizationError> {
    let solved: Vec<FiberMinimum> = grid.map(|idx| problems[idx].minimize(component));
    let scale = solved.iter().map(|m| m.max_eigenvalue).fold(0.0, f64::max);
    let degenerate: Vec<bool> = solved.iter().map(|m| scale == 0.0 || m.is_degenerate(scale)).collect();
    if degenerate.iter().all(|&d| d) {
        return Err(MinimizationError::DegenerateEverywhere);
    }
    // the gradient of a quadratic at t is 2(G t + r); evaluate it through the objective
    let max_gradient = (0..grid.len())
        .filter(|&idx| !degenerate[idx])
        .map(|idx| objective_gradient(&problems[idx], component, solved[idx].t).abs() / scale)
        .fold(0.0, f64::max);
    Ok(Minimizer {
        component,
        grid,
        t: solved.iter().map(|m| m.t).collect(),
        residual: solved.iter().map(|m| m.value).collect(),
        degenerate,
        max_gradient,
    })
}

/// Largest central-difference gradient component. The objective is exactly
/// quadratic, so a unit step gives the exact derivative up to rounding.
fn objective_gradient(problem: &FiberProblem, component: Component, t: [f64; 4]) -> f64 {
    (0..4)
        .map(|j| {
            let mut up = t;
            let mut down = t;
            up[j] += 1.0;
            down[j] -= 1.0;
            (problem.objective(component, up) - problem.objective(component, down)) / 2.0
        })
        .fold(0.0_f64, |m, g| m.max(g.abs()))
}

pub fn minimize_component(
    phi: &SpinorField,
    lc: &LCConnection,
    component: Component,
) -> Result<Minimizer, MinimizationError> {
    let problems = fiber_problems(phi, lc);
    minimize_problems(phi.grid(), &problems, component)
}

/// Largest `|⟨∇̄_{e_k} φ, iφ⟩|` at the full-norm minimizer, over nondegenerate points.
pub fn pairing_at_minimizer(phi: &SpinorField, lc: &LCConnection) -> Result<f64, MinimizationError> {
    let full = minimize_component(phi, lc, Component::Full)?;
    Ok(max_pairing(phi, lc, &full.as_param(), |idx| !full.is_degenerate(idx)))
}

/// Largest `|⟨∇̄^A_{e_k} φ, iφ⟩|` at an arbitrary `t`, over the points kept by `keep`.
pub fn max_pairing(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam, keep: impl Fn(usize) -> bool) -> f64 {
    let lambda = crate::spinc::pairing_form(phi, lc, t);
    (0..phi.grid().len()).filter(|&idx| keep(idx)).flat_map(|idx| lambda[idx]).fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `max |(∇̄_{e_k}φ)(e_l) − (∇̄_{e_l}φ)(e_k)|` at one point.
pub fn alt_symmetry_at(p: &[Quaternion; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for k in 0..4 {
        for l in 0..4 {
            let lhs = apply(&endo_from_spinor(SDSpinor(p[k])), Quaternion::basis(l));
            let rhs = apply(&endo_from_spinor(SDSpinor(p[l])), Quaternion::basis(k));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Compares the displayed symmetry `(∇̄_Xφ)(Y) − (∇̄_Yφ)(X)` (evaluated through
/// the endomorphisms) with `2 Alt B` (from the splitting), entry by entry.
/// Both describe the same tensor; the result is their largest disagreement.
pub fn alt_symmetry_check(phi: &SpinorField, lc: &LCConnection, t: &ConnectionParam) -> f64 {
    let p = spinor_cov_deriv(phi, lc, t);
    let grid = phi.grid();
    let worst: Vec<f64> = grid.map(|idx| {
        let labels = p.at(idx);
        let alt = split_b(&BTensor::from_derivative(&labels)).alt;
        let mut w = 0.0_f64;
        for k in 0..4 {
            for l in 0..4 {
                let lhs = apply(&endo_from_spinor(SDSpinor(labels[k])), Quaternion::basis(l));
                let rhs = apply(&endo_from_spinor(SDSpinor(labels[l])), Quaternion::basis(k));
                w = w.max(((lhs - rhs) - alt.get(k, l) * 2.0).norm());
            }
        }
        w
    });
    worst.into_iter().fold(0.0, f64::max)
}
