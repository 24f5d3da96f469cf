//! Symplectic / almost-Kähler detection, computed two independent ways.
//!
//! Direct: `σ(φ) = ¼φ*ω` is closed (discrete `dσ`) and nondegenerate (`φ` has no zeros).
//! Criterion: one connection minimizes every component of `B^Aφ` at once.

use super::field::{fiber_problems, minimize_problems, Minimizer};
use super::{Component, MinimizationError};
use crate::geometry::{exterior_derivative, LCConnection};
use crate::spinc::{sigma_field, SpinorField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionTolerances {
    /// `φ` counts as nowhere zero when `min |q|` exceeds this.
    pub nonzero: f64,
    /// `tol_d = closed · h⁴ · S · max|σ|`.
    pub closed: f64,
    /// `tol_m = coincide · h⁴ · S · max(1, max|t*|)`.
    pub coincide: f64,
    /// Largest wavenumber `K` present in the data; `S = K⁵/30` is the
    /// truncation constant of the fourth-order derivative stencil at `K`.
    pub wavenumber: f64,
}

impl DetectionTolerances {
    pub fn stencil_scale(&self) -> f64 {
        self.wavenumber.powi(5) / 30.0
    }
}

impl Default for DetectionTolerances {
    fn default() -> Self {
        Self { nonzero: 1e-6, closed: 10.0, coincide: 10.0, wavenumber: std::f64::consts::TAU }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub d_sigma_max: f64,
    pub tol_d: f64,
    pub min_norm: f64,
    pub tol_q: f64,
    /// `max_x max_{c1,c2} |t*_c1(x) − t*_c2(x)|` over nondegenerate points.
    pub discrepancy: f64,
    pub tol_m: f64,
    pub degenerate_points: usize,
    pub symplectic: bool,
    pub criterion: bool,
}

impl DetectionReport {
    pub fn agree(&self) -> bool {
        self.symplectic == self.criterion
    }

    /// Almost-Kähler for `(M, φ*g, σ)` is the same verdict as symplectic `σ`.
    pub fn almost_kahler(&self) -> bool {
        self.symplectic
    }
}

pub fn detect(
    phi: &SpinorField,
    lc: &LCConnection,
    tol: &DetectionTolerances,
) -> Result<DetectionReport, MinimizationError> {
    let grid = phi.grid();
    let unit = grid.spacing().powi(4) * tol.stencil_scale();

    let sigma = sigma_field(phi, lc);
    let d_sigma = exterior_derivative(&sigma).expect("two-forms have a derivative");
    let d_sigma_max = d_sigma.max_abs();
    let tol_d = tol.closed * unit * sigma.max_abs();
    let min_norm = phi.min_norm();
    let symplectic = d_sigma_max <= tol_d && min_norm > tol.nonzero;

    let problems = fiber_problems(phi, lc);
    let minimizers: Vec<Minimizer> =
        Component::ALL.iter().map(|&c| minimize_problems(grid, &problems, c)).collect::<Result<_, _>>()?;
    let mut discrepancy = 0.0_f64;
    let mut degenerate_points = 0;
    let mut scale = 1.0_f64;
    for idx in 0..grid.len() {
        if minimizers.iter().any(|m| m.is_degenerate(idx)) {
            degenerate_points += 1;
            continue;
        }
        let ts: Vec<[f64; 4]> = minimizers.iter().map(|m| m.t(idx)).collect();
        for a in 0..ts.len() {
            scale = scale.max(ts[a].iter().fold(0.0_f64, |m, v| m.max(v.abs())));
            for b in a + 1..ts.len() {
                let d = (0..4).map(|i| (ts[a][i] - ts[b][i]).powi(2)).sum::<f64>().sqrt();
                discrepancy = discrepancy.max(d);
            }
        }
    }
    let tol_m = tol.coincide * unit * scale;
    let criterion = discrepancy <= tol_m && degenerate_points == 0;

    Ok(DetectionReport {
        d_sigma_max,
        tol_d,
        min_norm,
        tol_q: tol.nonzero,
        discrepancy,
        tol_m,
        degenerate_points,
        symplectic,
        criterion,
    })
}
