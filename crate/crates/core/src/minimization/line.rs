//! Collinearity of the component minimizers and their ratios along the line.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};

use super::field::Minimizer;
use super::{Component, MinimizationError};

/// Minimizers closer than this (in `t`) count as coincident.
pub const COINCIDE_TOL: f64 = 1e-9;
/// Two minimizers coinciding within [`COINCIDE_TOL`] must force all within this.
pub const COINCIDE_ALL_TOL: f64 = 1e-8;

/// Line fit at one nondegenerate point.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePoint {
    pub index: usize,
    pub origin: [f64; 4],
    pub direction: [f64; 4],
    /// Largest distance of a minimizer to the fitted line.
    pub residual: f64,
    /// Largest pairwise distance between minimizers.
    pub spread: f64,
    /// Affine coordinates of each minimizer; `None` where the minimizers coincide.
    pub ratios: Option<Vec<f64>>,
}

impl LinePoint {
    pub fn relative_residual(&self) -> f64 {
        if self.spread > 0.0 {
            self.residual / self.spread
        } else {
            0.0
        }
    }

    pub fn coincident(&self) -> bool {
        self.ratios.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineReport {
    pub components: Vec<Component>,
    /// Components placed at affine coordinates 0 and 1.
    pub normalization: (Component, Component),
    pub points: Vec<LinePoint>,
    pub degenerate_points: usize,
    pub ratio_mean: Vec<f64>,
    pub ratio_std: Vec<f64>,
    pub max_relative_residual: f64,
    pub coincident_points: usize,
    /// Points where some pair coincides but not all do.
    pub coincidence_violations: usize,
}

impl LineReport {
    pub fn ratio_of(&self, c: Component) -> Option<(f64, f64)> {
        let i = self.components.iter().position(|&x| x == c)?;
        Some((self.ratio_mean[i], self.ratio_std[i]))
    }

    pub fn ratios_at(&self, c: Component) -> Vec<f64> {
        let Some(i) = self.components.iter().position(|&x| x == c) else { return Vec::new() };
        self.points.iter().filter_map(|p| p.ratios.as_ref().map(|r| r[i])).collect()
    }
}

fn dist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Principal axis through a small point cloud in `R⁴`.
fn fit_line(points: &[[f64; 4]]) -> ([f64; 4], [f64; 4], f64) {
    let m = points.len() as f64;
    let centroid: Vector4<f64> = points.iter().map(|p| Vector4::from_column_slice(p)).sum::<Vector4<f64>>() / m;
    let mut scatter = Matrix4::zeros();
    for p in points {
        let d = Vector4::from_column_slice(p) - centroid;
        scatter += d * d.transpose();
    }
    let eig = SymmetricEigen::new(scatter);
    let top = eig.eigenvalues.imax();
    let dir = eig.eigenvectors.column(top).into_owned();
    let residual = points
        .iter()
        .map(|p| {
            let d = Vector4::from_column_slice(p) - centroid;
            (d - dir * dir.dot(&d)).norm()
        })
        .fold(0.0, f64::max);
    ([centroid[0], centroid[1], centroid[2], centroid[3]], [dir[0], dir[1], dir[2], dir[3]], residual)
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Fits a line through the minimizers at every point where none is degenerate.
///
/// Affine coordinates put the Full minimizer at 0 and the Dirac minimizer at 1
/// when both are supplied, otherwise the first two components.
pub fn collinearity_report(minimizers: &[Minimizer]) -> Result<LineReport, MinimizationError> {
    let components: Vec<Component> = minimizers.iter().map(|m| m.component).collect();
    let mut distinct = components.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 3 || distinct.len() != components.len() {
        return Err(MinimizationError::TooFewComponents(components.len()));
    }
    let grid = minimizers[0].grid();
    if minimizers.iter().any(|m| m.grid() != grid) {
        return Err(MinimizationError::GridMismatch);
    }
    let pos = |c: Component| components.iter().position(|&x| x == c);
    let (zero, one) = match (pos(Component::Full), pos(Component::Dirac)) {
        (Some(f), Some(d)) => (f, d),
        _ => (0, 1),
    };

    let mut points = Vec::new();
    let mut degenerate_points = 0;
    let mut coincident_points = 0;
    let mut coincidence_violations = 0;
    for idx in 0..grid.len() {
        if minimizers.iter().any(|m| m.is_degenerate(idx)) {
            degenerate_points += 1;
            continue;
        }
        let ts: Vec<[f64; 4]> = minimizers.iter().map(|m| m.t(idx)).collect();
        let mut spread = 0.0_f64;
        let mut closest = f64::INFINITY;
        for a in 0..ts.len() {
            for b in a + 1..ts.len() {
                let d = dist(&ts[a], &ts[b]);
                spread = spread.max(d);
                closest = closest.min(d);
            }
        }
        if closest <= COINCIDE_TOL && spread > COINCIDE_ALL_TOL {
            coincidence_violations += 1;
        }
        let (origin, direction, residual) = fit_line(&ts);
        let base = ts[zero];
        let axis: Vec<f64> = (0..4).map(|i| ts[one][i] - base[i]).collect();
        let axis_sq: f64 = axis.iter().map(|v| v * v).sum();
        let ratios = if spread <= COINCIDE_TOL || axis_sq.sqrt() <= COINCIDE_TOL {
            coincident_points += 1;
            None
        } else {
            Some(ts.iter().map(|t| (0..4).map(|i| (t[i] - base[i]) * axis[i]).sum::<f64>() / axis_sq).collect())
        };
        points.push(LinePoint { index: idx, origin, direction, residual, spread, ratios });
    }
    if points.is_empty() {
        return Err(MinimizationError::DegenerateEverywhere);
    }
    if coincident_points == points.len() {
        return Err(MinimizationError::Collapsed { points: coincident_points });
    }
    let (ratio_mean, ratio_std): (Vec<f64>, Vec<f64>) = (0..components.len())
        .map(|c| {
            let vals: Vec<f64> = points.iter().filter_map(|p| p.ratios.as_ref().map(|r| r[c])).collect();
            mean_std(&vals)
        })
        .unzip();
    let max_relative_residual =
        points.iter().filter(|p| !p.coincident()).map(|p| p.relative_residual()).fold(0.0, f64::max);
    Ok(LineReport {
        normalization: (components[zero], components[one]),
        components,
        points,
        degenerate_points,
        ratio_mean,
        ratio_std,
        max_relative_residual,
        coincident_points,
        coincidence_violations,
    })
}
