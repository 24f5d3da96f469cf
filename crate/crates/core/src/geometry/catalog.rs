//! Analytic periodic metrics available to scenarios.

use std::f64::consts::TAU;

use nalgebra::{Matrix4, Vector4};

use super::grid::Grid;
use super::metric::MetricField;
use super::GeometryError;

/// `w(x) = Σ_a A_a sin(2π k_a x_a + φ_a)`, a sum of one wave per axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AxisWaves {
    pub amplitudes: [f64; 4],
    pub frequencies: [u32; 4],
    pub phases: [f64; 4],
}

impl AxisWaves {
    pub fn single(axis: usize, amplitude: f64) -> Self {
        let mut w = Self { frequencies: [1; 4], ..Self::default() };
        w.amplitudes[axis] = amplitude;
        w
    }

    fn term(&self, a: usize, x: &[f64; 4]) -> f64 {
        self.amplitudes[a] * (TAU * self.frequencies[a] as f64 * x[a] + self.phases[a]).sin()
    }

    fn term_derivative(&self, a: usize, x: &[f64; 4]) -> f64 {
        let k = TAU * self.frequencies[a] as f64;
        self.amplitudes[a] * k * (k * x[a] + self.phases[a]).cos()
    }

    /// Sum over the given axes only.
    pub fn value_on(&self, axes: &[usize], x: &[f64; 4]) -> f64 {
        axes.iter().map(|&a| self.term(a, x)).sum()
    }

    pub fn value(&self, x: &[f64; 4]) -> f64 {
        self.value_on(&[0, 1, 2, 3], x)
    }

    /// `∂_a w`.
    pub fn gradient(&self, x: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|a| self.term_derivative(a, x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometrySpec {
    Flat,
    /// `g = e^{2w} δ`.
    Conformal(AxisWaves),
    /// `g = h1 (dx0² + dx1²) + h2 (dx2² + dx3²)` with `h1 = e^{w(x0,x1)}`, `h2 = e^{w(x2,x3)}`.
    Product(AxisWaves),
}

impl GeometrySpec {
    pub fn name(&self) -> &'static str {
        match self {
            GeometrySpec::Flat => "flat",
            GeometrySpec::Conformal(_) => "conformal",
            GeometrySpec::Product(_) => "product",
        }
    }

    pub fn metric_at(&self, x: &[f64; 4]) -> Matrix4<f64> {
        match self {
            GeometrySpec::Flat => Matrix4::identity(),
            GeometrySpec::Conformal(w) => Matrix4::identity() * (2.0 * w.value(x)).exp(),
            GeometrySpec::Product(w) => {
                let h1 = w.value_on(&[0, 1], x).exp();
                let h2 = w.value_on(&[2, 3], x).exp();
                Matrix4::from_diagonal(&Vector4::new(h1, h1, h2, h2))
            }
        }
    }

    pub fn build(&self, grid: Grid) -> Result<MetricField, GeometryError> {
        match self {
            GeometrySpec::Flat => Ok(MetricField::flat(grid)),
            _ => MetricField::from_fn(grid, |x| self.metric_at(&x)),
        }
    }
}
