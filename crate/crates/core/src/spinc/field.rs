//! Self-dual spinor fields, connection parameters and the squared field `σ(φ)`.

use std::f64::consts::TAU;

use crate::fiber::{sigma, AcStructure, Quaternion, SDSpinor};
use crate::geometry::{AxisWaves, FormField, Grid, LCConnection};

/// Coefficients of a degree-one trigonometric polynomial in each coordinate:
/// `c[0] + Σ_a (c[1+2a] sin 2πx_a + c[2+2a] cos 2πx_a)`.
pub type TrigCoefficients = [f64; 9];

/// Analytic spinor fields available to scenarios.
#[derive(Debug, Clone, PartialEq)]
pub enum SpinorSpec {
    Constant(Quaternion),
    /// One trigonometric polynomial per quaternion component `(w, x, y, z)`.
    Trig([TrigCoefficients; 4]),
    /// `q = e^{w(x)} · value`.
    Exp {
        value: Quaternion,
        waves: AxisWaves,
    },
}

fn trig_value(c: &TrigCoefficients, x: &[f64; 4]) -> f64 {
    let mut v = c[0];
    for (a, xa) in x.iter().enumerate() {
        v += c[1 + 2 * a] * (TAU * xa).sin() + c[2 + 2 * a] * (TAU * xa).cos();
    }
    v
}

fn trig_derivative(c: &TrigCoefficients, axis: usize, x: &[f64; 4]) -> f64 {
    let xa = x[axis];
    TAU * (c[1 + 2 * axis] * (TAU * xa).cos() - c[2 + 2 * axis] * (TAU * xa).sin())
}

impl SpinorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SpinorSpec::Constant(_) => "constant",
            SpinorSpec::Trig(_) => "trig",
            SpinorSpec::Exp { .. } => "exp",
        }
    }

    pub fn value_at(&self, x: &[f64; 4]) -> Quaternion {
        match self {
            SpinorSpec::Constant(q) => *q,
            SpinorSpec::Trig(c) => Quaternion::from_array(c.map(|row| trig_value(&row, x))),
            SpinorSpec::Exp { value, waves } => *value * waves.value(x).exp(),
        }
    }

    /// Exact coordinate derivative `∂_axis q`.
    pub fn derivative_at(&self, axis: usize, x: &[f64; 4]) -> Quaternion {
        match self {
            SpinorSpec::Constant(_) => Quaternion::ZERO,
            SpinorSpec::Trig(c) => Quaternion::from_array(c.map(|row| trig_derivative(&row, axis, x))),
            SpinorSpec::Exp { value, waves } => *value * (waves.value(x).exp() * waves.gradient(x)[axis]),
        }
    }

    pub fn build(&self, grid: Grid) -> SpinorField {
        SpinorField::from_fn(grid, |x| self.value_at(&x))
    }
}

/// Section of `W⁺`: a quaternion label per grid point, relative to the
/// reference structure `J = L_i` in the orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    grid: Grid,
    values: Vec<Quaternion>,
}

impl SpinorField {
    pub fn new(grid: Grid, values: Vec<Quaternion>) -> Self {
        assert_eq!(values.len(), grid.len(), "spinor field does not match grid");
        Self { grid, values }
    }

    pub fn from_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn([f64; 4]) -> Quaternion + Sync + Send,
    {
        Self { grid, values: grid.map(|idx| f(grid.coords(idx))) }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn at(&self, idx: usize) -> Quaternion {
        self.values[idx]
    }

    pub fn reference(&self) -> AcStructure {
        AcStructure::standard()
    }

    /// Smallest `|q|` over the grid; zeros of the field are permitted.
    pub fn min_norm(&self) -> f64 {
        self.values.iter().map(|q| q.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Derivatives along the orthonormal frame, `e_k(q) = e_k^μ ∂_μ q`.
    pub fn frame_derivatives(&self, lc: &LCConnection) -> Vec<[Quaternion; 4]> {
        assert_eq!(self.grid, lc.grid(), "spinor field and connection live on different grids");
        let grad = self.grid.gradient(&self.values);
        self.grid.map(|idx| {
            let f = lc.frame().vectors(idx);
            std::array::from_fn(|k| (0..4).map(|mu| grad[idx][mu] * f[(mu, k)]).sum())
        })
    }
}

/// Frame components `t_k` of the real 1-form selecting a connection on `K*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionParam {
    grid: Grid,
    values: Vec<[f64; 4]>,
}

impl ConnectionParam {
    pub fn zero(grid: Grid) -> Self {
        Self { grid, values: vec![[0.0; 4]; grid.len()] }
    }

    pub fn constant(grid: Grid, t: [f64; 4]) -> Self {
        Self { grid, values: vec![t; grid.len()] }
    }

    pub fn new(grid: Grid, values: Vec<[f64; 4]>) -> Self {
        assert_eq!(values.len(), grid.len(), "connection parameter does not match grid");
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn at(&self, idx: usize) -> [f64; 4] {
        self.values[idx]
    }

    pub fn values(&self) -> &[[f64; 4]] {
        &self.values
    }
}

/// `σ(φ) = ¼ φ*ω` as a coordinate 2-form, `σ_μν = σ_ab E^a_μ E^b_ν`.
pub fn sigma_field(phi: &SpinorField, lc: &LCConnection) -> FormField {
    let grid = phi.grid;
    let reference = phi.reference();
    FormField::from_fn(grid, 2, |idx| {
        let s = sigma(SDSpinor(phi.values[idx]), &reference);
        let e = lc.frame().coframe(idx);
        crate::fiber::forms::PAIRS
            .iter()
            .map(|&(mu, nu)| {
                let mut v = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        v += s.get(a, b) * e[(a, mu)] * e[(b, nu)];
                    }
                }
                v
            })
            .collect()
    })
    .expect("two-forms have six components")
}
