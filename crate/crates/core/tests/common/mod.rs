#![allow(dead_code)]

pub mod oracle;

use std::f64::consts::TAU;

use quatspin::fiber::Quaternion;
use quatspin::geometry::{AxisWaves, GeometrySpec, Grid, LCConnection};
use quatspin::spinc::{SpinorField, SpinorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn conformal() -> GeometrySpec {
    GeometrySpec::Conformal(AxisWaves::single(0, 0.1))
}

pub fn product() -> GeometrySpec {
    let mut w = AxisWaves::single(0, 0.2);
    w.amplitudes[2] = 0.2;
    GeometrySpec::Product(w)
}

pub fn catalog() -> Vec<(&'static str, GeometrySpec)> {
    vec![("flat", GeometrySpec::Flat), ("conformal", conformal()), ("product", product())]
}

/// Nowhere-vanishing trigonometric spinor: a dominant constant real part plus
/// small first harmonics in every component.
pub fn smooth_spinor(seed: u64) -> SpinorSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = std::array::from_fn(|c| {
        let mut row = [0.0; 9];
        row[0] = if c == 0 { 1.5 } else { rng.gen_range(-0.5..0.5) };
        for v in row.iter_mut().skip(1) {
            *v = rng.gen_range(-0.12..0.12);
        }
        row
    });
    SpinorSpec::Trig(coeffs)
}

/// Smooth vector field, frame components, first harmonics only.
pub fn smooth_vector_field(grid: Grid, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: [[f64; 9]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
    grid.map(|idx| {
        let x = grid.coords(idx);
        Quaternion::from_array(coeffs.map(|c| {
            let mut v = c[0];
            for a in 0..4 {
                v += c[1 + 2 * a] * (TAU * x[a]).sin() + c[2 + 2 * a] * (TAU * x[a]).cos();
            }
            v
        }))
    })
}

pub fn setup(spec: &GeometrySpec, spinor: &SpinorSpec, n: usize) -> (Grid, LCConnection, SpinorField) {
    let grid = Grid::new(n).unwrap();
    let lc = LCConnection::new(&spec.build(grid).unwrap());
    let phi = spinor.build(grid);
    (grid, lc, phi)
}

/// Affine coordinates of the component minimizers along their common line,
/// Full at 0 and Dirac at 1. Measured once over random scenarios, then frozen.
pub const FROZEN_RATIOS: [(quatspin::minimization::Component, f64); 4] = [
    (quatspin::minimization::Component::Full, 0.0),
    (quatspin::minimization::Component::Alt, 1.0 / 3.0),
    (quatspin::minimization::Component::Sym0, -1.0 / 3.0),
    (quatspin::minimization::Component::Dirac, 1.0),
];

pub fn random_quaternion(rng: &mut ChaCha8Rng, r: f64) -> Quaternion {
    Quaternion::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}
