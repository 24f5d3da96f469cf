//! Periodic grid on the flat torus `R⁴/Z⁴`.

use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;

use super::GeometryError;

/// Uniform periodic grid with `n` points per axis and spacing `1/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub const MIN_POINTS: usize = 4;

    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n < Self::MIN_POINTS {
            return Err(GeometryError::GridTooSmall(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n.pow(4)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn index(&self, i: [usize; 4]) -> usize {
        let n = self.n;
        ((i[0] * n + i[1]) * n + i[2]) * n + i[3]
    }

    #[inline]
    pub fn multi_index(&self, mut idx: usize) -> [usize; 4] {
        let n = self.n;
        let mut out = [0; 4];
        for slot in out.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        out
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [f64; 4] {
        self.multi_index(idx).map(|i| i as f64 * self.spacing())
    }

    /// Index of the point displaced by `offset` steps along `axis`, wrapping around.
    #[inline]
    pub fn shift(&self, idx: usize, axis: usize, offset: isize) -> usize {
        let mut i = self.multi_index(idx);
        let n = self.n as isize;
        i[axis] = (i[axis] as isize + offset).rem_euclid(n) as usize;
        self.index(i)
    }

    /// Evaluates `f` at every grid point, in index order.
    pub fn map<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..self.len()).into_par_iter().map(f).collect()
    }

    /// Fourth-order central difference along `axis`:
    /// `(8(f₊₁ − f₋₁) − (f₊₂ − f₋₂)) / 12h`.
    pub fn derivative<T>(&self, field: &[T], axis: usize) -> Vec<T>
    where
        T: Copy + Send + Sync + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    {
        assert_eq!(field.len(), self.len(), "field does not live on this grid");
        let scale = 1.0 / (12.0 * self.spacing());
        self.map(|idx| {
            let p1 = field[self.shift(idx, axis, 1)];
            let m1 = field[self.shift(idx, axis, -1)];
            let p2 = field[self.shift(idx, axis, 2)];
            let m2 = field[self.shift(idx, axis, -2)];
            ((p1 - m1) * 8.0 - (p2 - m2)) * scale
        })
    }

    /// All four partial derivatives, `out[idx][μ] = ∂_μ f(idx)`.
    pub fn gradient<T>(&self, field: &[T]) -> Vec<[T; 4]>
    where
        T: Copy + Send + Sync + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    {
        let d: [Vec<T>; 4] = std::array::from_fn(|mu| self.derivative(field, mu));
        self.map(|idx| std::array::from_fn(|mu| d[mu][idx]))
    }
}

/// Root-mean-square of per-point magnitudes.
pub fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

pub fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn rejects_tiny_grids() {
        assert!(matches!(Grid::new(3), Err(GeometryError::GridTooSmall(3))));
        assert!(Grid::new(4).is_ok());
    }

    #[test]
    fn index_roundtrip_and_wrap() {
        let g = Grid::new(5).unwrap();
        for idx in [0, 7, 123, g.len() - 1] {
            assert_eq!(g.index(g.multi_index(idx)), idx);
        }
        let origin = g.index([0, 0, 0, 0]);
        assert_eq!(g.multi_index(g.shift(origin, 2, -1)), [0, 0, 4, 0]);
        assert_eq!(g.multi_index(g.shift(origin, 3, 7)), [0, 0, 0, 2]);
    }

    #[test]
    fn derivative_is_fourth_order() {
        let errs: Vec<f64> = [8, 16]
            .iter()
            .map(|&n| {
                let g = Grid::new(n).unwrap();
                let f = g.map(|i| (TAU * g.coords(i)[1]).sin());
                let d = g.derivative(&f, 1);
                (0..g.len()).map(|i| (d[i] - TAU * (TAU * g.coords(i)[1]).cos()).abs()).fold(0.0, f64::max)
            })
            .collect();
        let ratio = errs[0] / errs[1];
        assert!(ratio > 15.0 && ratio < 17.0, "ratio {ratio}");
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let g = Grid::new(6).unwrap();
        let f = vec![3.5; g.len()];
        assert!(g.derivative(&f, 0).iter().all(|&v| v == 0.0));
    }
}
