//! Gridded Riemannian metrics, their Christoffel symbols and Gram–Schmidt frames.

use nalgebra::Matrix4;

use super::grid::Grid;
use super::GeometryError;

/// Relative asymmetry tolerated by [`MetricField::new`] before rejecting input.
const SYMMETRY_TOL: f64 = 1e-12;

/// Symmetric positive-definite `g_μν` at every grid point.
#[derive(Debug, Clone)]
pub struct MetricField {
    grid: Grid,
    values: Vec<Matrix4<f64>>,
}

impl MetricField {
    pub fn new(grid: Grid, values: Vec<Matrix4<f64>>) -> Result<Self, GeometryError> {
        if values.len() != grid.len() {
            return Err(GeometryError::ShapeMismatch { expected: grid.len(), found: values.len() });
        }
        let mut values = values;
        for (idx, g) in values.iter_mut().enumerate() {
            let asym = (*g - g.transpose()).abs().max();
            if asym > SYMMETRY_TOL * (1.0 + g.abs().max()) || !g.iter().all(|v| v.is_finite()) {
                return Err(GeometryError::NotSymmetric { point: grid.multi_index(idx), asymmetry: asym });
            }
            *g = (*g + g.transpose()) * 0.5;
            if g.cholesky().is_none() {
                return Err(GeometryError::NotPositiveDefinite { point: grid.multi_index(idx) });
            }
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at grid coordinates.
    pub fn from_fn<F>(grid: Grid, f: F) -> Result<Self, GeometryError>
    where
        F: Fn([f64; 4]) -> Matrix4<f64> + Sync + Send,
    {
        let values = grid.map(|idx| f(grid.coords(idx)));
        Self::new(grid, values)
    }

    pub fn flat(grid: Grid) -> Self {
        Self { grid, values: vec![Matrix4::identity(); grid.len()] }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn at(&self, idx: usize) -> &Matrix4<f64> {
        &self.values[idx]
    }

    pub fn values(&self) -> &[Matrix4<f64>] {
        &self.values
    }
}

/// `Γ^λ_{μν}` stored as `[λ][μ][ν]`.
pub type ChristoffelPoint = [[[f64; 4]; 4]; 4];

#[derive(Debug, Clone)]
pub struct Christoffels {
    grid: Grid,
    values: Vec<ChristoffelPoint>,
}

impl Christoffels {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn at(&self, idx: usize) -> &ChristoffelPoint {
        &self.values[idx]
    }

    /// Largest `|Γ^λ_{μν} − Γ^λ_{νμ}|` over the grid.
    pub fn torsion(&self) -> f64 {
        let mut worst = 0.0_f64;
        for gamma in &self.values {
            for row in gamma {
                for mu in 0..4 {
                    for nu in 0..4 {
                        worst = worst.max((row[mu][nu] - row[nu][mu]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// `Γ^λ_{μν} = ½ g^{λρ}(∂_μ g_ρν + ∂_ν g_ρμ − ∂_ρ g_μν)` with fourth-order differences.
pub fn christoffels(metric: &MetricField) -> Christoffels {
    let grid = metric.grid;
    let dg = grid.gradient(&metric.values);
    let values = grid.map(|idx| {
        // Cholesky succeeded at construction, so the inverse exists.
        let inv = metric.values[idx].try_inverse().expect("metric validated as positive definite");
        let d = &dg[idx];
        let mut lowered = [[[0.0; 4]; 4]; 4];
        for (rho, plane) in lowered.iter_mut().enumerate() {
            for mu in 0..4 {
                for nu in 0..4 {
                    plane[mu][nu] = 0.5 * ((d[mu][(rho, nu)] + d[nu][(rho, mu)]) - d[rho][(mu, nu)]);
                }
            }
        }
        let mut gamma = [[[0.0; 4]; 4]; 4];
        for (lambda, plane) in gamma.iter_mut().enumerate() {
            for mu in 0..4 {
                for nu in 0..4 {
                    plane[mu][nu] = (0..4).map(|rho| inv[(lambda, rho)] * lowered[rho][mu][nu]).sum();
                }
            }
        }
        gamma
    });
    Christoffels { grid, values }
}

/// Orthonormal frame `e_k = F[(·, k)]` and its dual coframe `E = F⁻¹ = Fᵀ g`.
#[derive(Debug, Clone)]
pub struct Frame {
    grid: Grid,
    vectors: Vec<Matrix4<f64>>,
    coframe: Vec<Matrix4<f64>>,
}

impl Frame {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Column `k` holds the coordinate components `e_k^μ`.
    pub fn vectors(&self, idx: usize) -> &Matrix4<f64> {
        &self.vectors[idx]
    }

    /// Row `k` holds the coordinate components `E^k_μ`.
    pub fn coframe(&self, idx: usize) -> &Matrix4<f64> {
        &self.coframe[idx]
    }

    pub fn all_vectors(&self) -> &[Matrix4<f64>] {
        &self.vectors
    }

    pub fn all_coframes(&self) -> &[Matrix4<f64>] {
        &self.coframe
    }
}

/// Gram–Schmidt in the metric, applied to `∂_0, ∂_1, ∂_2, ∂_3` in that order.
pub fn orthonormal_frame(metric: &MetricField) -> Frame {
    let grid = metric.grid;
    let pairs: Vec<(Matrix4<f64>, Matrix4<f64>)> = grid.map(|idx| {
        let g = &metric.values[idx];
        let inner = |u: &nalgebra::Vector4<f64>, v: &nalgebra::Vector4<f64>| (u.transpose() * g * v)[(0, 0)];
        let mut f = Matrix4::<f64>::zeros();
        for k in 0..4 {
            let mut v = nalgebra::Vector4::zeros();
            v[k] = 1.0;
            for l in 0..k {
                let el = f.column(l).into_owned();
                let c = inner(&v, &el);
                v -= el * c;
            }
            let len = inner(&v, &v).sqrt();
            f.set_column(k, &(v / len));
        }
        let e = f.transpose() * g;
        (f, e)
    });
    let (vectors, coframe) = pairs.into_iter().unzip();
    Frame { grid, vectors, coframe }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector4;

    #[test]
    fn rejects_bad_metrics() {
        let grid = Grid::new(4).unwrap();
        let mut skew = Matrix4::identity();
        skew[(0, 1)] = 0.5;
        let err = MetricField::from_fn(grid, |_| skew).unwrap_err();
        assert!(matches!(err, GeometryError::NotSymmetric { .. }));

        let indefinite = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, -1.0, 1.0));
        let err =
            MetricField::from_fn(grid, |x| if x[0] > 0.5 { indefinite } else { Matrix4::identity() }).unwrap_err();
        assert!(matches!(err, GeometryError::NotPositiveDefinite { point } if point[0] > 2));
    }

    #[test]
    fn flat_metric_has_no_christoffels() {
        let grid = Grid::new(6).unwrap();
        let gamma = christoffels(&MetricField::flat(grid));
        assert!((0..grid.len()).all(|i| gamma.at(i).iter().flatten().flatten().all(|&v| v == 0.0)));
    }

    #[test]
    fn frames_of_simple_metrics() {
        let grid = Grid::new(4).unwrap();
        let flat = orthonormal_frame(&MetricField::flat(grid));
        assert_eq!(*flat.vectors(5), Matrix4::identity());

        let (h1, h2) = (2.0, 0.5);
        let diag = MetricField::from_fn(grid, |_| Matrix4::from_diagonal(&Vector4::new(h1, h1, h2, h2))).unwrap();
        let f = orthonormal_frame(&diag);
        let expected = Matrix4::from_diagonal(&Vector4::new(h1, h1, h2, h2).map(|h: f64| 1.0 / h.sqrt()));
        assert!((f.vectors(0) - expected).abs().max() < 1e-15);
    }

    #[test]
    fn frame_is_orthonormal_and_positive() {
        let grid = Grid::new(4).unwrap();
        let metric = MetricField::from_fn(grid, |x| {
            let s = (std::f64::consts::TAU * x[1]).sin();
            let mut g = Matrix4::identity() * 1.5;
            g[(0, 2)] = 0.3 * s;
            g[(2, 0)] = 0.3 * s;
            g[(1, 3)] = -0.2;
            g[(3, 1)] = -0.2;
            g[(0, 1)] = 0.1;
            g[(1, 0)] = 0.1;
            g
        })
        .unwrap();
        let frame = orthonormal_frame(&metric);
        for idx in 0..grid.len() {
            let f = frame.vectors(idx);
            let gram = f.transpose() * metric.at(idx) * f;
            assert!((gram - Matrix4::identity()).abs().max() < 1e-14);
            assert!(f.determinant() > 0.0);
            assert!((frame.coframe(idx) * f - Matrix4::identity()).abs().max() < 1e-14);
            // Gram–Schmidt in coordinate order: upper triangular
            assert_eq!(f[(1, 0)], 0.0);
            assert_eq!(f[(3, 2)], 0.0);
        }
    }
}
