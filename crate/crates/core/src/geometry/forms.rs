//! Differential forms on the grid in the coordinate basis, and the discrete
//! exterior derivative.

use super::grid::Grid;
use super::GeometryError;

/// Increasing multi-indices of length `k` drawn from `0..4`, lexicographic.
pub fn multi_indices(k: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for m in start..4 {
            prefix.push(m);
            extend(m + 1, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, k, &mut Vec::new(), &mut out);
    out
}

/// A `k`-form `Σ_{I} α_I dx^I` over increasing multi-indices `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormField {
    grid: Grid,
    degree: usize,
    indices: Vec<Vec<usize>>,
    /// `values[idx * width + c]` is the coefficient on `indices[c]`.
    values: Vec<f64>,
}

impl FormField {
    pub fn zeros(grid: Grid, degree: usize) -> Result<Self, GeometryError> {
        if degree > 4 {
            return Err(GeometryError::BadDegree(degree));
        }
        let indices = multi_indices(degree);
        let values = vec![0.0; grid.len() * indices.len()];
        Ok(Self { grid, degree, indices, values })
    }

    /// Samples `f`, which returns the coefficients in [`multi_indices`] order.
    pub fn from_fn<F>(grid: Grid, degree: usize, f: F) -> Result<Self, GeometryError>
    where
        F: Fn(usize) -> Vec<f64> + Sync + Send,
    {
        let mut form = Self::zeros(grid, degree)?;
        let width = form.width();
        let rows = grid.map(f);
        for (idx, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(GeometryError::ShapeMismatch { expected: width, found: row.len() });
            }
            form.values[idx * width..(idx + 1) * width].copy_from_slice(&row);
        }
        Ok(form)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn width(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn at(&self, idx: usize) -> &[f64] {
        let w = self.width();
        &self.values[idx * w..(idx + 1) * w]
    }

    /// Coefficient on `dx^{I}` for an arbitrary (not necessarily sorted) index list,
    /// with the antisymmetry sign applied.
    pub fn component(&self, idx: usize, multi: &[usize]) -> f64 {
        let mut sorted = multi.to_vec();
        let mut sign = 1.0;
        // bubble sort, counting transpositions
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] == sorted[j + 1] {
                    return 0.0;
                }
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return 0.0;
        }
        let c = self.indices.iter().position(|m| *m == sorted).expect("multi-index of matching degree");
        sign * self.at(idx)[c]
    }

    /// Largest coefficient magnitude over the grid.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self { values, ..self.clone() }
    }
}

/// `(dα)_{μ0…μk} = Σ_j (−1)^j ∂_{μj} α_{μ0…μ̂j…μk}` with fourth-order central differences.
pub fn exterior_derivative(alpha: &FormField) -> Result<FormField, GeometryError> {
    if alpha.degree >= 4 {
        return Err(GeometryError::BadDegree(alpha.degree + 1));
    }
    let grid = alpha.grid;
    let width = alpha.width();
    // derivative of each component along each axis
    let comp_fields: Vec<Vec<f64>> =
        (0..width).map(|c| (0..grid.len()).map(|idx| alpha.values[idx * width + c]).collect()).collect();
    let derivs: Vec<[Vec<f64>; 4]> =
        comp_fields.iter().map(|f| std::array::from_fn(|mu| grid.derivative(f, mu))).collect();
    let target = multi_indices(alpha.degree + 1);
    let plan: Vec<Vec<(f64, usize, usize)>> = target
        .iter()
        .map(|multi| {
            (0..multi.len())
                .map(|j| {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let mut rest = multi.clone();
                    let axis = rest.remove(j);
                    let c = alpha.indices.iter().position(|m| *m == rest).expect("sorted sub-index");
                    (sign, axis, c)
                })
                .collect()
        })
        .collect();
    FormField::from_fn(grid, alpha.degree + 1, |idx| {
        plan.iter().map(|terms| terms.iter().map(|&(sign, axis, c)| sign * derivs[c][axis][idx]).sum()).collect()
    })
}
