//! Two-forms on a single oriented Euclidean fiber, the Hodge star and
//! orthogonal almost-complex structures.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix4;

use super::quaternion::Quaternion;
use super::FiberError;

/// Index pairs `(a, b)` with `a < b`, in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Antisymmetric 4×4 coefficient array `ω_ab` in the orthonormal frame.
///
/// The norm is `|ω|² = Σ_{a<b} ω_ab²`, under which a Kähler form has length `√2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TwoForm {
    c: [[f64; 4]; 4],
}

impl TwoForm {
    pub const ZERO: Self = Self { c: [[0.0; 4]; 4] };

    /// Builds the form from its six upper-triangular coefficients in [`PAIRS`] order.
    pub fn from_upper(u: [f64; 6]) -> Self {
        let mut c = [[0.0; 4]; 4];
        for (&(a, b), &v) in PAIRS.iter().zip(u.iter()) {
            c[a][b] = v;
            c[b][a] = -v;
        }
        Self { c }
    }

    /// Takes the antisymmetric part of an arbitrary array.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        let mut u = [0.0; 6];
        for (slot, &(a, b)) in u.iter_mut().zip(PAIRS.iter()) {
            *slot = 0.5 * (m[(a, b)] - m[(b, a)]);
        }
        Self::from_upper(u)
    }

    /// The elementary form `e^a ∧ e^b`.
    pub fn basis(a: usize, b: usize) -> Self {
        assert!(a != b && a < 4 && b < 4, "invalid basis pair ({a}, {b})");
        let mut c = [[0.0; 4]; 4];
        c[a][b] = 1.0;
        c[b][a] = -1.0;
        Self { c }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.c[a][b]
    }

    pub fn upper(&self) -> [f64; 6] {
        PAIRS.map(|(a, b)| self.c[a][b])
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|a, b| self.c[a][b])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        PAIRS.iter().map(|&(a, b)| self.c[a][b] * other.c[a][b]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.upper().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Evaluates `ω(v, w)`.
    pub fn eval(&self, v: Quaternion, w: Quaternion) -> f64 {
        let (v, w) = (v.to_array(), w.to_array());
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += self.c[a][b] * v[a] * w[b];
            }
        }
        s
    }
}

impl Add for TwoForm {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (row, orow) in c.iter_mut().zip(o.c.iter()) {
            for (x, y) in row.iter_mut().zip(orow.iter()) {
                *x += y;
            }
        }
        Self { c }
    }
}

impl Sub for TwoForm {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for TwoForm {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for TwoForm {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self { c: self.c.map(|row| row.map(|v| v * s)) }
    }
}

/// Hodge star for the orientation `e0123`: `⋆(e^a∧e^b) = e^c∧e^d` with
/// `(a, b, c, d)` an even permutation.
pub fn hodge_star(omega: &TwoForm) -> TwoForm {
    let [w01, w02, w03, w12, w13, w23] = omega.upper();
    TwoForm::from_upper([w23, -w13, w12, w03, -w02, w01])
}

/// Splits `ω = ω⁺ + ω⁻` with `⋆ω± = ±ω±`.
pub fn sd_asd_split(omega: &TwoForm) -> (TwoForm, TwoForm) {
    let star = hodge_star(omega);
    let u = omega.upper();
    let s = star.upper();
    let mut plus = [0.0; 6];
    let mut minus = [0.0; 6];
    for m in 0..6 {
        plus[m] = 0.5 * (u[m] + s[m]);
        minus[m] = u[m] - plus[m];
    }
    (TwoForm::from_upper(plus), TwoForm::from_upper(minus))
}

/// Orthogonal almost-complex structure on the fiber.
///
/// Its fundamental form is `ω(v, w) = g(Jv, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcStructure {
    j: Matrix4<f64>,
}

impl AcStructure {
    /// `J = L_u` for a unit imaginary quaternion `u`.
    pub fn from_unit_imaginary(u: Quaternion, tol: f64) -> Result<Self, FiberError> {
        if u.w.abs() > tol || (u.norm() - 1.0).abs() > tol {
            return Err(FiberError::NotUnitImaginary(u.to_array()));
        }
        Ok(Self { j: u.left_matrix() })
    }

    /// The reference structure `J = L_i`, whose form is `e01 + e23`.
    pub fn standard() -> Self {
        Self { j: Quaternion::I.left_matrix() }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.j
    }

    pub fn form(&self) -> TwoForm {
        sdform_from_j(self)
    }
}

/// Recovers `J` from a self-dual form of length `√2`, solving `g(Jv, w) = ω(v, w)`.
pub fn j_from_sdform(omega: &TwoForm, tol: f64) -> Result<AcStructure, FiberError> {
    let asd = sd_asd_split(omega).1.norm();
    let len = omega.norm();
    if asd > tol || (len - std::f64::consts::SQRT_2).abs() > tol {
        return Err(FiberError::NotUnitSD { asd_norm: asd, length: len });
    }
    // ω_ab = g(J e_a, e_b) = J_ba
    Ok(AcStructure { j: omega.to_matrix().transpose() })
}

pub fn sdform_from_j(j: &AcStructure) -> TwoForm {
    TwoForm::from_matrix(&j.j.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> TwoForm {
        TwoForm::basis(a, b)
    }

    #[test]
    fn star_of_basis_forms() {
        assert_eq!(hodge_star(&e(0, 1)), e(2, 3));
        assert_eq!(hodge_star(&e(0, 2)), -e(1, 3));
        assert_eq!(hodge_star(&e(0, 3)), e(1, 2));
        let sd = e(0, 1) + e(2, 3);
        assert_eq!(hodge_star(&sd), sd);
        let asd = e(0, 1) - e(2, 3);
        assert_eq!(hodge_star(&asd), -asd);
    }

    #[test]
    fn split_examples() {
        let (p, m) = sd_asd_split(&e(0, 1));
        assert_eq!(p, (e(0, 1) + e(2, 3)) * 0.5);
        assert_eq!(m, (e(0, 1) - e(2, 3)) * 0.5);
        let sd = e(0, 1) + e(2, 3);
        assert_eq!(sd_asd_split(&sd), (sd, TwoForm::ZERO));
        assert_eq!(sd_asd_split(&TwoForm::ZERO), (TwoForm::ZERO, TwoForm::ZERO));
    }

    #[test]
    fn kahler_form_has_length_sqrt2() {
        let w = AcStructure::standard().form();
        assert_eq!(w, e(0, 1) + e(2, 3));
        assert!((w.norm() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn standard_form_gives_left_i() {
        // Oracle: solve g(Jv, w) = ω(v, w) one basis pair at a time.
        let omega = e(0, 1) + e(2, 3);
        let j = j_from_sdform(&omega, 1e-12).unwrap();
        let mut oracle = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                // (J e_a)_b = ω(e_a, e_b)
                oracle[(b, a)] = omega.eval(Quaternion::basis(a), Quaternion::basis(b));
            }
        }
        assert_eq!(*j.matrix(), oracle);
        assert_eq!(*j.matrix(), Quaternion::I.left_matrix());
        assert_eq!(sdform_from_j(&AcStructure::standard()), omega);
    }

    #[test]
    fn unit_length_enforced() {
        assert!(matches!(j_from_sdform(&e(0, 1), 1e-9), Err(FiberError::NotUnitSD { .. })));
        let asd = e(0, 1) - e(2, 3);
        assert!(j_from_sdform(&asd, 1e-9).is_err());
    }

    #[test]
    fn ac_structures_square_to_minus_one() {
        for u in [Quaternion::I, Quaternion::J, Quaternion::K] {
            let j = AcStructure::from_unit_imaginary(u, 1e-12).unwrap();
            let sq = j.matrix() * j.matrix() + Matrix4::identity();
            assert!(sq.norm() < 1e-15);
            let f = j.form();
            assert_eq!(hodge_star(&f), f);
        }
        assert!(AcStructure::from_unit_imaginary(Quaternion::ONE, 1e-12).is_err());
    }
}
