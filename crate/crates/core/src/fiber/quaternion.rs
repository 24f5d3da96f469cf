//! Real quaternions as the model of a single tangent fiber.
//!
//! The fiber is identified with `H` through the orthonormal basis
//! `e0 = 1, e1 = i, e2 = j, e3 = k`, oriented so that `e0 ∧ e1 ∧ e2 ∧ e3` is positive.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use nalgebra::Matrix4;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Basis vector `e_k` of the fiber, `k ∈ 0..4`.
    #[inline]
    pub fn basis(k: usize) -> Self {
        match k {
            0 => Self::ONE,
            1 => Self::I,
            2 => Self::J,
            3 => Self::K,
            _ => panic!("basis index {k} out of range"),
        }
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean inner product of the four components.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Imaginary part, as a pure quaternion.
    #[inline]
    pub fn imag(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    /// Matrix of `v ↦ self · v` in the basis `(1, i, j, k)`.
    pub fn left_matrix(self) -> Matrix4<f64> {
        let Self { w: a, x: b, y: c, z: d } = self;
        Matrix4::new(
            a, -b, -c, -d, //
            b, a, -d, c, //
            c, d, a, -b, //
            d, -c, b, a,
        )
    }

    /// Matrix of `v ↦ v · self` in the basis `(1, i, j, k)`.
    pub fn right_matrix(self) -> Matrix4<f64> {
        let Self { w: a, x: b, y: c, z: d } = self;
        Matrix4::new(
            a, -b, -c, -d, //
            b, a, d, -c, //
            c, -d, a, b, //
            d, c, -b, a,
        )
    }

    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }
}

/// Hamilton product.
///
/// Row-by-row this is exactly `apply(p.left_matrix(), q)`, with the same
/// summation order, so evaluation through the matrix and through the product
/// agree bit for bit.
#[inline]
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    let Quaternion { w: a, x: b, y: c, z: d } = p;
    let [v0, v1, v2, v3] = q.to_array();
    Quaternion::new(
        a * v0 - b * v1 - c * v2 - d * v3,
        b * v0 + a * v1 - d * v2 + c * v3,
        c * v0 + d * v1 + a * v2 - b * v3,
        d * v0 - c * v1 + b * v2 + a * v3,
    )
}

/// Applies a 4×4 matrix to a fiber vector, summing each row left to right.
#[inline]
pub fn apply(m: &Matrix4<f64>, v: Quaternion) -> Quaternion {
    let [v0, v1, v2, v3] = v.to_array();
    let row = |r: usize| m[(r, 0)] * v0 + m[(r, 1)] * v1 + m[(r, 2)] * v2 + m[(r, 3)] * v3;
    Quaternion::new(row(0), row(1), row(2), row(3))
}

impl Index<usize> for Quaternion {
    type Output = f64;
    fn index(&self, idx: usize) -> &f64 {
        match idx {
            0 => &self.w,
            1 => &self.x,
            2 => &self.y,
            3 => &self.z,
            _ => panic!("quaternion component {idx} out of range"),
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        quat_mul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, q| acc + q)
    }
}
