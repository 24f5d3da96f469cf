//! Self-dual spinors as self-dual conformal maps of the fiber.
//!
//! A spinor in `W⁺` is carried by a quaternion label `q` and acts on tangent
//! vectors by left multiplication, `φ(v) = q·v`. Clifford multiplication
//! `TM × W⁺ → W⁻` is evaluation of that map, and `W⁻` is the tangent fiber
//! itself with complex structure `J = L_i`.

use nalgebra::Matrix4;

use super::forms::{AcStructure, TwoForm, PAIRS};
use super::quaternion::{apply, quat_mul, Quaternion};
use super::FiberError;

/// Quaternion unit defining the complex structure on `W⁺` and `W⁻`.
pub const I_UNIT: Quaternion = Quaternion::I;

/// Sign in `v·w = SIGN · (w · v̄)` for Clifford multiplication `W⁻ → W⁺`.
/// This is the unique sign for which `v·(v·φ) = −|v|² φ`.
pub const CLIFFORD_MINUS_SIGN: f64 = -1.0;

/// Element of `W⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SDSpinor(pub Quaternion);

/// Element of `W⁻ ≅ (TM, J)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ASDSpinor(pub Quaternion);

impl SDSpinor {
    pub fn label(self) -> Quaternion {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }
}

impl ASDSpinor {
    pub fn vector(self) -> Quaternion {
        self.0
    }

    /// Complex scalar action `(re + im·J) v`.
    pub fn scale_complex(self, re: f64, im: f64) -> Self {
        ASDSpinor(quat_mul(Quaternion::real(re) + I_UNIT * im, self.0))
    }

    pub fn apply_j(self) -> Self {
        ASDSpinor(quat_mul(I_UNIT, self.0))
    }
}

/// Matrix of `v ↦ q·v`.
pub fn endo_from_spinor(phi: SDSpinor) -> Matrix4<f64> {
    phi.0.left_matrix()
}

/// Decomposition of a self-dual conformal map as `scale · R`, where `R`
/// rotates two orthogonal planes by the same `angle ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdConformal {
    pub scale: f64,
    pub angle: f64,
}

/// Orthogonal projection of a 4×4 matrix onto the left-multiplication subspace.
pub fn project_left(m: &Matrix4<f64>) -> Quaternion {
    (0..4)
        .map(|l| {
            let e = Quaternion::basis(l);
            quat_mul(apply(m, e), e.conj())
        })
        .sum::<Quaternion>()
        * 0.25
}

/// Frobenius distance from `m` to the left-multiplication subspace.
pub fn left_residual(m: &Matrix4<f64>) -> f64 {
    (m - project_left(m).left_matrix()).norm()
}

pub fn classify_endo(m: &Matrix4<f64>, tol: f64) -> Result<SdConformal, FiberError> {
    let q = project_left(m);
    let residual = (m - q.left_matrix()).norm();
    if residual > tol * m.norm().max(1.0) {
        return Err(FiberError::NotSDConformal { residual });
    }
    let scale = q.norm();
    let angle = if scale == 0.0 { 0.0 } else { q.imag().norm().atan2(q.w) };
    Ok(SdConformal { scale, angle })
}

/// Clifford multiplication `v·φ = φ(v) = q·v`.
pub fn clifford_mul(v: Quaternion, phi: SDSpinor) -> ASDSpinor {
    ASDSpinor(quat_mul(phi.0, v))
}

/// Clifford multiplication `W⁻ → W⁺`.
pub fn clifford_mul_minus(v: Quaternion, w: ASDSpinor) -> SDSpinor {
    SDSpinor(quat_mul(w.0, v.conj()) * CLIFFORD_MINUS_SIGN)
}

/// `(φ*ω)(e_a, e_b) = ω(q e_a, q e_b)`.
pub fn pullback_form(phi: SDSpinor, omega: &TwoForm) -> TwoForm {
    let images: [Quaternion; 4] = std::array::from_fn(|a| quat_mul(phi.0, Quaternion::basis(a)));
    TwoForm::from_upper(PAIRS.map(|(a, b)| omega.eval(images[a], images[b])))
}

/// Squaring map `σ(φ) = ¼ φ*ω`.
pub fn sigma(phi: SDSpinor, reference: &AcStructure) -> TwoForm {
    pullback_form(phi, &reference.form()) * 0.25
}

pub fn spinor_inner(phi: SDSpinor, psi: SDSpinor) -> f64 {
    phi.0.dot(psi.0)
}

pub fn i_action(phi: SDSpinor) -> SDSpinor {
    SDSpinor(quat_mul(I_UNIT, phi.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::forms::hodge_star;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

    fn e(a: usize, b: usize) -> TwoForm {
        TwoForm::basis(a, b)
    }

    #[test]
    fn endo_examples() {
        assert_eq!(endo_from_spinor(SDSpinor(Quaternion::ONE)), Matrix4::identity());
        assert_eq!(endo_from_spinor(SDSpinor(Quaternion::real(2.0))), Matrix4::identity() * 2.0);
        let li = endo_from_spinor(SDSpinor(Quaternion::I));
        // e0→e1, e1→−e0, e2→e3, e3→−e2
        let expected = Matrix4::new(
            0.0, -1.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0,
        );
        assert_eq!(li, expected);
    }

    #[test]
    fn classify_examples() {
        let id = classify_endo(&Matrix4::identity(), 1e-9).unwrap();
        assert_eq!((id.scale, id.angle), (1.0, 0.0));

        let q = Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0);
        let c = classify_endo(&endo_from_spinor(SDSpinor(q)), 1e-9).unwrap();
        assert!((c.scale - 1.0).abs() < 1e-15);
        assert!((c.angle - FRAC_PI_4).abs() < 1e-15);

        let refl = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        assert!(matches!(classify_endo(&refl, 1e-9), Err(FiberError::NotSDConformal { .. })));

        // right multiplications rotate anti-self-dually
        let r = Quaternion::J.right_matrix();
        assert!(classify_endo(&r, 1e-9).is_err());

        let minus = classify_endo(&(-Matrix4::identity()), 1e-9).unwrap();
        assert!((minus.angle - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn clifford_examples() {
        let w = clifford_mul(Quaternion::J, SDSpinor(Quaternion::I));
        assert_eq!(w.0, Quaternion::K);
        let v = Quaternion::new(0.1, 0.2, -0.3, 0.4);
        assert_eq!(clifford_mul(v, SDSpinor(Quaternion::ONE)).0, v);
        let q = Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0);
        assert_eq!(clifford_mul(Quaternion::ONE, SDSpinor(q)).0, q);
    }

    #[test]
    fn pullback_examples() {
        let omega = e(0, 1) + e(2, 3);
        let arbitrary = TwoForm::from_upper([0.3, -1.0, 2.0, 0.5, 0.0, -0.7]);
        assert_eq!(pullback_form(SDSpinor(Quaternion::ONE), &arbitrary), arbitrary);
        assert_eq!(pullback_form(SDSpinor(Quaternion::real(2.0)), &arbitrary), arbitrary * 4.0);
        // brute force over all basis pairs: ω(j e_a, j e_b)
        let pulled = pullback_form(SDSpinor(Quaternion::J), &omega);
        for a in 0..4 {
            for b in 0..4 {
                let direct = omega.eval(Quaternion::J * Quaternion::basis(a), Quaternion::J * Quaternion::basis(b));
                assert_eq!(pulled.get(a, b), direct);
            }
        }
        assert_eq!(pulled, -omega);
    }

    #[test]
    fn sigma_examples() {
        let reference = AcStructure::standard();
        let quarter = (e(0, 1) + e(2, 3)) * 0.25;
        assert_eq!(sigma(SDSpinor(Quaternion::ONE), &reference), quarter);
        assert_eq!(sigma(SDSpinor(Quaternion::ZERO), &reference), TwoForm::ZERO);
        assert_eq!(sigma(SDSpinor(Quaternion::J), &reference), -quarter);
        let s = sigma(SDSpinor(Quaternion::new(1.0, 2.0, -0.5, 0.3)), &reference);
        assert!((hodge_star(&s) - s).norm() < 1e-15);
        let q2 = Quaternion::new(1.0, 2.0, -0.5, 0.3).norm_sq();
        assert!((s.norm() - SQRT_2 / 4.0 * q2).abs() < 1e-14);
    }

    #[test]
    fn inner_and_i_action() {
        let one = SDSpinor(Quaternion::ONE);
        assert_eq!(spinor_inner(one, SDSpinor(Quaternion::I)), 0.0);
        assert_eq!(i_action(one), SDSpinor(Quaternion::I));
        let phi = SDSpinor(Quaternion::new(0.4, -1.1, 0.9, 2.2));
        assert!(spinor_inner(i_action(phi), phi).abs() < 1e-15);
    }

    #[test]
    fn clifford_is_complex_linear() {
        let phi = SDSpinor(Quaternion::new(0.4, -1.1, 0.9, 2.2));
        let v = Quaternion::new(1.0, 0.5, -0.25, 3.0);
        let lhs = clifford_mul(v, i_action(phi));
        let rhs = clifford_mul(v, phi).apply_j();
        assert!((lhs.0 - rhs.0).norm() < 1e-14);
        let scaled = ASDSpinor(Quaternion::ONE).scale_complex(2.0, 3.0);
        assert_eq!(scaled.0, Quaternion::new(2.0, 3.0, 0.0, 0.0));
    }

    #[test]
    fn clifford_relation_sign() {
        let phi = SDSpinor(Quaternion::new(0.4, -1.1, 0.9, 2.2));
        let v = Quaternion::new(1.0, 0.5, -0.25, 3.0);
        let back = clifford_mul_minus(v, clifford_mul(v, phi));
        let expected = phi.0 * -v.norm_sq();
        assert!((back.0 - expected).norm() < 1e-13);
    }
}
