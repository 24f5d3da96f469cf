mod common;

use std::f64::consts::TAU;

use common::*;
use quatspin::fiber::{left_residual, Quaternion};
use quatspin::geometry::{split_so4, GeometrySpec, Grid, LCConnection};
use quatspin::spinc::{
    b_tensor, dirac, leibniz_residual, pairing_form, sigma_field, spinor_cov_deriv, split_b, tilde_connection,
    ConnectionParam, SpinorField, SpinorSpec,
};

fn flat(n: usize) -> (Grid, LCConnection) {
    let grid = Grid::new(n).unwrap();
    (grid, LCConnection::new(&GeometrySpec::Flat.build(grid).unwrap()))
}

fn random_param(grid: Grid, seed: u64) -> ConnectionParam {
    let v = smooth_vector_field(grid, seed);
    ConnectionParam::new(grid, v.iter().map(|q| q.to_array()).collect())
}

#[test]
fn tilde_connection_on_flat_space() {
    let (grid, lc) = flat(8);
    let zero = tilde_connection(&lc, &ConnectionParam::zero(grid));
    let tau = 0.7;
    let shifted = tilde_connection(&lc, &ConnectionParam::constant(grid, [tau, 0.0, 0.0, 0.0]));
    let li = Quaternion::I.left_matrix();
    for idx in (0..grid.len()).step_by(37) {
        for k in 0..4 {
            assert_eq!(zero.theta(idx, k).amax(), 0.0);
            let expected = if k == 0 { li * tau } else { li * 0.0 };
            assert!((shifted.theta(idx, k) - expected).amax() < 1e-15);
        }
    }
}

#[test]
fn tilde_connection_is_metric_complex_linear_and_keeps_the_right_part() {
    for (_, spec) in catalog() {
        let grid = Grid::new(8).unwrap();
        let lc = LCConnection::new(&spec.build(grid).unwrap());
        let tilde = tilde_connection(&lc, &random_param(grid, 3));
        let j = Quaternion::I.left_matrix();
        for idx in 0..grid.len() {
            for k in 0..4 {
                let th = tilde.theta(idx, k);
                assert!((th + th.transpose()).amax() < 1e-12);
                assert!((th * j - j * th).amax() < 1e-12);
                let (_, right) = split_so4(&(th - lc.theta_frame(idx, k)));
                assert!(right.max_abs() < 1e-12);
            }
        }
    }
}

#[test]
fn cov_deriv_of_sine_matches_analytic_derivative() {
    let errs: Vec<f64> = [8, 16]
        .iter()
        .map(|&n| {
            let (grid, lc) = flat(n);
            let phi = SpinorField::from_fn(grid, |x| Quaternion::real((TAU * x[0]).sin()));
            let p = spinor_cov_deriv(&phi, &lc, &ConnectionParam::zero(grid));
            let mut worst = 0.0_f64;
            for idx in 0..grid.len() {
                let x = grid.coords(idx);
                let exact = Quaternion::real(TAU * (TAU * x[0]).cos());
                worst = worst.max((p.at(idx)[0] - exact).norm());
                for k in 1..4 {
                    assert_eq!(p.at(idx)[k], Quaternion::ZERO);
                }
            }
            worst
        })
        .collect();
    assert!(errs[1] < 1e-2, "{errs:?}");
    assert!(errs[0] / errs[1] > 14.0, "{errs:?}");
}

#[test]
fn constant_spinor_with_shifted_connection() {
    let (grid, lc) = flat(8);
    let phi = SpinorSpec::Constant(Quaternion::ONE).build(grid);
    let tau = 0.4;
    let t = ConnectionParam::constant(grid, [tau, 0.0, 0.0, 0.0]);
    let p = spinor_cov_deriv(&phi, &lc, &t);
    let lambda = pairing_form(&phi, &lc, &t);
    for idx in 0..grid.len() {
        assert!((p.at(idx)[0] - Quaternion::I * tau).norm() < 1e-15);
        assert_eq!(lambda[idx], [tau, 0.0, 0.0, 0.0]);
    }
    let v = smooth_vector_field(grid, 1);
    assert!(leibniz_residual(&phi, &lc, &t, &v).max < 1e-12);
    let untouched = pairing_form(&phi, &lc, &ConnectionParam::zero(grid));
    assert!(untouched.iter().flatten().all(|&l| l == 0.0));
}

#[test]
fn b_tensor_on_flat_space_is_left_multiplication_by_the_derivative() {
    let (grid, lc) = flat(8);
    let t = ConnectionParam::zero(grid);
    let constant = b_tensor(&SpinorSpec::Constant(Quaternion::new(0.3, -1.0, 2.0, 0.5)).build(grid), &lc, &t).unwrap();
    assert!(constant.tensors().iter().all(|b| b.max_abs() == 0.0));
    assert!(dirac(&SpinorSpec::Constant(Quaternion::J).build(grid), &lc, &t).iter().all(|d| *d == Quaternion::ZERO));

    let spinor = smooth_spinor(5);
    let phi = spinor.build(grid);
    let field = b_tensor(&phi, &lc, &t).unwrap();
    let mut worst = 0.0_f64;
    for idx in 0..grid.len() {
        let x = grid.coords(idx);
        for k in 0..4 {
            let slice = field.at(idx).slice_matrix(k);
            let exact = spinor.derivative_at(k, &x).left_matrix();
            worst = worst.max((slice - exact).amax());
        }
    }
    // leading stencil error on one harmonic of amplitude ≤ 0.12√2 along the derivative axis
    let bound = 0.12 * 2f64.sqrt() * TAU.powi(5) / 30.0 * grid.spacing().powi(4);
    assert!(worst <= bound, "{worst:e} > {bound:e}");
}

#[test]
fn b_tensor_routes_converge_at_fourth_order() {
    let residual = |n| {
        let (grid, lc, phi) = setup(&conformal(), &smooth_spinor(11), n);
        b_tensor(&phi, &lc, &random_param(grid, 2)).unwrap().consistency_residual()
    };
    let (coarse, fine) = (residual(12), residual(24));
    assert!(coarse / fine > 12.0, "{coarse:e} {fine:e}");
}

#[test]
fn cov_deriv_stays_in_the_self_dual_subspace() {
    for (_, spec) in catalog() {
        let (grid, lc, phi) = setup(&spec, &smooth_spinor(2), 8);
        let field = b_tensor(&phi, &lc, &random_param(grid, 4)).unwrap();
        for b in field.tensors() {
            for k in 0..4 {
                assert!(left_residual(&b.slice_matrix(k)) < 1e-10);
            }
        }
    }
}

#[test]
fn dirac_is_the_trace_recovered_by_the_split() {
    for (_, spec) in catalog() {
        let (grid, lc, phi) = setup(&spec, &smooth_spinor(8), 8);
        let t = random_param(grid, 9);
        let d = dirac(&phi, &lc, &t);
        let field = b_tensor(&phi, &lc, &t).unwrap();
        for (idx, split) in field.split().iter().enumerate() {
            assert!((split.dirac - d[idx]).max_abs() < 1e-12);
        }
    }
}

#[test]
fn b_depends_affinely_on_t_slice_by_slice() {
    let (grid, lc, phi) = setup(&product(), &smooth_spinor(4), 8);
    let t1 = random_param(grid, 10);
    let t2 = random_param(grid, 11);
    let b1 = b_tensor(&phi, &lc, &t1).unwrap();
    let b2 = b_tensor(&phi, &lc, &t2).unwrap();
    for idx in 0..grid.len() {
        let iq = Quaternion::I * phi.at(idx);
        for k in 0..4 {
            let dt = t1.at(idx)[k] - t2.at(idx)[k];
            for l in 0..4 {
                let diff = b1.at(idx).get(k, l) - b2.at(idx).get(k, l);
                assert!((diff - iq * Quaternion::basis(l) * dt).max_abs() < 1e-12);
            }
        }
    }
}

#[test]
fn splitting_of_field_tensors_is_exact() {
    let (grid, lc, phi) = setup(&conformal(), &smooth_spinor(6), 8);
    let field = b_tensor(&phi, &lc, &random_param(grid, 6)).unwrap();
    for b in field.tensors() {
        let s = split_b(b);
        assert!((s.reconstruct() - *b).max_abs() < 1e-12);
        let tr = s.trace_part();
        assert!(s.alt.dot(&s.sym0).abs() < 1e-12);
        assert!(s.alt.dot(&tr).abs() < 1e-12);
        assert!(s.sym0.dot(&tr).abs() < 1e-12);
    }
}

#[test]
fn sigma_of_unit_spinor_is_a_quarter_of_the_kahler_form() {
    let (grid, lc) = flat(8);
    let sigma = sigma_field(&SpinorSpec::Constant(Quaternion::ONE).build(grid), &lc);
    for idx in 0..grid.len() {
        assert_eq!(sigma.component(idx, &[0, 1]), 0.25);
        assert_eq!(sigma.component(idx, &[2, 3]), 0.25);
        for m in [[0, 2], [0, 3], [1, 2], [1, 3]] {
            assert_eq!(sigma.component(idx, &m), 0.0);
        }
    }

    // product metric: σ = ¼(h1 dx0∧dx1 + h2 dx2∧dx3) in coordinates
    let spec = product();
    let GeometrySpec::Product(w) = &spec else { unreachable!() };
    let (grid, lc, phi) = setup(&spec, &SpinorSpec::Constant(Quaternion::ONE), 8);
    let sigma = sigma_field(&phi, &lc);
    for idx in 0..grid.len() {
        let x = grid.coords(idx);
        let h1 = w.value_on(&[0, 1], &x).exp();
        let h2 = w.value_on(&[2, 3], &x).exp();
        assert!((sigma.component(idx, &[0, 1]) - 0.25 * h1).abs() < 1e-12);
        assert!((sigma.component(idx, &[2, 3]) - 0.25 * h2).abs() < 1e-12);
        assert!(sigma.component(idx, &[0, 2]).abs() < 1e-12);
    }
}

#[test]
fn leibniz_rule_converges_at_fourth_order() {
    for (name, spec) in catalog() {
        let res = |n| {
            let (grid, lc, phi) = setup(&spec, &smooth_spinor(1), n);
            leibniz_residual(&phi, &lc, &random_param(grid, 7), &smooth_vector_field(grid, 8)).rms
        };
        let (coarse, fine) = (res(8), res(16));
        assert!(coarse / fine >= 12.0, "{name}: {coarse:e} -> {fine:e}");
    }
}
