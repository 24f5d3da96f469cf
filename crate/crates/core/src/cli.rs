//! Command-line orchestration. Each command builds a [`Report`]; `main` prints it
//! and maps the outcome to an exit code.

use std::f64::consts::{SQRT_2, TAU};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fiber::{
    apply, classify_endo, clifford_mul, clifford_mul_minus, endo_from_spinor, i_action, j_from_sdform, pullback_form,
    sd_asd_split, sdform_from_j, sigma, AcStructure, Quaternion, SDSpinor, CLASSIFY_TOL,
};
use crate::geometry::Grid;
use crate::minimization::{
    collinearity_report, detect, fiber_problems, minimize_problems, pairing_at_minimizer, Component, MinimizationError,
    Minimizer, COINCIDE_TOL,
};
use crate::report::{Relation, Report};
use crate::scenario::{Scenario, ScenarioError};
use crate::spinc::{b_tensor, consistency_tolerance, leibniz_residual, ConnectionParam, SpincError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// Fiber identities that hold in exact arithmetic are checked at this level.
pub const FIBER_TOL: f64 = 1e-12;
/// Splitting identities (linear algebra on one tensor) are checked at this level.
pub const SPLIT_TOL: f64 = 1e-12;
/// Pairing `⟨∇̄φ, iφ⟩` at the full-norm minimizer.
pub const PAIRING_TOL: f64 = 1e-10;
pub const COLLINEAR_TOL: f64 = 1e-8;
pub const RATIO_STD_TOL: f64 = 1e-6;
/// Constant in the Leibniz-rule tolerance `C · h⁴ · K⁵/30 · max|q| · max|v|`.
pub const LEIBNIZ_CONSTANT: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(
    name = "quatspin",
    version,
    about = "Quaternionic spinors, connections and symplectic detection on the flat 4-torus"
)]
pub struct Cli {
    /// Override the grid size of the scenario.
    #[arg(long, global = true, value_name = "N")]
    pub grid_n: Option<usize>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seeded property suite for the single-fiber algebra.
    VerifyFiber {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
    },
    /// Splitting of B into Alt, Sym0 and the Dirac trace, with residuals.
    Decompose { file: PathBuf },
    /// Component minimizers, their common line and the pairing at the full minimizer.
    Minimize { file: PathBuf },
    /// Symplectic verdict from dσ next to the simultaneous-minimizer verdict.
    Detect { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Minimization(#[from] MinimizationError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Scenario(_) => EXIT_USAGE,
            CliError::Minimization(MinimizationError::DegenerateEverywhere) => EXIT_DEGENERATE,
            CliError::Minimization(_) => EXIT_FAIL,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let load = |file: &PathBuf| -> Result<Scenario, CliError> {
        let s = Scenario::from_file(file)?;
        Ok(match cli.grid_n {
            Some(n) => s.with_grid(n),
            None => s,
        })
    };
    match &cli.command {
        Command::VerifyFiber { seed, count } => verify_fiber(*seed, *count),
        Command::Decompose { file } => decompose(&load(file)?),
        Command::Minimize { file } => minimize(&load(file)?),
        Command::Detect { file } => detect_cmd(&load(file)?),
    }
}

fn random_quaternion(rng: &mut ChaCha8Rng, r: f64) -> Quaternion {
    Quaternion::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn random_unit_imaginary(rng: &mut ChaCha8Rng) -> Quaternion {
    loop {
        let u = Quaternion::new(0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = u.norm();
        if n > 0.1 && n <= 1.0 {
            return u * (1.0 / n);
        }
    }
}

#[derive(Default)]
struct Worst {
    eq_id: f64,
    isometry: f64,
    clifford: f64,
    complex_linear: f64,
    self_dual: f64,
    sigma_norm: f64,
    unit_length: f64,
    j_square: f64,
    form_round_trip: f64,
    j_round_trip: f64,
    scale: f64,
    angle: f64,
    classify_failures: usize,
}

/// Seeded suite over `count` random fibers.
pub fn verify_fiber(seed: u64, count: usize) -> Result<Report, CliError> {
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference = AcStructure::standard();
    let mut w = Worst::default();
    for _ in 0..count {
        let q = random_quaternion(&mut rng, 2.0);
        let v = random_quaternion(&mut rng, 2.0);
        let phi = SDSpinor(q);

        let image = clifford_mul(v, phi).vector();
        w.eq_id = w.eq_id.max((image - apply(&endo_from_spinor(phi), v)).max_abs());
        w.isometry = w.isometry.max((image.norm() - v.norm() * q.norm()).abs());
        let back = clifford_mul_minus(v, clifford_mul(v, phi)).label();
        w.clifford = w.clifford.max((back + q * v.norm_sq()).max_abs());
        let lhs = clifford_mul(v, i_action(phi));
        w.complex_linear = w.complex_linear.max((lhs.vector() - clifford_mul(v, phi).apply_j().vector()).max_abs());

        let s = sigma(phi, &reference);
        w.self_dual = w.self_dual.max(sd_asd_split(&s).1.max_abs());
        w.sigma_norm = w.sigma_norm.max((s.norm() - SQRT_2 / 4.0 * q.norm_sq()).abs());

        // a unit spinor pulls ω back to a self-dual form of length √2, hence to an orthogonal J
        if q.norm() > 1e-3 {
            let unit = SDSpinor(q * (1.0 / q.norm()));
            let omega = pullback_form(unit, &reference.form());
            w.unit_length = w.unit_length.max((omega.norm() - SQRT_2).abs());
            match j_from_sdform(&omega, 1e-10) {
                Ok(j) => {
                    let m = j.matrix();
                    w.j_square = w.j_square.max((m * m + nalgebra::Matrix4::identity()).amax());
                    w.form_round_trip = w.form_round_trip.max((sdform_from_j(&j) - omega).max_abs());
                }
                Err(_) => w.j_square = f64::INFINITY,
            }
        }
        let u = random_unit_imaginary(&mut rng);
        let ac = AcStructure::from_unit_imaginary(u, 1e-12).expect("normalized");
        match j_from_sdform(&sdform_from_j(&ac), 1e-10) {
            Ok(j) => w.j_round_trip = w.j_round_trip.max((j.matrix() - ac.matrix()).amax()),
            Err(_) => w.j_round_trip = f64::INFINITY,
        }

        match classify_endo(&endo_from_spinor(phi), CLASSIFY_TOL) {
            Ok(c) => {
                w.scale = w.scale.max((c.scale - q.norm()).abs());
                w.angle = w.angle.max((c.angle - q.imag().norm().atan2(q.w)).abs());
            }
            Err(_) => w.classify_failures += 1,
        }
    }

    let mut r = Report::new("verify-fiber", format!("seed {seed}, {count} fibers"));
    r.echo("seed", seed);
    r.echo("count", count);
    r.at_most("eval_identity", w.eq_id, 0.0);
    r.at_most("isometry", w.isometry, FIBER_TOL);
    r.at_most("clifford_relation", w.clifford, FIBER_TOL);
    r.at_most("complex_linearity", w.complex_linear, FIBER_TOL);
    r.at_most("sigma_self_dual", w.self_dual, FIBER_TOL);
    r.at_most("sigma_norm", w.sigma_norm, FIBER_TOL);
    r.at_most("unit_spinor_form_length", w.unit_length, FIBER_TOL);
    r.at_most("j_squared_minus_one", w.j_square, FIBER_TOL);
    r.at_most("form_round_trip", w.form_round_trip, FIBER_TOL);
    r.at_most("j_round_trip", w.j_round_trip, FIBER_TOL);
    r.at_most("classify_scale", w.scale, CLASSIFY_TOL);
    r.at_most("classify_angle", w.angle, CLASSIFY_TOL);
    r.at_most("classify_failures", w.classify_failures as f64, 0.0);
    Ok(r)
}

fn scenario_report(command: &str, s: &Scenario) -> Report {
    let mut r = Report::new(command, format!("{} (n = {})", s.name, s.n));
    r.echo("name", &s.name);
    r.echo("grid.n", s.n);
    r.echo("geometry", s.geometry.name());
    r.echo("spinor", s.spinor.name());
    r
}

/// Smooth test vector field (frame components) used for the Leibniz-rule residual.
pub fn test_vector_field(grid: Grid) -> Vec<Quaternion> {
    (0..grid.len())
        .map(|idx| {
            let x = grid.coords(idx);
            Quaternion::new(
                1.0 + 0.3 * (TAU * x[1]).sin(),
                0.5 * (TAU * x[2]).cos(),
                0.4 * (TAU * x[0]).sin(),
                0.2 + 0.3 * (TAU * x[3]).cos(),
            )
        })
        .collect()
}

/// Splitting of `B` at `t = 0`.
pub fn decompose(s: &Scenario) -> Result<Report, CliError> {
    let (lc, phi) = s.build()?;
    let grid = phi.grid();
    let t = ConnectionParam::zero(grid);
    let mut r = scenario_report("decompose", s);

    let field = match b_tensor(&phi, &lc, &t) {
        Ok(f) => {
            r.at_most("b_consistency", f.consistency_residual(), consistency_tolerance(grid, &phi));
            f
        }
        Err(SpincError::ConsistencyFailure { residual, tolerance }) => {
            r.at_most("b_consistency", residual, tolerance);
            return Ok(r);
        }
    };

    let (mut alt, mut sym0, mut trace, mut full) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let (mut recon, mut ortho, mut dirac) = (0.0_f64, 0.0_f64, 0.0_f64);
    for (idx, split) in field.split().iter().enumerate() {
        let b = field.at(idx);
        let tr = split.trace_part();
        alt = alt.max(split.alt.norm());
        sym0 = sym0.max(split.sym0.norm());
        trace = trace.max(tr.norm());
        full = full.max(b.norm());
        recon = recon.max((split.reconstruct() - *b).max_abs());
        ortho =
            ortho.max(split.alt.dot(&split.sym0).abs()).max(split.alt.dot(&tr).abs()).max(split.sym0.dot(&tr).abs());
        let diag: Quaternion = (0..4).map(|k| b.get(k, k)).sum();
        let labels = field.derivative().at(idx);
        let d = crate::spinc::dirac_at(&labels);
        dirac = dirac.max((d - diag).max_abs()).max((split.dirac - d).max_abs());
    }
    r.at_most("reconstruction", recon, SPLIT_TOL);
    r.at_most("orthogonality", ortho, SPLIT_TOL);
    r.at_most("dirac_as_trace", dirac, SPLIT_TOL);

    let v = test_vector_field(grid);
    let v_max = v.iter().map(|q| q.norm()).fold(0.0, f64::max);
    let eq = leibniz_residual(&phi, &lc, &t, &v);
    let tol =
        LEIBNIZ_CONSTANT * grid.spacing().powi(4) * s.tolerances.stencil_scale() * phi.max_norm().max(1.0) * v_max;
    r.at_most("leibniz_residual", eq.max, tol);

    r.value("norm.alt", alt);
    r.value("norm.sym0", sym0);
    r.value("norm.quarter_dirac", trace);
    r.value("norm.b", full);
    r.value("leibniz_rms", eq.rms);
    Ok(r)
}

fn max_spread(minimizers: &[Minimizer]) -> f64 {
    let grid = minimizers[0].grid();
    let mut spread = 0.0_f64;
    for idx in 0..grid.len() {
        if minimizers.iter().any(|m| m.is_degenerate(idx)) {
            continue;
        }
        for a in 0..minimizers.len() {
            for b in a + 1..minimizers.len() {
                let (ta, tb) = (minimizers[a].t(idx), minimizers[b].t(idx));
                spread = spread.max((0..4).map(|i| (ta[i] - tb[i]).powi(2)).sum::<f64>().sqrt());
            }
        }
    }
    spread
}

fn relative_std(mean: f64, std: f64) -> f64 {
    if mean != 0.0 {
        std / mean.abs()
    } else {
        std
    }
}

pub fn minimize(s: &Scenario) -> Result<Report, CliError> {
    let (lc, phi) = s.build()?;
    let grid = phi.grid();
    let problems = fiber_problems(&phi, &lc);
    let minimizers: Vec<Minimizer> =
        Component::ALL.iter().map(|&c| minimize_problems(grid, &problems, c)).collect::<Result<_, _>>()?;
    let mut r = scenario_report("minimize", s);

    match collinearity_report(&minimizers) {
        Ok(line) => {
            r.at_most("collinearity_relative", line.max_relative_residual, COLLINEAR_TOL);
            r.at_most("coincidence_violations", line.coincidence_violations as f64, 0.0);
            for (i, c) in line.components.iter().enumerate() {
                let key = format!("ratio_rel_std.{}", c.name());
                r.at_most(&key, relative_std(line.ratio_mean[i], line.ratio_std[i]), RATIO_STD_TOL);
            }
            for (i, c) in line.components.iter().enumerate() {
                r.value(&format!("ratio.{}", c.name()), line.ratio_mean[i]);
            }
            r.count("points.on_line", line.points.len() - line.coincident_points);
            r.count("points.coincident", line.coincident_points);
            r.count("points.degenerate", line.degenerate_points);
            r.echo("line", "fitted");
        }
        Err(MinimizationError::Collapsed { points }) => {
            r.at_most("collapsed_spread", max_spread(&minimizers), COINCIDE_TOL);
            r.count("points.coincident", points);
            r.count("points.degenerate", minimizers[0].degenerate_count());
            r.echo("line", "collapsed");
            r.note("all component minimizers coincide; no line is defined");
        }
        Err(e) => return Err(e.into()),
    }
    r.at_most("pairing_at_full_minimizer", pairing_at_minimizer(&phi, &lc)?, PAIRING_TOL);
    Ok(r)
}

pub fn detect_cmd(s: &Scenario) -> Result<Report, CliError> {
    let (lc, phi) = s.build()?;
    let d = detect(&phi, &lc, &s.tolerances)?;
    let mut r = scenario_report("detect", s);
    r.finding("direct.d_sigma", d.d_sigma_max, d.tol_d, Relation::AtMost);
    r.finding("direct.min_norm", d.min_norm, d.tol_q, Relation::Above);
    r.finding("criterion.discrepancy", d.discrepancy, d.tol_m, Relation::AtMost);
    r.finding("criterion.degenerate_points", d.degenerate_points as f64, 0.0, Relation::AtMost);
    r.at_most("verdicts_disagree", if d.agree() { 0.0 } else { 1.0 }, 0.0);
    r.echo("verdict.symplectic", d.symplectic);
    r.echo("verdict.criterion", d.criterion);
    r.echo("verdict.agree", d.agree());
    if !d.agree() {
        r.note("direct and criterion verdicts disagree");
    }
    Ok(r)
}
