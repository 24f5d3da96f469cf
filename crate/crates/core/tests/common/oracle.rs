//! Brute-force minimizer over t ∈ R⁴: dense sampling of a box that is grown
//! until the best sample is interior, then compass search. It uses only
//! objective evaluations.

use quatspin::minimization::{Component, FiberProblem};

const SAMPLES: usize = 13;

fn dense_best(f: &impl Fn([f64; 4]) -> f64, radius: f64) -> ([f64; 4], bool) {
    let step = 2.0 * radius / (SAMPLES - 1) as f64;
    let mut best = ([0.0; 4], f64::INFINITY, false);
    for a in 0..SAMPLES {
        for b in 0..SAMPLES {
            for c in 0..SAMPLES {
                for d in 0..SAMPLES {
                    let ix = [a, b, c, d];
                    let t = ix.map(|i| -radius + i as f64 * step);
                    let v = f(t);
                    if v < best.1 {
                        let edge = ix.iter().any(|&i| i == 0 || i == SAMPLES - 1);
                        best = (t, v, edge);
                    }
                }
            }
        }
    }
    (best.0, best.2)
}

fn compass(f: &impl Fn([f64; 4]) -> f64, mut t: [f64; 4], mut step: f64) -> [f64; 4] {
    let mut value = f(t);
    while step > 1e-12 {
        let mut moved = false;
        for axis in 0..4 {
            for sign in [1.0, -1.0] {
                let mut trial = t;
                trial[axis] += sign * step;
                let v = f(trial);
                if v < value {
                    t = trial;
                    value = v;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    t
}

pub fn brute_force(problem: &FiberProblem, component: Component) -> [f64; 4] {
    let f = |t: [f64; 4]| problem.objective(component, t);
    let mut radius = 1.0;
    loop {
        let (best, on_edge) = dense_best(&f, radius);
        if !on_edge {
            return compass(&f, best, 2.0 * radius / (SAMPLES - 1) as f64);
        }
        radius *= 2.0;
    }
}
