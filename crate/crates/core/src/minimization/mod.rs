//! Minimization over the admissible connections, one component of the
//! splitting of `B^Aφ` at a time, plus the line/ratio analysis and
//! symplectic detection built on it.

pub mod detect;
pub mod field;
pub mod line;
pub mod problem;

use std::fmt;

use thiserror::Error;

pub use detect::{detect, DetectionReport, DetectionTolerances};
pub use field::{
    alt_symmetry_at, alt_symmetry_check, fiber_problems, max_pairing, minimize_component, minimize_problems,
    pairing_at_minimizer, Minimizer,
};
pub use line::{collinearity_report, LinePoint, LineReport, COINCIDE_ALL_TOL, COINCIDE_TOL};
pub use problem::{project, FiberMinimum, FiberProblem, MAX_CONDITION};

/// Which part of `B = Alt B + Sym₀ B + g⊗¼D` is minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Full,
    Alt,
    Sym0,
    Dirac,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::Full, Component::Alt, Component::Sym0, Component::Dirac];

    pub fn name(self) -> &'static str {
        match self {
            Component::Full => "full",
            Component::Alt => "alt",
            Component::Sym0 => "sym0",
            Component::Dirac => "dirac",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinimizationError {
    #[error("spinor field vanishes (to working precision) everywhere; no minimizer is well posed")]
    DegenerateEverywhere,
    #[error("minimizers coincide at all {points} nondegenerate points; no line is defined")]
    Collapsed { points: usize },
    #[error("need at least three distinct components, got {0}")]
    TooFewComponents(usize),
    #[error("minimizers live on different grids")]
    GridMismatch,
}
