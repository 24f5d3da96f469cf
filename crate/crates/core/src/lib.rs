pub mod cli;
pub mod fiber;
pub mod geometry;
pub mod minimization;
pub mod report;
pub mod scenario;
pub mod spinc;
