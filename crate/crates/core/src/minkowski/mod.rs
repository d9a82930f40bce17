//! Equidistant points and re-verification under p-norms.
//!
//! [`equidistant_solve`] finds a point at equal p-norm distance from the
//! three vertices. [`verify_under_norm`] then reruns every clause: affine
//! ones exactly on a rational snap of the inputs, metric ones in floating
//! point under the chosen norm.

mod solver;
mod verify;

pub use solver::{distances, equidistant_solve, residual, EquidistantProblem, SearchSpace, Solution};
pub use verify::{verify_under_norm, verify_under_norm_with, MinkowskiReport};

/// Default bound on `(d₀ − d₁)² + (d₁ − d₂)²` for an accepted solution.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Relative tolerance for metric clauses.
pub const METRIC_TOL: f64 = 1e-8;

/// Largest denominator used when snapping float coordinates to rationals.
pub const SNAP_MAX_DENOMINATOR: u64 = 1_000_000;
