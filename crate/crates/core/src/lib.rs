//! Gaussian tail integral, Mill's ratio bounds and inverse Q-function
//! approximations, with the numerical machinery to check every inequality
//! on dense grids.
//!
//! * [`gauss`]: reference `M(x)`, `Q(x)`, Mill's ratio and the exact inverse Q.
//! * [`bounds`]: the bound catalog, comparisons, empirical crossovers and
//!   the integral identity check.
//! * [`inverse`]: closed-form inverse estimates, binary entropy, certified
//!   inverse bounds and the conjecture scan.
//! * [`report`] and [`verify`]: tables, reports and the invariant suite
//!   used by the `mills` binary.

pub mod bounds;
pub mod error;
pub mod gauss;
pub mod grid;
pub mod inverse;
pub mod quadrature;
pub mod report;
pub mod verify;

pub use bounds::{
    asymptotic_ratio, bound_catalog, compare_at, crossover_constant, empirical_crossover,
    evaluate_bound, identity_residual, BoundId, BoundSpec, ComparisonRow, Side, ValidityInterval,
};
pub use error::{Error, Result};
pub use gauss::{
    inverse_q, mills_ratio, q_value, tail_integral, Abscissa, TailProbability, TailValue,
};
pub use inverse::{
    binary_entropy, conjecture_scan, estimate_low1, estimate_low2, estimate_upp, invert_bound,
    ConjectureReport, InverseRow,
};
