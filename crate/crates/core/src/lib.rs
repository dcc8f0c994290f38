//! Finite-dimensional renorming constructions and the numerical machinery to
//! audit them.
//!
//! Vectors live in `R^N` with 1-based coordinates and are read as finitely
//! supported sequences. Norms are black-box evaluators ([`NormOracle`]);
//! everything else (gauges, dual bounds, rotundity probes, slice diameters)
//! is built from evaluations and membership tests only.
//!
//! * [`slice`]: rotund norms obtained by modifying the ball along slices
//!   attached to a biorthogonal tuple, on truncated `ℓ2` model spaces.
//! * [`smooth`]: a smooth norm on truncated `c0` assembled from a polyhedral
//!   recursion, smooth finite-max approximations and a bump-function gauge.
//! * [`oracle`]: brute-force reference computations used in tests.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ascent;
pub mod config;
pub mod coord;
pub mod error;
pub mod gauge;
pub mod norm;
pub mod numeric;
pub mod oracle;
pub mod probe;
pub mod sampling;
pub mod slice;
pub mod smooth;

pub use config::ToleranceConfig;
pub use coord::{CoordFunctional, CoordVector};
pub use error::{Error, Result};
pub use gauge::{gauge_from_membership, norm_ball_gauge, GaugeBracket};
pub use norm::{
    finite_max_combine, q_functional, quadratic_mean_combine, NormOracle, Reference,
};
pub use probe::{
    dual_norm_bounds, midpoint_sup_probe, slice_diameter_estimate, DualBounds, MidpointEstimate,
    ProbeConstraint,
};
