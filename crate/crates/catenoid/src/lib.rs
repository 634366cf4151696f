//! Numerical library for spherical minimal catenoids in hyperbolic 3-space.
//!
//! A spherical catenoid is the minimal surface of revolution obtained by
//! rotating a catenary about a geodesic axis in the Poincaré ball. This
//! crate computes the objects that control the family `{Pi_lambda}` of such
//! catenoids, indexed by the neck distance `lambda`:
//!
//! - coordinate charts between the warped-product half-disk and the
//!   Poincaré disk, plus geodesic-disk areas ([`hgeom`]);
//! - quadrature for integrands with inverse-square-root endpoint
//!   singularities and exponentially decaying tails, bracketed root finding
//!   and golden-section maximization ([`quad`]);
//! - the generating catenaries: profile curves, tangent data, arc-length
//!   graded sampling, pairwise intersections and the family envelope
//!   ([`catenary`]);
//! - the boundary-separation function `d0` with its derivative and critical
//!   constants, and the two-catenoid solve for a prescribed asymptotic
//!   boundary ([`separation`]);
//! - band-versus-caps area comparison: the functions `f`, `g`, the constant
//!   `K` and the least-area threshold `Lambda0` ([`area`]).
//!
//! All operations are pure functions of their inputs and are safe to call
//! concurrently; given the same configuration they return bit-identical
//! results.
//!
//! ```
//! use catenoid::separation::{critical_constants, d0};
//! use catenoid::QuadConfig;
//!
//! let cfg = QuadConfig::default();
//! let c = critical_constants(&cfg)?;
//! // The boundary separation peaks just below 1/2 ...
//! assert!((c.d0_max - 0.501143).abs() < 1e-5);
//! // ... and no circle pair farther apart than 2 * d0_max bounds a catenoid.
//! assert!(d0(2.0, &cfg)? < c.d0_max);
//! # Ok::<(), catenoid::Error>(())
//! ```

// Reference values are kept at their full oracle precision, and domain
// guards use the NaN-rejecting `!(x > 0.0)` comparison form.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod area;
pub mod catenary;
pub mod error;
pub mod hgeom;
pub mod quad;
pub mod separation;

pub use error::{Error, Result};
pub use hgeom::{BallPoint, CirclePairSeparation, HalfDiskPoint};
pub use quad::{QuadConfig, QuadResult, TailPolicy};
