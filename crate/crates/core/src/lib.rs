//! Exact-arithmetic toolkit for planar and higher-dimensional integral point
//! sets: point sets whose pairwise distances are all integers and which span
//! the full ambient dimension.
//!
//! The crate provides:
//!
//! - [`exactnum`]: arbitrary-precision rationals, quadratic irrationalities
//!   `p + r*sqrt(q)`, and certified rational intervals.
//! - [`geometry`]: coordinate-form planar sets over a shared radicand,
//!   exact integrality verification, characteristics, crosses and related
//!   predicates.
//! - [`dmatrix`]: integer distance matrices with an exact Gram-based
//!   realizability oracle (rank and positive semidefiniteness over the
//!   rationals).
//! - [`constructions`]: the fan construction with a unit distance,
//!   trimming, dilation, simplex blow-up to higher dimensions, and prime
//!   sets containing a prescribed distance.
//! - [`bounds`]: certified interval evaluation of the diameter lower-bound
//!   constants (beta, gamma_2, gamma) and the segment-length estimates.
//! - [`packing`]: a deterministic multi-start max-min point packing solver
//!   for the unit square, used as an empirical cross-check of the packing
//!   coefficient bounds.
//! - [`search`]: exhaustive desk-scale oracles — minimum-diameter search,
//!   unit-distance 4-point enumeration, structural classification, and
//!   bounded maximality checking.
//!
//! Heavy enumeration and the packing restarts are data-parallel via rayon
//! when the default `parallel` feature is enabled; disabling it yields a
//! fully sequential build with identical results.

pub mod bounds;
pub mod constructions;
pub mod dmatrix;
pub mod exactnum;
pub mod geometry;
pub mod packing;
pub mod provenance;
pub mod search;

pub use dmatrix::{DistanceMatrix, RealizabilityVerdict};
pub use exactnum::{QuadraticNumber, Rational, RationalInterval};
pub use geometry::{IntegralityReport, PlanarPoint, PlanarPointSet, Segment};
