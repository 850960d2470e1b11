//! Hyperbolic geometry of the right half-plane `H = { Re z > 0 }` and the
//! unit disc, with the machinery needed to study orbits of holomorphic
//! self-maps under nearest-point projection onto boundary-landing curves.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! go through [`libm`] so the core builds without a platform math library.
//!
//! Layout:
//! - [`geometry`]: points of `H` and the disc, the hyperbolic and
//!   pseudo-hyperbolic metrics, overflow-safe log-polar distances, the
//!   Cayley transform.
//! - [`curves`]: parametrized curves landing at infinity, including the
//!   piecewise spine-and-arc constructions used by the counterexamples.
//! - [`projection`]: global nearest-point projection onto a curve with
//!   tie detection and selection policies.
//! - [`dynamics`]: affine self-maps of `H`, iteration in log-polar form,
//!   classification by the angular derivative at infinity.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod curves;
pub mod dynamics;
pub mod geometry;
pub mod projection;

pub use curves::{Curve, CurveError, ExampleId, Segment, Slope};
pub use dynamics::{DynError, MapKind, MapSpec, Orbit};
pub use geometry::{Angle, Complex, DiscPoint, GeomError, HalfPlanePoint, HypDistance};
pub use projection::{
    ProjectionError, ProjectionOptions, ProjectionPolicy, ProjectionResult,
};
