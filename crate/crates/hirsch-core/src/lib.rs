//! Exact-arithmetic toolkit for the combinatorics of polytope graphs:
//! rational V/H-representations and conversions, vertex-facet incidences,
//! abstract simplicial spheres and their surgeries, dual-graph path search
//! (diameters, non-revisiting and monotone paths), the classical diameter
//! bound formulas and generators for the named Hirsch-sharp instances.

pub mod bounds;
pub mod complex;
pub mod constructions;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod paths;

pub use exact::{affine_dim, rank, solve_linear, ExactError, Rational, RMatrix, RVector};
