//! Exact polytope geometry: V- and H-representations, conversion between
//! them, vertex-facet incidence structures, graphs and dual graphs, and the
//! geometric operations (polar, wedge, one-point suspension, projective
//! transformation, facet removal).

mod graph;
mod hpolyhedron;
mod incidence;
mod transform;
mod vpolytope;

pub use graph::Graph;
pub use hpolyhedron::{Halfspace, HPolyhedron, LinearEquation};
pub use incidence::{
    dual_graph_of, facets_from_vertices, graph_of, vertices_from_halfspaces, IncidenceStructure,
    Ray,
};
pub use transform::{
    is_simple, is_simplicial, ops_geometric, polar, projective_transform, remove_facet, wedge,
};
pub use vpolytope::VPolytope;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("points span an affine space of dimension zero")]
    DegenerateInput,
    #[error("system is infeasible")]
    Infeasible,
    #[error("polyhedron is not pointed (nontrivial lineality space)")]
    NotPointed,
    #[error("facet index {0} out of range")]
    BadFacet(usize),
    #[error("vertex {0} not found")]
    BadVertex(String),
    #[error("origin is not strictly interior")]
    OriginNotInterior,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("a vertex maps to the hyperplane at infinity")]
    PointAtInfinity,
    #[error("polytope meets the pullback of the hyperplane at infinity")]
    PolytopeMeetsInfinity,
    #[error("halfspace with zero normal")]
    ZeroNormal,
    #[error("empty point list")]
    EmptyPolytope,
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("points have mixed dimensions")]
    MixedDimensions,
    #[error("label list length does not match point count")]
    LabelCountMismatch,
    #[error("incidence structure has no {0}")]
    MissingData(&'static str),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}
