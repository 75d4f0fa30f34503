//! Pure simplicial complexes and clique complexes given by their facets.
//!
//! * [`complex`]: facet lists, facet-incidence matrices, vertex data and
//!   facet-adjacency matrices, with conversions and realizability tests.
//! * [`clique`]: clique-complex tests, triangle intersections, intersection
//!   data, reconstruction from `Q`, and non-isomorphic pairs that share
//!   intersection data up to a given degree.
//! * [`counting`]: exact counts and bounds.
//! * [`enumeration`]: brute-force generation used as an oracle for the rest.

pub mod clique;
pub mod complex;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod json;

pub use complex::{AdjacencyMatrix, IncidenceMatrix, SimplicialComplex, Verdict, VertexData};
pub use error::{Error, Result};
