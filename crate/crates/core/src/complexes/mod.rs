//! Simplicial complexes and simplicial sets: construction, components,
//! collapses, subdivision, products and group quotients.

mod chains;
mod collapse;
mod complex;
pub mod library;
mod sset;

pub use chains::{inclusion_chain_map, reduced_chains, simplicial_chains, ChainBasis};
pub use collapse::{is_collapsible, CollapseOutcome, ElementaryCollapse};
pub use complex::{
    barycentric_subdivision, build_complex, connected_components, ComplexFile, ComponentPartition, Simplex,
    SimplicialComplex,
};
pub use sset::{
    product, quotient_by_group, standard_simplex, to_simplicial_set, Decomposition, SimplicialAutomorphism,
    SimplicialMap, SimplicialSet, SimplicialTables,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no simplices given")]
    Empty,
    #[error("a simplex must have at least one vertex")]
    EmptySimplex,
    #[error("vertex {0} repeated within a simplex")]
    DuplicateVertex(usize),
    #[error("vertex indices must be exactly 0..{vertex_count}; vertex {missing} is unused")]
    NonDenseVertices { missing: usize, vertex_count: usize },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("basepoint {basepoint} is not a vertex (vertex count {vertex_count})")]
    BasepointOutOfRange { basepoint: usize, vertex_count: usize },
    #[error("{0} is not a simplex of the ambient complex")]
    NotASubcomplex(String),
    #[error("malformed complex file: {0}")]
    Format(String),
    #[error("malformed simplicial tables: {0}")]
    Tables(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("dimension bound {requested} exceeds the stored bound {available}")]
    BoundTooLarge { requested: usize, available: usize },
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("map does not preserve the basepoint")]
    NotPointed,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
}
