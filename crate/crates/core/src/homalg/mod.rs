//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, chain complexes and their homology.

mod chain;
mod group;
mod induced;
mod matrix;
mod scalar;
mod snf;

pub use chain::{
    betti_mod_p, homology, is_quasi_iso, mapping_cone, rank_mod_p, universal_coefficients, ChainComplex,
    ChainComplexJson, ChainMap, CoeffJson, QuasiIsoReport, QuasiIsoWitness,
};
pub use group::{AbGroup, CoeffGroup};
pub use induced::{agree_on_homology, induced_free_map};
pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{determinant, integer_kernel, smith_normal_form, sparse_invariants, IntegerSolver, SmithForm, SmithInvariants};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary composite d{0}-1 . d{0} is nonzero")]
    NotAComplex(usize),
    #[error("map does not commute with the boundary in degree {0}")]
    NotAChainMap(usize),
    #[error("homology requested through degree {requested}, but the complex stops at degree {top}")]
    DegreeOutOfRange { requested: usize, top: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cannot parse group {0:?}; expected sums of Z, Z^n, Z/n")]
    ParseGroup(String),
    #[error("matrix entry does not fit the JSON integer range")]
    EntryTooLarge,
}
