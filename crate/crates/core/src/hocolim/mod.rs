//! Finite diagram categories and their homotopy colimits: disk-system
//! posets, contractibility checks on cover subcategories, the bar-complex
//! model of the homotopy colimit, and end-to-end comparisons.

mod category;
mod checks;
mod diagram;
mod disks;
mod replacement;
mod verify;

pub use category::{undercategory, FiniteCategory, Functor, Morphism};
pub use checks::{
    certify_contractible, compare_chain_vs_space, finality_check, kan_extension_check, restriction_invariance, svk_check,
    ChainVsSpaceReport, FinalityReport, KanExtensionReport, ObjectVerdict, RestrictionLevel, RestrictionReport, SimplexVerdict, SvkReport,
    Verdict,
};
pub use diagram::{ChainDiagram, SpaceDiagram};
pub use disks::{disk_poset, disk_poset_with, DiskFamily, DiskPoset, DiskSystem, FamilyChoice, DEFAULT_ENUMERATION_BUDGET};
pub use replacement::{chains_diagram, h0_diagram, simplicial_replacement, simplicial_replacement_unnormalized, space_hocolim_chains};
pub use verify::{dold_thom_verify, Agreement, CoverDump, DoldThomReport, DumpObject, DumpVerdict};

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::doldkan::DoldKanError;
use crate::homalg::HomalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HocolimError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error(transparent)]
    DoldKan(#[from] DoldKanError),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),
    #[error("the complex must be connected")]
    Disconnected,
    #[error("value {0} is not a disjoint union of collapsible pieces")]
    NotPiecewiseCollapsible(usize),
    #[error("at least one component is required")]
    NoComponents,
    #[error("enumeration exceeded its budget of {0} subcomplexes")]
    BudgetExceeded(usize),
}
