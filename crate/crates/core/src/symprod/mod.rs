//! Labelled configurations in finite pointed sets, and symmetric powers of
//! simplicial sets with their stabilization maps.

mod config;
mod power;

pub use config::{
    add_elements, check_injectivity, group_elements, identity_element, negate_element, normalize, pushforward,
    sym_finite, Configuration, Element, InjectivityReport, PointedMap, PointedSet, Sample, SymFinite,
    SymFiniteReport, SymGroup,
};
pub use power::{stabilization_map, symmetric_power, symmetric_power_size, SymmetricPower};

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::homalg::CoeffGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("the support must contain the basepoint")]
    MissingBasepoint,
    #[error("point {point} out of range for a carrier of {size} points")]
    PointOutOfRange { point: usize, size: usize },
    #[error("label given for point {0}, which is not in the support")]
    LabelOffSupport(usize),
    #[error("group element has {got} coordinates, expected {expected}")]
    BadElement { expected: usize, got: usize },
    #[error("{0} is infinite; exhaustive enumeration needs a finite group")]
    InfiniteGroup(CoeffGroup),
    #[error("map does not send the basepoint to the basepoint")]
    NotPointed,
    #[error("configuration does not live on the map's source")]
    CarrierMismatch,
    #[error("symmetric powers need d >= 1")]
    ZeroPower,
    #[error("cannot stabilize from SP^{from} to SP^{to}")]
    PowerMismatch { from: usize, to: usize },
    #[error("dimension bound {requested} exceeds the stored bound {available}")]
    BoundTooLarge { requested: usize, available: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
