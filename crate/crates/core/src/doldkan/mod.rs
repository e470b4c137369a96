//! Free simplicial modules `A[X]/A[*]` on pointed simplicial sets, their
//! Moore and normalized chain complexes, and induced maps.
//!
//! Every complex is built over the integers (the modules are levelwise
//! free) and read with coefficients in `A` by universal coefficients.

mod chains;

pub use chains::{
    homotopy_groups, moore_complex, normalized_chain_map, normalized_chains, set_chains, MooreComplex,
};

use num_bigint::BigInt;
use thiserror::Error;

use crate::complexes::{ComplexError, SimplicialMap, SimplicialSet};
use crate::homalg::{CoeffGroup, HomalgError, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoldKanError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error("degree {max_degree} needs the simplicial set through dimension {required}, but it stops at {bound}")]
    BoundTooSmall { max_degree: usize, required: usize, bound: usize },
    #[error("coefficient groups differ: {0} vs {1}")]
    CoefficientMismatch(CoeffGroup, CoeffGroup),
    #[error("module map does not commute with {0}")]
    NotAModuleMap(String),
}

const KILLED: u32 = u32::MAX;

/// The levelwise free `A`-module on the simplices of `X`, modulo the
/// degeneracies of the basepoint.
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    set: SimplicialSet,
    coeff: CoeffGroup,
    /// `generators[k]`: simplex indices of the surviving generators.
    generators: Vec<Vec<usize>>,
    /// `position[k][x]`: generator index of simplex `x`, or `KILLED`.
    position: Vec<Vec<u32>>,
}

/// Generators in ascending simplex order, the basepoint's degeneracies
/// removed.
pub fn free_module(x: &SimplicialSet, a: &CoeffGroup) -> SimplicialModule {
    let mut generators = Vec::new();
    let mut position = Vec::new();
    for k in 0..=x.bound() {
        let base = x.base_simplex(k);
        let mut pos = vec![KILLED; x.count(k)];
        let mut gens = Vec::with_capacity(x.count(k).saturating_sub(1));
        for s in (0..x.count(k)).filter(|&s| s != base) {
            pos[s] = gens.len() as u32;
            gens.push(s);
        }
        generators.push(gens);
        position.push(pos);
    }
    SimplicialModule { set: x.clone(), coeff: a.clone(), generators, position }
}

impl SimplicialModule {
    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn bound(&self) -> usize {
        self.set.bound()
    }

    /// Number of free generators in degree `k`.
    pub fn rank(&self, k: usize) -> usize {
        self.generators[k].len()
    }

    pub fn generators(&self, k: usize) -> &[usize] {
        &self.generators[k]
    }

    /// Generator index of a simplex; `None` for the killed basepoint.
    pub fn generator_of(&self, k: usize, simplex: usize) -> Option<usize> {
        let p = self.position[k][simplex];
        (p != KILLED).then_some(p as usize)
    }

    fn unit_column(&self, k: usize, simplex: usize) -> Vec<(usize, BigInt)> {
        self.generator_of(k, simplex).map(|r| (r, BigInt::from(1))).into_iter().collect()
    }

    /// `d_i : M_k -> M_{k-1}` on generators.
    pub fn face_matrix(&self, k: usize, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.rank(k - 1), 0);
        for &x in &self.generators[k] {
            m.push_column(self.unit_column(k - 1, self.set.face(k, x, i)));
        }
        m
    }

    /// `s_i : M_k -> M_{k+1}` on generators.
    pub fn degeneracy_matrix(&self, k: usize, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.rank(k + 1), 0);
        for &x in &self.generators[k] {
            m.push_column(self.unit_column(k + 1, self.set.degeneracy(k, x, i)));
        }
        m
    }

    /// The killed generators are closed under the structure maps, so the
    /// linear identities follow from those of the set, which are checked
    /// again here.
    pub fn check_identities(&self) -> Result<(), DoldKanError> {
        self.set.check_identities()?;
        for k in 0..=self.bound() {
            let base = self.set.base_simplex(k);
            if self.generator_of(k, base).is_some() {
                return Err(DoldKanError::NotAModuleMap("basepoint generator survives".into()));
            }
            if k > 0 && (0..=k).any(|i| self.set.face(k, base, i) != self.set.base_simplex(k - 1)) {
                return Err(DoldKanError::NotAModuleMap("faces of the basepoint".into()));
            }
        }
        Ok(())
    }
}

/// An `A`-linear map on generators, one integer matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    components: Vec<SparseMatrix>,
}

impl ModuleMap {
    /// Checks shapes and commutation with every face and degeneracy.
    pub fn new(components: Vec<SparseMatrix>, source: &SimplicialModule, target: &SimplicialModule) -> Result<Self, DoldKanError> {
        if source.coeff != target.coeff {
            return Err(DoldKanError::CoefficientMismatch(source.coeff.clone(), target.coeff.clone()));
        }
        if components.len() != source.bound() + 1 || target.bound() < source.bound() {
            return Err(DoldKanError::NotAModuleMap("number of degrees".into()));
        }
        for (k, m) in components.iter().enumerate() {
            if m.rows() != target.rank(k) || m.cols() != source.rank(k) {
                return Err(DoldKanError::NotAModuleMap(format!("shape in degree {k}")));
            }
        }
        for k in 0..=source.bound() {
            for i in 0..=k {
                if k > 0 && target.face_matrix(k, i).mul(&components[k]) != components[k - 1].mul(&source.face_matrix(k, i)) {
                    return Err(DoldKanError::NotAModuleMap(format!("d_{i} in degree {k}")));
                }
                if k < source.bound()
                    && target.degeneracy_matrix(k, i).mul(&components[k]) != components[k + 1].mul(&source.degeneracy_matrix(k, i))
                {
                    return Err(DoldKanError::NotAModuleMap(format!("s_{i} in degree {k}")));
                }
            }
        }
        Ok(Self { components })
    }

    pub fn identity(s: &SimplicialModule) -> Self {
        Self {
            components: (0..=s.bound())
                .map(|k| {
                    let mut m = SparseMatrix::zeros(s.rank(k), 0);
                    for g in 0..s.rank(k) {
                        m.push_column(vec![(g, BigInt::from(1))]);
                    }
                    m
                })
                .collect(),
        }
    }

    pub fn component(&self, k: usize) -> &SparseMatrix {
        &self.components[k]
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparseMatrix::is_zero)
    }

    /// `after . self`
    pub fn then(&self, after: &ModuleMap) -> ModuleMap {
        Self { components: self.components.iter().zip(&after.components).map(|(f, g)| g.mul(f)).collect() }
    }
}

/// The linear extension of a pointed simplicial map.
pub fn induced_map(
    f: &SimplicialMap,
    source: &SimplicialModule,
    target: &SimplicialModule,
) -> Result<ModuleMap, DoldKanError> {
    // revalidates f against the two underlying sets
    let f = SimplicialMap::new(f.levels().to_vec(), source.set(), target.set())?;
    let components = (0..=source.bound())
        .map(|k| {
            let mut m = SparseMatrix::zeros(target.rank(k), 0);
            for &x in source.generators(k) {
                m.push_column(target.unit_column(k, f.apply(k, x)));
            }
            m
        })
        .collect();
    ModuleMap::new(components, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{library, to_simplicial_set};
    use crate::homalg::AbGroup;

    #[test]
    fn generator_counts() {
        let p = free_module(&to_simplicial_set(&library::point(), 3), &AbGroup::integers());
        assert!((0..=3).all(|k| p.rank(k) == 0));
        let s0 = free_module(&to_simplicial_set(&library::s0(), 2), &AbGroup::cyclic(2));
        assert_eq!(s0.rank(0), 1);
        let c = free_module(&to_simplicial_set(&library::circle3(), 2), &AbGroup::integers());
        assert_eq!((c.rank(0), c.rank(1)), (2, 3 + 2));
        assert_eq!(c.set().nondegenerate_counts()[1], 3);
        c.check_identities().unwrap();
    }

    #[test]
    fn identity_and_constant_maps() {
        let x = to_simplicial_set(&library::circle3(), 3);
        let m = free_module(&x, &AbGroup::integers());
        assert_eq!(induced_map(&SimplicialMap::identity(&x), &m, &m).unwrap(), ModuleMap::identity(&m));
        assert!(induced_map(&SimplicialMap::constant(&x, &x), &m, &m).unwrap().is_zero());
    }

    #[test]
    fn coefficient_mismatch() {
        let x = to_simplicial_set(&library::circle3(), 2);
        let (a, b) = (free_module(&x, &AbGroup::integers()), free_module(&x, &AbGroup::cyclic(2)));
        assert!(matches!(
            induced_map(&SimplicialMap::identity(&x), &a, &b),
            Err(DoldKanError::CoefficientMismatch(_, _))
        ));
    }
}
