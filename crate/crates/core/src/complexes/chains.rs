//! Oriented simplicial chains of a complex.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::complex::{Simplex, SimplicialComplex};
use crate::homalg::{AbGroup, ChainComplex, ChainMap, SparseMatrix};

/// Generators of the simplicial chains in each degree: all simplices, with
/// the basepoint vertex removed in degree 0 for reduced chains.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    reduced: bool,
    generators: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl ChainBasis {
    pub fn new(k: &SimplicialComplex, reduced: bool) -> Self {
        let generators: Vec<Vec<Simplex>> = (0..=k.dim())
            .map(|d| {
                k.simplices(d)
                    .iter()
                    .filter(|s| !(reduced && d == 0 && s.vertices()[0] == k.basepoint()))
                    .cloned()
                    .collect()
            })
            .collect();
        let index = generators
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { reduced, generators, index }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn generators(&self, d: usize) -> &[Simplex] {
        self.generators.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn rank(&self, d: usize) -> usize {
        self.generators(d).len()
    }

    /// `None` both for non-simplices and for the killed basepoint.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    fn boundary(&self, d: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.rank(d - 1), 0);
        for s in self.generators(d) {
            let col = s
                .faces()
                .enumerate()
                .filter_map(|(i, f)| self.index_of(&f).map(|r| (r, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))))
                .collect();
            m.push_column(col);
        }
        m
    }
}

/// Integral chains `C_0 .. C_{dim K + 1}` (the last group zero), so homology
/// is available through `dim K`.
pub fn simplicial_chains(k: &SimplicialComplex, reduced: bool) -> ChainComplex {
    let basis = ChainBasis::new(k, reduced);
    let top = k.dim() + 1;
    let ranks: Vec<usize> = (0..=top).map(|d| basis.rank(d)).collect();
    let boundaries = (1..=top).map(|d| basis.boundary(d)).collect();
    ChainComplex::new(ranks, boundaries, AbGroup::integers()).expect("simplicial boundary squares to zero")
}

/// Chains of `K` relative to its basepoint.
pub fn reduced_chains(k: &SimplicialComplex) -> ChainComplex {
    simplicial_chains(k, true)
}

/// The chain map of an inclusion `U <= V` through degree `top`, between
/// the chain complexes of both padded to `top`.
pub fn inclusion_chain_map(u: &SimplicialComplex, v: &SimplicialComplex, reduced: bool, top: usize) -> ChainMap {
    let (bu, bv) = (ChainBasis::new(u, reduced), ChainBasis::new(v, reduced));
    let components = (0..=top)
        .map(|d| {
            let mut m = SparseMatrix::zeros(bv.rank(d), 0);
            for s in bu.generators(d) {
                let r = bv.index_of(s).expect("U is a subcomplex of V");
                m.push_column(vec![(r, BigInt::from(1))]);
            }
            m
        })
        .collect();
    ChainMap::from_components(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_complex;

    #[test]
    fn reduced_ranks() {
        let p = reduced_chains(&SimplicialComplex::point());
        assert_eq!(p.ranks(), &[0, 0]);
        let c = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 0).unwrap();
        assert_eq!(reduced_chains(&c).ranks(), &[2, 3, 0]);
        let s2 = build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 0).unwrap();
        let ch = reduced_chains(&s2);
        assert_eq!(ch.ranks(), &[3, 6, 4, 0]);
        assert_eq!(ch.integral_homology(2).unwrap(), vec![AbGroup::zero(), AbGroup::zero(), AbGroup::integers()]);
        let un = simplicial_chains(&s2, false).integral_homology(2).unwrap();
        assert_eq!(un, vec![AbGroup::integers(), AbGroup::zero(), AbGroup::integers()]);
    }

    #[test]
    fn inclusion_of_arc_into_circle() {
        let c = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 0).unwrap();
        let arc = c.subcomplex([Simplex::new(vec![0, 1]).unwrap()]).unwrap();
        let (ca, cc) = (reduced_chains(&arc).padded(2), reduced_chains(&c));
        let f = inclusion_chain_map(&arc, &c, true, 2);
        assert!(f.validate(&ca, &cc).is_ok());
    }
}
