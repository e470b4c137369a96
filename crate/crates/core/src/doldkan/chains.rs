//! Moore and normalized chain complexes.

use num_bigint::BigInt;

use super::{DoldKanError, ModuleMap, SimplicialModule};
use crate::complexes::{SimplicialMap, SimplicialSet};
use crate::homalg::{homology, integer_kernel, AbGroup, ChainComplex, ChainMap, IntMatrix, IntegerSolver, SparseMatrix};

fn require_bound(max_degree: usize, bound: usize) -> Result<(), DoldKanError> {
    if max_degree + 1 > bound {
        return Err(DoldKanError::BoundTooSmall { max_degree, required: max_degree + 1, bound });
    }
    Ok(())
}

/// The Moore complex together with its basis: column `j` of `basis[k]` is
/// the `j`-th basis element of `N_k` in generator coordinates.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub chains: ChainComplex,
    pub basis: Vec<IntMatrix>,
}

impl MooreComplex {
    /// `N_k = ker d_1 & ... & ker d_k` with differential `d_0`, through
    /// degree `max_degree + 1`.
    pub fn new(s: &SimplicialModule, max_degree: usize) -> Result<Self, DoldKanError> {
        require_bound(max_degree, s.bound())?;
        let top = max_degree + 1;
        let mut basis = vec![IntMatrix::identity(s.rank(0))];
        for k in 1..=top {
            let faces: Vec<IntMatrix> = (1..=k).map(|i| s.face_matrix(k, i).to_dense()).collect();
            basis.push(integer_kernel(&IntMatrix::stack(&faces, s.rank(k))));
        }
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let d0 = s.face_matrix(k, 0).to_dense();
            let solver = IntegerSolver::new(&basis[k - 1]);
            let mut m = SparseMatrix::zeros(basis[k - 1].cols(), 0);
            for j in 0..basis[k].cols() {
                let image = d0.mul_vec(&basis[k].column(j));
                let coords = solver.solve(&image).expect("d_0 maps the Moore complex into itself");
                m.push_column(coords.into_iter().enumerate().collect());
            }
            boundaries.push(m);
        }
        let ranks = basis.iter().map(IntMatrix::cols).collect();
        let chains = ChainComplex::new(ranks, boundaries, s.coeff().clone())?;
        Ok(Self { chains, basis })
    }

    /// Restriction of a module map to Moore complexes.
    pub fn chain_map(&self, f: &ModuleMap, target: &MooreComplex) -> Result<ChainMap, DoldKanError> {
        let top = self.chains.top().min(target.chains.top());
        let mut components = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let fk = f.component(k).to_dense();
            let solver = IntegerSolver::new(&target.basis[k]);
            let mut m = SparseMatrix::zeros(target.basis[k].cols(), 0);
            for j in 0..self.basis[k].cols() {
                let image = fk.mul_vec(&self.basis[k].column(j));
                let coords = solver
                    .solve(&image)
                    .ok_or_else(|| DoldKanError::NotAModuleMap("image leaves the Moore complex".into()))?;
                m.push_column(coords.into_iter().enumerate().collect());
            }
            components.push(m);
        }
        let (src, tgt) = (self.chains.clone().truncated(top), target.chains.clone().truncated(top));
        Ok(ChainMap::new(components, &src, &tgt)?)
    }
}

pub fn moore_complex(s: &SimplicialModule, max_degree: usize) -> Result<ChainComplex, DoldKanError> {
    Ok(MooreComplex::new(s, max_degree)?.chains)
}

/// `pi_i` of the module for `i <= max_degree`, as Moore homology.
pub fn homotopy_groups(s: &SimplicialModule, max_degree: usize) -> Result<Vec<AbGroup>, DoldKanError> {
    let n = moore_complex(s, max_degree)?;
    Ok(homology(&n, s.coeff(), max_degree)?)
}

/// Generators of the normalized chains of `x`: nondegenerate simplices,
/// without the basepoint when reduced.
fn normalized_generators(x: &SimplicialSet, reduced: bool, k: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut gens = Vec::new();
    let mut pos = vec![None; x.count(k)];
    for s in x.nondegenerate(k) {
        if reduced && k == 0 && s == x.basepoint() {
            continue;
        }
        pos[s] = Some(gens.len());
        gens.push(s);
    }
    (gens, pos)
}

/// Normalized integral chains of a simplicial set through degree `top`:
/// nondegenerate simplices with the alternating face sum, degenerate faces
/// dropped.
pub fn set_chains(x: &SimplicialSet, reduced: bool, top: usize) -> Result<ChainComplex, DoldKanError> {
    if top > x.bound() {
        return Err(DoldKanError::BoundTooSmall { max_degree: top.saturating_sub(1), required: top, bound: x.bound() });
    }
    let levels: Vec<_> = (0..=top).map(|k| normalized_generators(x, reduced, k)).collect();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut m = SparseMatrix::zeros(levels[k - 1].0.len(), 0);
        for &s in &levels[k].0 {
            let col = (0..=k)
                .filter_map(|i| {
                    levels[k - 1].1[x.face(k, s, i)].map(|r| (r, BigInt::from(if i % 2 == 0 { 1 } else { -1 })))
                })
                .collect();
            m.push_column(col);
        }
        boundaries.push(m);
    }
    let ranks = levels.iter().map(|l| l.0.len()).collect();
    Ok(ChainComplex::new(ranks, boundaries, AbGroup::integers())?)
}

/// Normalized chains of the module through degree `max_degree + 1`, with
/// its coefficients.
pub fn normalized_chains(s: &SimplicialModule, max_degree: usize) -> Result<ChainComplex, DoldKanError> {
    require_bound(max_degree, s.bound())?;
    Ok(set_chains(s.set(), true, max_degree + 1)?.with_coeff(s.coeff().clone()))
}

/// The chain map of a simplicial map on normalized chains: a nondegenerate
/// simplex goes to its image, or to zero when the image is degenerate or
/// (reduced) the basepoint.
pub fn normalized_chain_map(
    f: &SimplicialMap,
    x: &SimplicialSet,
    y: &SimplicialSet,
    reduced: bool,
    top: usize,
) -> Result<ChainMap, DoldKanError> {
    let (cx, cy) = (set_chains(x, reduced, top)?, set_chains(y, reduced, top)?);
    let mut components = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (gx, _) = normalized_generators(x, reduced, k);
        let (_, py) = normalized_generators(y, reduced, k);
        let mut m = SparseMatrix::zeros(cy.rank(k), 0);
        for s in gx {
            m.push_column(py[f.apply(k, s)].map(|r| (r, BigInt::from(1))).into_iter().collect());
        }
        components.push(m);
    }
    Ok(ChainMap::new(components, &cx, &cy)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{library, reduced_chains, to_simplicial_set, SimplicialComplex};
    use crate::doldkan::free_module;

    fn z() -> AbGroup {
        AbGroup::integers()
    }

    #[test]
    fn zero_module() {
        let p = free_module(&to_simplicial_set(&SimplicialComplex::point(), 3), &z());
        assert_eq!(moore_complex(&p, 2).unwrap().ranks(), &[0, 0, 0, 0]);
        assert_eq!(normalized_chains(&p, 2).unwrap().ranks(), &[0, 0, 0, 0]);
        assert_eq!(homotopy_groups(&p, 2).unwrap(), vec![AbGroup::zero(); 3]);
    }

    #[test]
    fn two_points() {
        let a = AbGroup::cyclic(3);
        let s = free_module(&to_simplicial_set(&library::s0(), 3), &a);
        let n = moore_complex(&s, 2).unwrap();
        assert_eq!(n.ranks(), &[1, 0, 0, 0]);
        assert_eq!(homotopy_groups(&s, 2).unwrap(), vec![a, AbGroup::zero(), AbGroup::zero()]);
    }

    #[test]
    fn circle_moore_homology() {
        let s = free_module(&to_simplicial_set(&library::circle3(), 3), &z());
        assert_eq!(homotopy_groups(&s, 1).unwrap(), vec![AbGroup::zero(), z()]);
        let normalized = normalized_chains(&s, 1).unwrap();
        let simplicial = reduced_chains(&library::circle3());
        assert_eq!(normalized.ranks(), simplicial.ranks());
        assert_eq!(normalized.boundaries(), simplicial.boundaries());
    }

    #[test]
    fn torus_normalized() {
        let s = free_module(&to_simplicial_set(&library::torus9(), 3), &z());
        let h = normalized_chains(&s, 2).unwrap().homology(2).unwrap();
        assert_eq!(h, vec![AbGroup::zero(), AbGroup::free(2), z()]);
    }

    #[test]
    fn bound_is_enforced() {
        let s = free_module(&to_simplicial_set(&library::circle3(), 2), &z());
        assert!(matches!(moore_complex(&s, 2), Err(DoldKanError::BoundTooSmall { .. })));
    }
}
