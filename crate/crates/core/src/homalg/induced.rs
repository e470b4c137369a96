//! Maps induced on homology by chain maps.

use num_bigint::BigInt;
use num_traits::Zero;

use super::chain::{ChainComplex, ChainMap};
use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::{integer_kernel, smith_normal_form, IntegerSolver};
use super::HomalgError;

/// Coordinates on `H_i(C)` modulo torsion.
struct FreeHomology {
    /// Cycle basis, columns in chain coordinates.
    cycles: IntMatrix,
    cycle_solver: IntegerSolver,
    /// Rows of `u` past `rank` project cycle coordinates onto free classes.
    u: IntMatrix,
    rank: usize,
    /// Representative cycles of the free classes, in chain coordinates.
    representatives: Vec<Vec<BigInt>>,
}

impl FreeHomology {
    fn new(c: &ChainComplex, i: usize) -> Result<Self, HomalgError> {
        if i + 1 > c.top() {
            return Err(HomalgError::DegreeOutOfRange { requested: i, top: c.top() });
        }
        let n = c.rank(i);
        let d_i = match c.boundary(i) {
            Some(d) => d.to_dense(),
            None => IntMatrix::zeros(0, n),
        };
        let cycles = integer_kernel(&d_i);
        let cycle_solver = IntegerSolver::new(&cycles);
        let d_next = c.boundary(i + 1).map(SparseMatrix::to_dense).unwrap_or_else(|| IntMatrix::zeros(n, 0));
        // boundaries in cycle coordinates
        let mut b = IntMatrix::zeros(cycles.cols(), d_next.cols());
        for j in 0..d_next.cols() {
            let x = cycle_solver.solve(&d_next.column(j)).expect("boundaries are cycles");
            for (r, v) in x.into_iter().enumerate() {
                b.set(r, j, v);
            }
        }
        let form = smith_normal_form(&b);
        let rank = form.rank();
        let u_solver = IntegerSolver::new(&form.u);
        let representatives = (rank..cycles.cols())
            .map(|j| {
                let mut e = vec![BigInt::zero(); cycles.cols()];
                e[j] = BigInt::from(1);
                let coords = u_solver.solve(&e).expect("u is unimodular");
                cycles.mul_vec(&coords)
            })
            .collect();
        Ok(Self { cycles, cycle_solver, u: form.u, rank, representatives })
    }

    fn free_rank(&self) -> usize {
        self.cycles.cols() - self.rank
    }

    fn project(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let coords = self.cycle_solver.solve(cycle).expect("argument is a cycle");
        self.u.mul_vec(&coords)[self.rank..].to_vec()
    }
}

/// Matrix of `f_* : H_i(C)/tors -> H_i(D)/tors` in bases of representative
/// cycles; shaped `free rank of H_i(D)` by `free rank of H_i(C)`.
pub fn induced_free_map(f: &ChainMap, c: &ChainComplex, d: &ChainComplex, i: usize) -> Result<IntMatrix, HomalgError> {
    f.validate(c, d)?;
    let fi = f.component(i).ok_or(HomalgError::DegreeOutOfRange { requested: i, top: f.top() })?.to_dense();
    let (hc, hd) = (FreeHomology::new(c, i)?, FreeHomology::new(d, i)?);
    let mut m = IntMatrix::zeros(hd.free_rank(), hc.free_rank());
    for (j, z) in hc.representatives.iter().enumerate() {
        for (r, v) in hd.project(&fi.mul_vec(z)).into_iter().enumerate() {
            m.set(r, j, v);
        }
    }
    Ok(m)
}

/// Whether `f_* = g_*` on `H_i(C)` (torsion included): `(f - g) z` must be
/// a boundary for every cycle `z` of a basis.
pub fn agree_on_homology(
    f: &ChainMap,
    g: &ChainMap,
    c: &ChainComplex,
    d: &ChainComplex,
    i: usize,
) -> Result<bool, HomalgError> {
    f.validate(c, d)?;
    g.validate(c, d)?;
    let diff = f.sub(g);
    let di = diff.component(i).ok_or(HomalgError::DegreeOutOfRange { requested: i, top: diff.top() })?.to_dense();
    if i + 1 > d.top() {
        return Err(HomalgError::DegreeOutOfRange { requested: i, top: d.top() });
    }
    let cycles = FreeHomology::new(c, i)?.cycles;
    let boundaries = d.boundary(i + 1).map(SparseMatrix::to_dense).unwrap_or_else(|| IntMatrix::zeros(d.rank(i), 0));
    let solver = IntegerSolver::new(&boundaries);
    Ok((0..cycles.cols()).all(|j| solver.contains(&di.mul_vec(&cycles.column(j)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::AbGroup;

    fn circle() -> ChainComplex {
        let d1 = IntMatrix::from_rows(&[[1, 0, -1], [0, 1, 1]]).to_sparse();
        ChainComplex::new(vec![2, 3], vec![d1], AbGroup::integers()).unwrap().padded(2)
    }

    #[test]
    fn identity_and_double() {
        let c = circle();
        let id = ChainMap::identity(&c);
        assert_eq!(induced_free_map(&id, &c, &c, 1).unwrap(), IntMatrix::identity(1));
        let two = ChainMap::from_components(id.components().iter().map(|m| m.scaled(&BigInt::from(2))).collect());
        assert_eq!(induced_free_map(&two, &c, &c, 1).unwrap(), IntMatrix::from_rows(&[[2]]));
        assert!(!agree_on_homology(&two, &id, &c, &c, 1).unwrap());
        assert!(agree_on_homology(&id, &id, &c, &c, 1).unwrap());
    }

    #[test]
    fn torsion_class_detected() {
        // Z --2--> Z : H_0 = Z/2, multiplication by 3 equals identity there
        let d1 = IntMatrix::from_rows(&[[2]]).to_sparse();
        let c = ChainComplex::new(vec![1, 1], vec![d1], AbGroup::integers()).unwrap().padded(2);
        let id = ChainMap::identity(&c);
        let three = ChainMap::from_components(id.components().iter().map(|m| m.scaled(&BigInt::from(3))).collect());
        let two = ChainMap::from_components(id.components().iter().map(|m| m.scaled(&BigInt::from(2))).collect());
        assert!(agree_on_homology(&three, &id, &c, &c, 0).unwrap());
        assert!(!agree_on_homology(&two, &id, &c, &c, 0).unwrap());
        assert_eq!(induced_free_map(&id, &c, &c, 0).unwrap().rows(), 0);
    }
}
