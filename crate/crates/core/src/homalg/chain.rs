//! Chain complexes of free abelian groups, chain maps and homology.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::group::{AbGroup, CoeffGroup};
use super::matrix::SparseMatrix;
use super::snf::{sparse_invariants, SmithInvariants};
use super::HomalgError;

/// A bounded chain complex `C_top -> ... -> C_0` of free abelian groups,
/// read with coefficients in `coeff`.
///
/// `boundary(k)` is the integral matrix of `C_k -> C_{k-1}`, shaped
/// `rank(k-1) x rank(k)`. The complex is only known up to `top`; homology
/// is available through degree `top - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    coeff: CoeffGroup,
}

impl ChainComplex {
    /// Builds and validates a complex: shapes must chain and every
    /// composite of consecutive boundaries must vanish.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>, coeff: CoeffGroup) -> Result<Self, HomalgError> {
        if ranks.is_empty() {
            return Err(HomalgError::Shape("a chain complex needs at least degree 0".into()));
        }
        if boundaries.len() != ranks.len() - 1 {
            return Err(HomalgError::Shape(format!(
                "{} boundary matrices for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(HomalgError::Shape(format!(
                    "boundary in degree {} is {}x{}, expected {}x{}",
                    k + 1,
                    b.rows(),
                    b.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        let c = Self { ranks, boundaries, coeff };
        c.check_square_zero()?;
        Ok(c)
    }

    /// The complex with no chains in any degree up to `top`.
    pub fn zero(top: usize, coeff: CoeffGroup) -> Self {
        Self {
            ranks: vec![0; top + 1],
            boundaries: (0..top).map(|_| SparseMatrix::zeros(0, 0)).collect(),
            coeff,
        }
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn with_coeff(mut self, coeff: CoeffGroup) -> Self {
        self.coeff = coeff;
        self
    }

    /// `C_k -> C_{k-1}` for `1 <= k <= top`.
    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    /// Checks `d_k d_{k+1} = 0` by exact multiplication.
    pub fn check_square_zero(&self) -> Result<(), HomalgError> {
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(HomalgError::NotAComplex(k + 1));
            }
        }
        Ok(())
    }

    /// Extends by zero groups up to `top`. Only meaningful when the complex
    /// genuinely vanishes above its current top.
    pub fn padded(mut self, top: usize) -> Self {
        while self.top() < top {
            let r = *self.ranks.last().expect("nonempty");
            self.ranks.push(0);
            self.boundaries.push(SparseMatrix::zeros(r, 0));
        }
        self
    }

    /// Drops everything above `top`.
    pub fn truncated(mut self, top: usize) -> Self {
        if top < self.top() {
            self.ranks.truncate(top + 1);
            self.boundaries.truncate(top);
        }
        self
    }

    fn invariants(&self, upto: usize) -> Vec<SmithInvariants> {
        // index k holds the invariants of d_k; d_0 = 0
        (0..=upto)
            .map(|k| match self.boundary(k) {
                Some(b) => sparse_invariants(b),
                None => SmithInvariants { rank: 0, torsion: Vec::new() },
            })
            .collect()
    }

    /// Integral homology `H_0 .. H_max_degree`.
    pub fn integral_homology(&self, max_degree: usize) -> Result<Vec<AbGroup>, HomalgError> {
        if max_degree + 1 > self.top() {
            return Err(HomalgError::DegreeOutOfRange { requested: max_degree, top: self.top() });
        }
        let inv = self.invariants(max_degree + 1);
        Ok((0..=max_degree)
            .map(|k| {
                let free = self.ranks[k] - inv[k].rank - inv[k + 1].rank;
                AbGroup::from_cyclic_orders(free, &inv[k + 1].torsion)
            })
            .collect())
    }

    /// Homology with the complex's own coefficients.
    pub fn homology(&self, max_degree: usize) -> Result<Vec<AbGroup>, HomalgError> {
        homology(self, &self.coeff, max_degree)
    }

    /// `sum (-1)^k rank C_k` over degrees `0..=upto`.
    pub fn euler_characteristic(&self, upto: usize) -> i64 {
        (0..=upto.min(self.top())).map(|k| sign(k) * self.ranks[k] as i64).sum()
    }

    pub fn to_json(&self) -> Result<ChainComplexJson, HomalgError> {
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| {
                b.to_dense()
                    .entries()
                    .iter()
                    .map(|x| x.to_i64().ok_or(HomalgError::EntryTooLarge))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(ChainComplexJson {
            ranks: self.ranks.clone(),
            boundaries,
            coeff: CoeffJson { rank: self.coeff.rank(), torsion: self.coeff.torsion().to_vec() },
        })
    }

    pub fn from_json(j: &ChainComplexJson) -> Result<Self, HomalgError> {
        if j.ranks.is_empty() || j.boundaries.len() + 1 != j.ranks.len() {
            return Err(HomalgError::Shape("boundaries must number one less than ranks".into()));
        }
        let mut boundaries = Vec::new();
        for (k, flat) in j.boundaries.iter().enumerate() {
            let (rows, cols) = (j.ranks[k], j.ranks[k + 1]);
            if flat.len() != rows * cols {
                return Err(HomalgError::Shape(format!("boundary {} has {} entries, expected {}", k + 1, flat.len(), rows * cols)));
            }
            let mut m = SparseMatrix::zeros(rows, 0);
            for c in 0..cols {
                m.push_column((0..rows).map(|r| (r, BigInt::from(flat[r * cols + c]))).collect());
            }
            boundaries.push(m);
        }
        let coeff = AbGroup::new(j.coeff.rank, j.coeff.torsion.clone())?;
        Self::new(j.ranks.clone(), boundaries, coeff)
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Wire format: `{"ranks":[...], "boundaries":[[row-major ints]], "coeff":{"rank":r,"torsion":[...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexJson {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<i64>>,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// `H_i(C; A)` for `i <= max_degree`, assembled by universal coefficients
/// from one integral pass: `H_i(C) (x) A  +  Tor(H_{i-1}(C), A)`.
pub fn homology(c: &ChainComplex, a: &CoeffGroup, max_degree: usize) -> Result<Vec<AbGroup>, HomalgError> {
    let integral = c.integral_homology(max_degree)?;
    Ok(universal_coefficients(&integral, a))
}

pub fn universal_coefficients(integral: &[AbGroup], a: &CoeffGroup) -> Vec<AbGroup> {
    (0..integral.len())
        .map(|i| {
            let t = integral[i].tensor(a);
            match i.checked_sub(1) {
                Some(j) => t.direct_sum(&integral[j].tor(a)),
                None => t,
            }
        })
        .collect()
}

/// Rank of an integer matrix reduced mod a prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let reduce = |x: &BigInt| -> u64 {
        let r = x % BigInt::from(p);
        let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
        r.to_u64().expect("residue fits")
    };
    let mut rows: Vec<Vec<u64>> = vec![vec![0; m.cols()]; m.rows()];
    for (c, col) in m.columns().iter().enumerate() {
        for (r, v) in col {
            rows[*r][c] = reduce(v);
        }
    }
    let mut rank = 0;
    let ncols = m.cols();
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = mod_pow(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `dim H_i(C ; F_p)` for `i <= max_degree`, by direct elimination mod `p`.
pub fn betti_mod_p(c: &ChainComplex, p: u64, max_degree: usize) -> Result<Vec<usize>, HomalgError> {
    if max_degree + 1 > c.top() {
        return Err(HomalgError::DegreeOutOfRange { requested: max_degree, top: c.top() });
    }
    let ranks: Vec<usize> = (0..=max_degree + 1).map(|k| c.boundary(k).map_or(0, |b| rank_mod_p(b, p))).collect();
    Ok((0..=max_degree).map(|k| c.rank(k) - ranks[k] - ranks[k + 1]).collect())
}

/// Degreewise integer matrices `f_k : C_k -> D_k` commuting with boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    components: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Validates shapes and `d f = f d` against the given complexes, over
    /// the degrees both complexes and the map cover.
    pub fn new(components: Vec<SparseMatrix>, source: &ChainComplex, target: &ChainComplex) -> Result<Self, HomalgError> {
        let f = Self { components };
        f.validate(source, target)?;
        Ok(f)
    }

    /// Unvalidated; call [`ChainMap::validate`] before trusting it.
    pub fn from_components(components: Vec<SparseMatrix>) -> Self {
        Self { components }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self {
            components: c
                .ranks
                .iter()
                .map(|&n| {
                    let mut m = SparseMatrix::zeros(n, 0);
                    for i in 0..n {
                        m.push_column(vec![(i, BigInt::one())]);
                    }
                    m
                })
                .collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let top = source.top().min(target.top());
        Self { components: (0..=top).map(|k| SparseMatrix::zeros(target.rank(k), source.rank(k))).collect() }
    }

    pub fn top(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn component(&self, k: usize) -> Option<&SparseMatrix> {
        self.components.get(k)
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.components
    }

    pub fn validate(&self, source: &ChainComplex, target: &ChainComplex) -> Result<(), HomalgError> {
        for (k, f) in self.components.iter().enumerate() {
            if f.rows() != target.rank(k) || f.cols() != source.rank(k) {
                return Err(HomalgError::Shape(format!("chain map component {k} has wrong shape")));
            }
        }
        for k in 1..self.components.len() {
            let (Some(ds), Some(dt)) = (source.boundary(k), target.boundary(k)) else {
                break;
            };
            if dt.mul(&self.components[k]) != self.components[k - 1].mul(ds) {
                return Err(HomalgError::NotAChainMap(k));
            }
        }
        Ok(())
    }

    pub fn compose(&self, after: &ChainMap) -> ChainMap {
        ChainMap { components: self.components.iter().zip(&after.components).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        ChainMap { components: self.components.iter().zip(&other.components).map(|(f, g)| f.sub(g)).collect() }
    }
}

/// Mapping cone of `f : C -> D`: `Cone_n = C_{n-1} + D_n`, with
/// `d(c, x) = (-d c, f c + d x)`.
pub fn mapping_cone(f: &ChainMap, source: &ChainComplex, target: &ChainComplex) -> Result<ChainComplex, HomalgError> {
    let top = (source.top() + 1).min(target.top()).min(f.top() + 1);
    let c_rank = |n: usize| if n == 0 { 0 } else { source.rank(n - 1) };
    let ranks: Vec<usize> = (0..=top).map(|n| c_rank(n) + target.rank(n)).collect();
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        // Cone_n = C_{n-1} + D_n  ->  Cone_{n-1} = C_{n-2} + D_{n-1}
        let neg_dc = if n >= 2 { source.boundary(n - 1).map(|d| d.scaled(&BigInt::from(-1))) } else { None };
        let fc = f.component(n - 1).cloned();
        let dd = target.boundary(n).cloned();
        boundaries.push(SparseMatrix::block(
            c_rank(n - 1),
            target.rank(n - 1),
            c_rank(n),
            target.rank(n),
            [neg_dc.as_ref(), None, fc.as_ref(), dd.as_ref()],
        ));
    }
    ChainComplex::new(ranks, boundaries, source.coeff.clone())
}

/// Result of a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    pub max_degree: usize,
    /// First degree where the induced map fails to be an isomorphism,
    /// with the source and target homology there.
    pub witness: Option<QuasiIsoWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoWitness {
    pub degree: usize,
    pub source: AbGroup,
    pub target: AbGroup,
}

/// Whether `f` induces isomorphisms on integral homology in degrees
/// `<= max_degree`.
///
/// `H_i(Cone f) = 0` for `i <= n` means `f_*` is onto in degrees `<= n` and
/// injective below `n`; comparing the groups in degree `n` then settles
/// injectivity there, since an onto map between isomorphic finitely
/// generated abelian groups is injective.
pub fn is_quasi_iso(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
    max_degree: usize,
) -> Result<QuasiIsoReport, HomalgError> {
    f.validate(source, target)?;
    if f.top() < max_degree {
        return Err(HomalgError::DegreeOutOfRange { requested: max_degree, top: f.top() });
    }
    let hs = source.integral_homology(max_degree)?;
    let ht = target.integral_homology(max_degree)?;
    let cone = mapping_cone(f, source, target)?;
    let hc = cone.integral_homology(max_degree)?;
    let witness = (0..=max_degree)
        .find(|&i| hs[i] != ht[i] || !hc[i].is_zero())
        .map(|degree| QuasiIsoWitness { degree, source: hs[degree].clone(), target: ht[degree].clone() });
    Ok(QuasiIsoReport { is_quasi_iso: witness.is_none(), max_degree, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::IntMatrix;

    fn circle() -> ChainComplex {
        // reduced chains of the triangle circle, basepoint 0 removed:
        // generators C_0 = {1, 2}, C_1 = {01, 02, 12}
        let d1 = IntMatrix::from_rows(&[[1, 0, -1], [0, 1, 1]]).to_sparse();
        ChainComplex::new(vec![2, 3], vec![d1], AbGroup::integers()).unwrap().padded(2)
    }

    #[test]
    fn circle_homology() {
        let h = circle().integral_homology(1).unwrap();
        assert_eq!(h, vec![AbGroup::zero(), AbGroup::integers()]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[[1]]).to_sparse();
        let d2 = IntMatrix::from_rows(&[[1]]).to_sparse();
        assert!(matches!(
            ChainComplex::new(vec![1, 1, 1], vec![d1, d2], AbGroup::integers()),
            Err(HomalgError::NotAComplex(2))
        ));
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = IntMatrix::from_rows(&[[1, 1]]).to_sparse();
        assert!(ChainComplex::new(vec![1, 3], vec![d1], AbGroup::integers()).is_err());
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(circle().integral_homology(2), Err(HomalgError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn json_round_trip() {
        let c = circle();
        let j = c.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"ranks\":[2,3,0]"));
        let back = ChainComplex::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn identity_is_quasi_iso() {
        let c = circle();
        let r = is_quasi_iso(&ChainMap::identity(&c), &c, &c, 1).unwrap();
        assert!(r.is_quasi_iso);
    }

    #[test]
    fn acyclic_to_zero_is_quasi_iso() {
        let d1 = IntMatrix::from_rows(&[[1]]).to_sparse();
        let acyclic = ChainComplex::new(vec![1, 1], vec![d1], AbGroup::integers()).unwrap().padded(2);
        let zero = ChainComplex::zero(2, AbGroup::integers());
        let f = ChainMap::zero(&acyclic, &zero);
        assert!(is_quasi_iso(&f, &acyclic, &zero, 1).unwrap().is_quasi_iso);
    }

    #[test]
    fn zero_into_circle_fails_in_degree_one() {
        let zero = ChainComplex::zero(2, AbGroup::integers());
        let c = circle();
        let f = ChainMap::zero(&zero, &c);
        let r = is_quasi_iso(&f, &zero, &c, 1).unwrap();
        assert!(!r.is_quasi_iso);
        let w = r.witness.unwrap();
        assert_eq!((w.degree, w.source, w.target), (1, AbGroup::zero(), AbGroup::integers()));
    }

    #[test]
    fn multiplication_by_two_is_not_quasi_iso() {
        let c = circle();
        let two = ChainMap::from_components(ChainMap::identity(&c).components().iter().map(|m| m.scaled(&BigInt::from(2))).collect());
        let r = is_quasi_iso(&two, &c, &c, 1).unwrap();
        assert_eq!(r.witness.map(|w| w.degree), Some(1));
    }

    #[test]
    fn uct_with_torsion() {
        // Z --2--> Z : H_0 = Z/2
        let d1 = IntMatrix::from_rows(&[[2]]).to_sparse();
        let c = ChainComplex::new(vec![1, 1], vec![d1], AbGroup::integers()).unwrap().padded(2);
        let z2: AbGroup = "Z/2".parse().unwrap();
        let h = homology(&c, &z2, 1).unwrap();
        assert_eq!(h, vec![z2.clone(), z2.clone()]);
        assert_eq!(betti_mod_p(&c, 2, 1).unwrap(), vec![1, 1]);
        assert_eq!(betti_mod_p(&c, 3, 1).unwrap(), vec![0, 0]);
    }
}
