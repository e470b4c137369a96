//! Finitely generated simplicial sets stored as face and degeneracy tables
//! up to a dimension bound.

use std::collections::HashMap;

use super::complex::SimplicialComplex;
use super::ComplexError;

/// `x = s_{ops[0]} s_{ops[1]} ... s_{ops[r-1]} base` with `ops` strictly
/// decreasing and `base` nondegenerate in dimension `base_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base_dim: usize,
    pub base: usize,
    pub ops: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    count: usize,
    /// `faces[x * (k + 1) + i] = d_i x`, empty in dimension 0.
    faces: Vec<u32>,
    /// `degens[x * (k + 1) + i] = s_i x`, empty at the bound.
    degens: Vec<u32>,
    nondegenerate: Vec<bool>,
    decomposition: Vec<Decomposition>,
}

/// A simplicial set known in dimensions `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    basepoint: usize,
    levels: Vec<Level>,
}

/// Raw tables for [`SimplicialSet::from_tables`]: `counts[k]` simplices in
/// dimension `k`, `faces[k]` of length `counts[k] * (k + 1)` (empty for
/// `k = 0`), `degens[k]` of length `counts[k] * (k + 1)` for `k < bound`.
#[derive(Clone, Debug, Default)]
pub struct SimplicialTables {
    pub counts: Vec<usize>,
    pub faces: Vec<Vec<u32>>,
    pub degens: Vec<Vec<u32>>,
}

impl SimplicialSet {
    /// Validates the simplicial identities on every simplex, then computes
    /// nondegeneracy flags and the Eilenberg-Zilber decomposition of every
    /// simplex, checking that each decomposition rebuilds its simplex.
    pub fn from_tables(basepoint: usize, tables: SimplicialTables) -> Result<Self, ComplexError> {
        let SimplicialTables { counts, mut faces, mut degens } = tables;
        if counts.is_empty() {
            return Err(ComplexError::Empty);
        }
        let bound = counts.len() - 1;
        faces.resize(bound + 1, Vec::new());
        degens.resize(bound + 1, Vec::new());
        for k in 0..=bound {
            let want_faces = if k == 0 { 0 } else { counts[k] * (k + 1) };
            let want_degens = if k == bound { 0 } else { counts[k] * (k + 1) };
            if faces[k].len() != want_faces || degens[k].len() != want_degens {
                return Err(ComplexError::Tables(format!("table sizes wrong in dimension {k}")));
            }
            if k > 0 && faces[k].iter().any(|&y| y as usize >= counts[k - 1]) {
                return Err(ComplexError::Tables(format!("face index out of range in dimension {k}")));
            }
            if k < bound && degens[k].iter().any(|&y| y as usize >= counts[k + 1]) {
                return Err(ComplexError::Tables(format!("degeneracy index out of range in dimension {k}")));
            }
        }
        if basepoint >= counts[0] {
            return Err(ComplexError::BasepointOutOfRange { basepoint, vertex_count: counts[0] });
        }
        let levels = counts
            .iter()
            .zip(faces.into_iter().zip(degens))
            .map(|(&count, (faces, degens))| Level {
                count,
                faces,
                degens,
                nondegenerate: Vec::new(),
                decomposition: Vec::new(),
            })
            .collect();
        let mut x = Self { basepoint, levels };
        x.check_identities()?;
        x.compute_decompositions()?;
        Ok(x)
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Number of `k`-simplices, degenerate ones included.
    pub fn count(&self, k: usize) -> usize {
        self.levels[k].count
    }

    /// `d_i x` for a `k`-simplex `x`, `k >= 1`.
    pub fn face(&self, k: usize, x: usize, i: usize) -> usize {
        debug_assert!(i <= k && k >= 1);
        self.levels[k].faces[x * (k + 1) + i] as usize
    }

    /// `s_i x` for a `k`-simplex `x`, `k < bound`.
    pub fn degeneracy(&self, k: usize, x: usize, i: usize) -> usize {
        debug_assert!(i <= k && k < self.bound());
        self.levels[k].degens[x * (k + 1) + i] as usize
    }

    pub fn is_nondegenerate(&self, k: usize, x: usize) -> bool {
        self.levels[k].nondegenerate[x]
    }

    /// Indices of the nondegenerate `k`-simplices.
    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.count(k)).filter(|&x| self.is_nondegenerate(k, x)).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.bound()).map(|k| self.levels[k].nondegenerate.iter().filter(|&&b| b).count()).collect()
    }

    pub fn decomposition(&self, k: usize, x: usize) -> &Decomposition {
        &self.levels[k].decomposition[x]
    }

    /// Alternating count of nondegenerate simplices through the bound.
    pub fn euler_characteristic(&self) -> i64 {
        self.nondegenerate_counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The totally degenerate `k`-simplex on the basepoint.
    pub fn base_simplex(&self, k: usize) -> usize {
        (0..k).fold(self.basepoint, |x, j| self.degeneracy(j, x, 0))
    }

    /// The vertices of a `k`-simplex, in order.
    pub fn vertices_of(&self, k: usize, x: usize) -> Vec<usize> {
        (0..=k)
            .map(|j| {
                // drop everything after j, then everything before it
                let mut y = x;
                let mut dim = k;
                while dim > j {
                    y = self.face(dim, y, dim);
                    dim -= 1;
                }
                while dim > 0 {
                    y = self.face(dim, y, 0);
                    dim -= 1;
                }
                y
            })
            .collect()
    }

    /// The same simplicial set forgotten above `bound`.
    pub fn truncated(&self, bound: usize) -> Result<Self, ComplexError> {
        if bound > self.bound() {
            return Err(ComplexError::BoundTooLarge { requested: bound, available: self.bound() });
        }
        let mut levels = self.levels[..=bound].to_vec();
        levels[bound].degens.clear();
        Ok(Self { basepoint: self.basepoint, levels })
    }

    /// Exhaustive scan of the simplicial identities.
    pub fn check_identities(&self) -> Result<(), ComplexError> {
        let bound = self.bound();
        let fail = |k: usize, x: usize, what: &str| Err(ComplexError::SimplicialIdentity(format!("{what} fails on simplex {x} in dimension {k}")));
        for k in 0..=bound {
            for x in 0..self.count(k) {
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            if self.face(k - 1, self.face(k, x, j), i) != self.face(k - 1, self.face(k, x, i), j - 1) {
                                return fail(k, x, "d_i d_j = d_{j-1} d_i");
                            }
                        }
                    }
                }
                if k < bound {
                    for j in 0..=k {
                        let y = self.degeneracy(k, x, j);
                        for i in 0..=k + 1 {
                            let lhs = self.face(k + 1, y, i);
                            let rhs = if i == j || i == j + 1 {
                                x
                            } else if i < j {
                                self.degeneracy(k - 1, self.face(k, x, i), j - 1)
                            } else {
                                self.degeneracy(k - 1, self.face(k, x, i - 1), j)
                            };
                            if lhs != rhs {
                                return fail(k, x, "d_i s_j");
                            }
                        }
                    }
                }
                if k + 2 <= bound {
                    for j in 0..=k {
                        for i in 0..=j {
                            let lhs = self.degeneracy(k + 1, self.degeneracy(k, x, j), i);
                            let rhs = self.degeneracy(k + 1, self.degeneracy(k, x, i), j + 1);
                            if lhs != rhs {
                                return fail(k, x, "s_i s_j = s_{j+1} s_i");
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_decompositions(&mut self) -> Result<(), ComplexError> {
        for k in 0..=self.bound() {
            let mut flags = Vec::with_capacity(self.count(k));
            let mut decs = Vec::with_capacity(self.count(k));
            for x in 0..self.count(k) {
                // x lies in the image of s_i exactly when s_i d_i x = x; the
                // largest such i peels off first
                let top = (k >= 1).then(|| (0..k).rev().find(|&i| self.degeneracy(k - 1, self.face(k, x, i), i) == x)).flatten();
                match top {
                    None => {
                        flags.push(true);
                        decs.push(Decomposition { base_dim: k, base: x, ops: Vec::new() });
                    }
                    Some(i) => {
                        let y = self.face(k, x, i);
                        let inner = &self.levels[k - 1].decomposition[y];
                        if inner.ops.first().is_some_and(|&j| j >= i) {
                            return Err(ComplexError::SimplicialIdentity(format!(
                                "degeneracy decomposition of simplex {x} in dimension {k} is not normal"
                            )));
                        }
                        let mut ops = vec![i];
                        ops.extend_from_slice(&inner.ops);
                        flags.push(false);
                        decs.push(Decomposition { base_dim: inner.base_dim, base: inner.base, ops });
                    }
                }
            }
            self.levels[k].nondegenerate = flags;
            self.levels[k].decomposition = decs;
        }
        for k in 0..=self.bound() {
            for x in 0..self.count(k) {
                if self.rebuild(self.decomposition(k, x)) != x {
                    return Err(ComplexError::SimplicialIdentity(format!("decomposition of simplex {x} in dimension {k} does not rebuild it")));
                }
            }
        }
        Ok(())
    }

    /// Applies a decomposition's degeneracies to its base.
    pub fn rebuild(&self, d: &Decomposition) -> usize {
        let mut y = d.base;
        let mut dim = d.base_dim;
        for &i in d.ops.iter().rev() {
            y = self.degeneracy(dim, y, i);
            dim += 1;
        }
        y
    }

    /// Map from vertex sequences to simplices, when every simplex is
    /// determined by its vertices (true for sets built from complexes and
    /// their products).
    pub fn vertex_sequence_index(&self) -> Result<Vec<HashMap<Vec<usize>, usize>>, ComplexError> {
        (0..=self.bound())
            .map(|k| {
                let mut m = HashMap::with_capacity(self.count(k));
                for x in 0..self.count(k) {
                    if m.insert(self.vertices_of(k, x), x).is_some() {
                        return Err(ComplexError::Tables(format!("two {k}-simplices share their vertices")));
                    }
                }
                Ok(m)
            })
            .collect()
    }
}

/// The nerve-style simplicial set of an ordered complex: `k`-simplices are
/// nondecreasing vertex sequences spanning a simplex, for `k <= bound`.
///
/// Vertices are numbered in ascending label order.
pub fn to_simplicial_set(k: &SimplicialComplex, bound: usize) -> SimplicialSet {
    let labels = k.vertices();
    let pos: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seqs: Vec<Vec<Vec<usize>>> = Vec::with_capacity(bound + 1);
    for dim in 0..=bound {
        let mut level = Vec::new();
        for j in 0..=dim.min(k.dim()) {
            for s in k.simplices(j) {
                let v: Vec<usize> = s.vertices().iter().map(|x| pos[x]).collect();
                // multiplicities m_0..m_j >= 1 summing to dim + 1
                compositions(dim + 1, j + 1, &mut |m| {
                    level.push(v.iter().zip(m).flat_map(|(&x, &r)| std::iter::repeat(x).take(r)).collect());
                });
            }
        }
        level.sort_unstable();
        seqs.push(level);
    }
    let basepoint = pos[&k.basepoint()];
    sequences_to_set(basepoint, seqs)
}

fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, parts: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if parts == 1 {
            acc.push(rest);
            f(acc);
            acc.pop();
            return;
        }
        for r in 1..=rest - (parts - 1) {
            acc.push(r);
            go(rest - r, parts - 1, acc, f);
            acc.pop();
        }
    }
    go(total, parts, &mut Vec::new(), f)
}

/// Face `i` deletes entry `i`, degeneracy `i` repeats it.
fn sequences_to_set(basepoint: usize, seqs: Vec<Vec<Vec<usize>>>) -> SimplicialSet {
    let bound = seqs.len() - 1;
    let index: Vec<HashMap<&[usize], u32>> =
        seqs.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect()).collect();
    let mut tables = SimplicialTables { counts: seqs.iter().map(Vec::len).collect(), ..Default::default() };
    for (k, level) in seqs.iter().enumerate() {
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for s in level {
            if k > 0 {
                for i in 0..=k {
                    let mut t = s.clone();
                    t.remove(i);
                    faces.push(index[k - 1][t.as_slice()]);
                }
            }
            if k < bound {
                for i in 0..=k {
                    let mut t = s.clone();
                    t.insert(i, s[i]);
                    degens.push(index[k + 1][t.as_slice()]);
                }
            }
        }
        tables.faces.push(faces);
        tables.degens.push(degens);
    }
    SimplicialSet::from_tables(basepoint, tables).expect("sequence sets satisfy the identities")
}

/// The standard `n`-simplex as a simplicial set.
pub fn standard_simplex(n: usize, bound: usize) -> SimplicialSet {
    let k = super::build_complex(&[(0..=n).collect()], 0).expect("simplex is valid");
    to_simplicial_set(&k, bound)
}

/// `X x Y` through `bound`; the `k`-simplex `(a, b)` has index
/// `a * count_Y(k) + b`, which is lexicographic in the pair.
pub fn product(x: &SimplicialSet, y: &SimplicialSet, bound: usize) -> Result<SimplicialSet, ComplexError> {
    let available = x.bound().min(y.bound());
    if bound > available {
        return Err(ComplexError::BoundTooLarge { requested: bound, available });
    }
    let mut tables = SimplicialTables::default();
    for k in 0..=bound {
        let (nx, ny) = (x.count(k), y.count(k));
        tables.counts.push(nx * ny);
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for a in 0..nx {
            for b in 0..ny {
                if k > 0 {
                    let ny1 = y.count(k - 1);
                    faces.extend((0..=k).map(|i| (x.face(k, a, i) * ny1 + y.face(k, b, i)) as u32));
                }
                if k < bound {
                    let ny1 = y.count(k + 1);
                    degens.extend((0..=k).map(|i| (x.degeneracy(k, a, i) * ny1 + y.degeneracy(k, b, i)) as u32));
                }
            }
        }
        tables.faces.push(faces);
        tables.degens.push(degens);
    }
    SimplicialSet::from_tables(x.basepoint() * y.count(0) + y.basepoint(), tables)
}

/// A pointed simplicial map, one index table per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    levels: Vec<Vec<u32>>,
}

impl SimplicialMap {
    /// Checks that the tables commute with faces and degeneracies and send
    /// the basepoint to the basepoint.
    pub fn new(levels: Vec<Vec<u32>>, source: &SimplicialSet, target: &SimplicialSet) -> Result<Self, ComplexError> {
        let bad = |msg: String| Err(ComplexError::NotSimplicial(msg));
        if levels.len() != source.bound() + 1 || target.bound() < source.bound() {
            return bad(format!("map has {} levels for a source of bound {}", levels.len(), source.bound()));
        }
        for (k, l) in levels.iter().enumerate() {
            if l.len() != source.count(k) || l.iter().any(|&y| y as usize >= target.count(k)) {
                return bad(format!("table in dimension {k} has the wrong shape"));
            }
        }
        if levels[0][source.basepoint()] as usize != target.basepoint() {
            return Err(ComplexError::NotPointed);
        }
        let f = Self { levels };
        for k in 0..=source.bound() {
            for x in 0..source.count(k) {
                if k > 0 {
                    for i in 0..=k {
                        if f.apply(k - 1, source.face(k, x, i)) != target.face(k, f.apply(k, x), i) {
                            return bad(format!("d_{i} fails on simplex {x} in dimension {k}"));
                        }
                    }
                }
                if k < source.bound() {
                    for i in 0..=k {
                        if f.apply(k + 1, source.degeneracy(k, x, i)) != target.degeneracy(k, f.apply(k, x), i) {
                            return bad(format!("s_{i} fails on simplex {x} in dimension {k}"));
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    /// Determined by a map on vertices, for a target whose simplices are
    /// determined by their vertex sequences.
    pub fn from_vertex_function(
        source: &SimplicialSet,
        target: &SimplicialSet,
        vertex_map: impl Fn(usize) -> usize,
    ) -> Result<Self, ComplexError> {
        if target.bound() < source.bound() {
            return Err(ComplexError::BoundTooLarge { requested: source.bound(), available: target.bound() });
        }
        let index = target.vertex_sequence_index()?;
        let mut levels = Vec::new();
        for k in 0..=source.bound() {
            let mut l = Vec::with_capacity(source.count(k));
            for x in 0..source.count(k) {
                let image: Vec<usize> = source.vertices_of(k, x).into_iter().map(&vertex_map).collect();
                let y = index[k].get(&image).ok_or_else(|| {
                    ComplexError::NotSimplicial(format!("vertex sequence {image:?} is not a simplex of the target"))
                })?;
                l.push(*y as u32);
            }
            levels.push(l);
        }
        Self::new(levels, source, target)
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        Self { levels: (0..=x.bound()).map(|k| (0..x.count(k) as u32).collect()).collect() }
    }

    /// Everything to the basepoint.
    pub fn constant(source: &SimplicialSet, target: &SimplicialSet) -> Self {
        Self { levels: (0..=source.bound()).map(|k| vec![target.base_simplex(k) as u32; source.count(k)]).collect() }
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.levels[k][x] as usize
    }

    /// `after . self`
    pub fn then(&self, after: &SimplicialMap) -> SimplicialMap {
        Self {
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, l)| l.iter().map(|&y| after.levels[k][y as usize]).collect())
                .collect(),
        }
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }
}

/// A simplicial automorphism as a permutation table per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialAutomorphism {
    levels: Vec<Vec<u32>>,
}

impl SimplicialAutomorphism {
    /// Checks bijectivity per dimension and compatibility with the
    /// structure maps.
    pub fn new(levels: Vec<Vec<u32>>, x: &SimplicialSet) -> Result<Self, ComplexError> {
        for (k, l) in levels.iter().enumerate() {
            let mut seen = vec![false; l.len()];
            for &y in l {
                if y as usize >= l.len() || std::mem::replace(&mut seen[y as usize], true) {
                    return Err(ComplexError::InvalidAction(format!("not a permutation in dimension {k}")));
                }
            }
        }
        let as_map = SimplicialMap::new(levels, x, x).map_err(|e| ComplexError::InvalidAction(e.to_string()))?;
        Ok(Self { levels: as_map.levels })
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        Self { levels: SimplicialMap::identity(x).levels }
    }

    /// Exchange of the factors of `X x X` built by [`product`].
    pub fn swap_factors(xx: &SimplicialSet, x: &SimplicialSet) -> Result<Self, ComplexError> {
        let levels = (0..=xx.bound())
            .map(|k| {
                let n = x.count(k);
                (0..n * n).map(|p| ((p % n) * n + p / n) as u32).collect()
            })
            .collect();
        Self::new(levels, xx)
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.levels[k][x] as usize
    }

    fn then(&self, after: &Self) -> Self {
        Self {
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, l)| l.iter().map(|&y| after.levels[k][y as usize]).collect())
                .collect(),
        }
    }
}

/// The orbit simplicial set `X / G` through `bound`; each orbit is
/// represented by its least simplex index.
pub fn quotient_by_group(
    x: &SimplicialSet,
    action: &[SimplicialAutomorphism],
    bound: usize,
) -> Result<SimplicialSet, ComplexError> {
    if bound > x.bound() {
        return Err(ComplexError::BoundTooLarge { requested: bound, available: x.bound() });
    }
    let x = x.truncated(bound)?;
    let group: Vec<SimplicialAutomorphism> = action
        .iter()
        .map(|g| {
            if g.levels.len() <= bound {
                return Err(ComplexError::InvalidAction("automorphism is shorter than the bound".into()));
            }
            SimplicialAutomorphism::new(g.levels[..=bound].to_vec(), &x)
        })
        .collect::<Result<_, _>>()?;
    let set: std::collections::HashSet<&SimplicialAutomorphism> = group.iter().collect();
    for g in &group {
        for h in &group {
            if !set.contains(&g.then(h)) {
                return Err(ComplexError::InvalidAction("action is not closed under composition".into()));
            }
        }
    }
    // orbit representative of every simplex, then reindex the representatives
    let mut rep_index: Vec<Vec<u32>> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for k in 0..=bound {
        let n = x.count(k);
        let rep: Vec<usize> = (0..n).map(|s| group.iter().map(|g| g.apply(k, s)).min().unwrap_or(s)).collect();
        let mut idx = vec![u32::MAX; n];
        let mut list = Vec::new();
        for s in 0..n {
            if rep[s] == s {
                idx[s] = list.len() as u32;
                list.push(s);
            }
        }
        rep_index.push((0..n).map(|s| idx[rep[s]]).collect());
        reps.push(list);
    }
    let mut tables = SimplicialTables { counts: reps.iter().map(Vec::len).collect(), ..Default::default() };
    for k in 0..=bound {
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for &s in &reps[k] {
            if k > 0 {
                faces.extend((0..=k).map(|i| rep_index[k - 1][x.face(k, s, i)]));
            }
            if k < bound {
                degens.extend((0..=k).map(|i| rep_index[k + 1][x.degeneracy(k, s, i)]));
            }
        }
        tables.faces.push(faces);
        tables.degens.push(degens);
    }
    SimplicialSet::from_tables(rep_index[0][x.basepoint()] as usize, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_complex;

    fn circle() -> SimplicialComplex {
        build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 0).unwrap()
    }

    #[test]
    fn point_and_edge() {
        let p = to_simplicial_set(&SimplicialComplex::point(), 3);
        assert_eq!(p.nondegenerate_counts(), vec![1, 0, 0, 0]);
        assert_eq!((0..=3).map(|k| p.count(k)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        let e = standard_simplex(1, 3);
        assert_eq!(e.nondegenerate_counts(), vec![2, 1, 0, 0]);
        assert_eq!(e.count(3), 5);
    }

    #[test]
    fn circle_as_set() {
        let c = to_simplicial_set(&circle(), 2);
        assert_eq!(c.nondegenerate_counts(), vec![3, 3, 0]);
        assert_eq!(c.count(2), 3 + 2 * 3);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn decompositions_are_normal() {
        let c = to_simplicial_set(&circle(), 4);
        for k in 0..=4 {
            for x in 0..c.count(k) {
                let d = c.decomposition(k, x);
                assert!(d.ops.windows(2).all(|w| w[0] > w[1]));
                assert_eq!(d.base_dim + d.ops.len(), k);
                assert!(c.is_nondegenerate(d.base_dim, d.base));
            }
        }
    }

    #[test]
    fn vertices_of_recovers_sequences() {
        let c = to_simplicial_set(&circle(), 3);
        let idx = c.vertex_sequence_index().unwrap();
        assert_eq!(idx[3].len(), c.count(3));
        assert!(idx[3].contains_key(&vec![0, 0, 2, 2]));
        assert!(!idx[1].contains_key(&vec![1, 0]));
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let e = standard_simplex(1, 1);
        let mut t = SimplicialTables { counts: vec![e.count(0), e.count(1)], ..Default::default() };
        t.faces = vec![vec![], e.levels[1].faces.clone()];
        t.degens = vec![e.levels[0].degens.clone(), vec![]];
        // swap d_0 and d_1 of the nondegenerate edge [0,1]
        let edge = (0..e.count(1)).find(|&x| e.is_nondegenerate(1, x)).unwrap();
        t.faces[1].swap(2 * edge, 2 * edge + 1);
        assert!(SimplicialSet::from_tables(0, t.clone()).is_ok());
        // d_0 s_0 = id broken
        t.degens[0].swap(0, 1);
        assert!(matches!(SimplicialSet::from_tables(0, t), Err(ComplexError::SimplicialIdentity(_))));
    }

    fn shuffle_count(p: usize, q: usize, k: usize) -> usize {
        // jointly injective pairs of surjections [k] -> [p], [k] -> [q]
        if k < p.max(q) || k > p + q {
            return 0;
        }
        let fact = |n: usize| (1..=n).product::<usize>();
        fact(k) / (fact(k - p) * fact(k - q) * fact(p + q - k))
    }

    fn product_oracle(x: &SimplicialSet, y: &SimplicialSet, bound: usize) -> Vec<usize> {
        let (nx, ny) = (x.nondegenerate_counts(), y.nondegenerate_counts());
        (0..=bound)
            .map(|k| {
                let mut total = 0;
                for p in 0..=k {
                    for q in 0..=k {
                        total += nx[p] * ny[q] * shuffle_count(p, q, k);
                    }
                }
                total
            })
            .collect()
    }

    #[test]
    fn square_from_two_intervals() {
        let i = standard_simplex(1, 3);
        let sq = product(&i, &i, 3).unwrap();
        assert_eq!(sq.nondegenerate_counts(), vec![4, 5, 2, 0]);
        assert_eq!(sq.nondegenerate_counts(), product_oracle(&i, &i, 3));
    }

    #[test]
    fn torus_of_triangle_circles() {
        let c = to_simplicial_set(&circle(), 2);
        let t = product(&c, &c, 2).unwrap();
        assert_eq!(t.nondegenerate_counts(), vec![9, 27, 18]);
        assert_eq!(t.nondegenerate_counts(), product_oracle(&c, &c, 2));
    }

    #[test]
    fn product_with_point() {
        let c = to_simplicial_set(&circle(), 3);
        let p = to_simplicial_set(&SimplicialComplex::point(), 3);
        let cp = product(&c, &p, 3).unwrap();
        assert_eq!(cp, c);
        assert!(product(&c, &p, 4).is_err());
    }

    #[test]
    fn quotients() {
        let i = standard_simplex(1, 2);
        let ii = product(&i, &i, 2).unwrap();
        let id = SimplicialAutomorphism::identity(&ii);
        assert_eq!(quotient_by_group(&ii, &[id.clone()], 2).unwrap(), ii);
        let swap = SimplicialAutomorphism::swap_factors(&ii, &i).unwrap();
        let q = quotient_by_group(&ii, &[id.clone(), swap.clone()], 2).unwrap();
        assert_eq!(q.count(0), 3);
        assert_eq!(q.nondegenerate_counts(), vec![3, 3, 1]);
        assert!(matches!(quotient_by_group(&ii, &[swap], 2), Err(ComplexError::InvalidAction(_))));

        let p = to_simplicial_set(&SimplicialComplex::point(), 2);
        let pp = product(&p, &p, 2).unwrap();
        let g = [SimplicialAutomorphism::identity(&pp), SimplicialAutomorphism::swap_factors(&pp, &p).unwrap()];
        assert_eq!(quotient_by_group(&pp, &g, 2).unwrap(), p);
    }

    #[test]
    fn non_simplicial_permutation_rejected() {
        let i = standard_simplex(1, 1);
        // swapping the two vertices but fixing every edge is not simplicial
        let levels = vec![vec![1, 0], (0..i.count(1) as u32).collect()];
        assert!(SimplicialAutomorphism::new(levels, &i).is_err());
    }

    #[test]
    fn maps_compose() {
        let c = to_simplicial_set(&circle(), 2);
        let id = SimplicialMap::identity(&c);
        let k = SimplicialMap::constant(&c, &c);
        assert!(SimplicialMap::new(k.levels().to_vec(), &c, &c).is_ok());
        assert_eq!(id.then(&k), k);
        assert_eq!(k.then(&id), k);
        let f = SimplicialMap::from_vertex_function(&c, &c, |v| v).unwrap();
        assert_eq!(f, id);
        // reversing the circle is not order preserving
        assert!(SimplicialMap::from_vertex_function(&c, &c, |v| (3 - v) % 3).is_err());
    }
}
