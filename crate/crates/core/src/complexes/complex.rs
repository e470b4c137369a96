//! Finite pointed simplicial complexes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ComplexError;

/// A simplex as its strictly increasing list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; fails on repeats or an empty list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(w[0]));
        }
        Ok(Self(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]) && !vertices.is_empty());
        Self(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one faces, `i`-th face omitting vertex `i`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite simplicial complex with a base vertex.
///
/// Simplices are stored by dimension, each dimension in lexicographic
/// order; `index_of` returns positions in that order. Subcomplexes keep the
/// vertex numbering of their ambient complex, so not every index below
/// `vertex_count` need be a vertex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    basepoint: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.basepoint == other.basepoint && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

/// Builds the downward closure of `maximal_simplices`, requiring the used
/// vertices to be exactly `0..n`.
pub fn build_complex(maximal_simplices: &[Vec<usize>], basepoint: usize) -> Result<SimplicialComplex, ComplexError> {
    if maximal_simplices.is_empty() {
        return Err(ComplexError::Empty);
    }
    let simplices = maximal_simplices.iter().map(|s| Simplex::new(s.clone())).collect::<Result<Vec<_>, _>>()?;
    let used: BTreeSet<usize> = simplices.iter().flat_map(|s| s.vertices().iter().copied()).collect();
    let n = used.len();
    if let Some(missing) = (0..n).find(|v| !used.contains(v)) {
        return Err(ComplexError::NonDenseVertices { missing, vertex_count: n });
    }
    SimplicialComplex::from_simplices(n, basepoint, simplices)
}

impl SimplicialComplex {
    /// Closure of the given simplices inside `0..vertex_count`.
    pub fn from_simplices(
        vertex_count: usize,
        basepoint: usize,
        generators: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, ComplexError> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in generators {
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, vertex_count });
            }
            if by_dim.len() > s.dim() && by_dim[s.dim()].contains(&s) {
                continue;
            }
            for f in s.all_faces() {
                let d = f.dim();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(f);
            }
        }
        if by_dim.is_empty() {
            return Err(ComplexError::Empty);
        }
        if !by_dim[0].contains(&Simplex::vertex(basepoint)) {
            return Err(ComplexError::BasepointOutOfRange { basepoint, vertex_count });
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Self { vertex_count, basepoint, simplices, index })
    }

    /// The one-vertex complex.
    pub fn point() -> Self {
        build_complex(&[vec![0]], 0).expect("point is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// The `k`-simplices in canonical order; empty above the dimension.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// All simplices ordered by dimension, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Vertex labels in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        self.simplices[0].iter().map(|s| s.vertices()[0]).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for k in 1..self.simplices.len() {
            for s in &self.simplices[k] {
                for f in s.faces() {
                    covered[k - 1][self.index[k - 1][&f]] = true;
                }
            }
        }
        self.iter()
            .filter(|s| !covered[s.dim()][self.index[s.dim()][*s]])
            .cloned()
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Every face of every stored simplex is stored.
    pub fn is_downward_closed(&self) -> bool {
        self.iter().all(|s| s.faces().all(|f| self.contains(&f)))
    }

    /// The subcomplex generated by `generators`, keeping this complex's
    /// vertex numbering and basepoint.
    pub fn subcomplex(&self, generators: impl IntoIterator<Item = Simplex>) -> Result<Self, ComplexError> {
        let generators: Vec<Simplex> = generators.into_iter().collect();
        if let Some(s) = generators.iter().find(|s| !self.contains(s)) {
            return Err(ComplexError::NotASubcomplex(s.to_string()));
        }
        Self::from_simplices(self.vertex_count, self.basepoint, generators)
    }

    /// Whether every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// The full subcomplex on a vertex set, with the given basepoint.
    pub fn induced(&self, vertices: &BTreeSet<usize>, basepoint: usize) -> Result<Self, ComplexError> {
        let gens = self.iter().filter(|s| s.vertices().iter().all(|v| vertices.contains(v))).cloned();
        Self::from_simplices(self.vertex_count, basepoint, gens)
    }

    /// Same simplices, different base vertex.
    pub fn with_basepoint(&self, basepoint: usize) -> Result<Self, ComplexError> {
        if !self.contains_vertex(basepoint) {
            return Err(ComplexError::BasepointOutOfRange { basepoint, vertex_count: self.vertex_count });
        }
        Ok(Self { basepoint, ..self.clone() })
    }

    /// Applies `barycentric_subdivision` `n` times.
    pub fn subdivided(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |k, _| barycentric_subdivision(&k))
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.vertex_count,
            basepoint: self.basepoint,
            maximal_simplices: self.maximal_simplices().into_iter().map(|s| s.0).collect(),
        }
    }
}

/// On-disk description of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: usize,
    pub basepoint: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::Format(e.to_string()))
    }

    /// Checks that exactly the vertices `0..vertices` are used.
    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        let used: BTreeSet<usize> = self.maximal_simplices.iter().flatten().copied().collect();
        if let Some(&v) = used.iter().find(|&&v| v >= self.vertices) {
            return Err(ComplexError::VertexOutOfRange { vertex: v, vertex_count: self.vertices });
        }
        if used.len() != self.vertices {
            let missing = (0..self.vertices).find(|v| !used.contains(v)).unwrap_or(0);
            return Err(ComplexError::NonDenseVertices { missing, vertex_count: self.vertices });
        }
        if self.basepoint >= self.vertices {
            return Err(ComplexError::BasepointOutOfRange { basepoint: self.basepoint, vertex_count: self.vertices });
        }
        build_complex(&self.maximal_simplices, self.basepoint)
    }
}

/// Connected components of the 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    /// Component id per vertex label; `None` for labels that are not
    /// vertices of the complex.
    pub component_of: Vec<Option<usize>>,
    pub count: usize,
    pub basepoint_component: usize,
}

impl ComponentPartition {
    /// Vertices of each component, ids in order of their least vertex.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, c) in self.component_of.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(v);
            }
        }
        out
    }
}

/// Union-find over edges. Component ids follow the least vertex of each
/// component.
pub fn connected_components(k: &SimplicialComplex) -> ComponentPartition {
    let n = k.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in k.simplices(1) {
        let (a, b) = (find(&mut parent, e.vertices()[0]), find(&mut parent, e.vertices()[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut component_of = vec![None; n];
    let mut root_id: HashMap<usize, usize> = HashMap::new();
    for v in k.vertices() {
        let r = find(&mut parent, v);
        let next = root_id.len();
        component_of[v] = Some(*root_id.entry(r).or_insert(next));
    }
    let basepoint_component = component_of[k.basepoint()].expect("basepoint is a vertex");
    ComponentPartition { component_of, count: root_id.len(), basepoint_component }
}

/// Vertices of the subdivision are the simplices of `k` in canonical order;
/// simplices are chains of faces.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let all: Vec<&Simplex> = k.iter().collect();
    let id: HashMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut chains = Vec::new();
    for top in k.maximal_simplices() {
        // each ordering of the vertices gives one maximal flag
        let mut order: Vec<usize> = top.vertices().to_vec();
        permutations(&mut order, 0, &mut |perm| {
            let mut flag: Vec<usize> = (1..=perm.len())
                .map(|j| {
                    let mut f = perm[..j].to_vec();
                    f.sort_unstable();
                    id[&Simplex::from_sorted(f)]
                })
                .collect();
            flag.sort_unstable();
            chains.push(Simplex::from_sorted(flag));
        });
    }
    let bp = id[&Simplex::vertex(k.basepoint())];
    SimplicialComplex::from_simplices(all.len(), bp, chains).expect("subdivision is valid")
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 0).unwrap()
    }

    #[test]
    fn builds_closures() {
        assert_eq!(circle().f_vector(), vec![3, 3]);
        let s2 = build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 0).unwrap();
        assert_eq!(s2.f_vector(), vec![4, 6, 4]);
        assert!(s2.is_downward_closed());
        assert_eq!(SimplicialComplex::point().f_vector(), vec![1]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_complex(&[], 0), Err(ComplexError::Empty));
        assert_eq!(build_complex(&[vec![0, 1]], 2), Err(ComplexError::BasepointOutOfRange { basepoint: 2, vertex_count: 2 }));
        assert_eq!(build_complex(&[vec![0, 1, 1]], 0), Err(ComplexError::DuplicateVertex(1)));
        assert!(matches!(build_complex(&[vec![0, 2]], 0), Err(ComplexError::NonDenseVertices { missing: 1, .. })));
        assert_eq!(build_complex(&[vec![]], 0), Err(ComplexError::EmptySimplex));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let k = build_complex(&[vec![2, 0], vec![1, 0]], 0).unwrap();
        let edges: Vec<_> = k.simplices(1).iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&circle()).count, 1);
        let two = build_complex(&[vec![0, 1], vec![2, 3]], 3).unwrap();
        let p = connected_components(&two);
        assert_eq!(p.count, 2);
        assert_eq!(p.basepoint_component, 1);
        assert_eq!(p.members(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(connected_components(&SimplicialComplex::point()).count, 1);
    }

    #[test]
    fn subdivision_examples() {
        assert_eq!(barycentric_subdivision(&SimplicialComplex::point()).f_vector(), vec![1]);
        let edge = build_complex(&[vec![0, 1]], 0).unwrap();
        assert_eq!(barycentric_subdivision(&edge).f_vector(), vec![3, 2]);
        let hex = barycentric_subdivision(&circle());
        assert_eq!(hex.f_vector(), vec![6, 6]);
        assert_eq!(hex.basepoint(), 0);
    }

    #[test]
    fn file_format() {
        let f = ComplexFile::parse(r#"{"vertices":3,"basepoint":0,"maximal_simplices":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(f.to_complex().unwrap(), circle());
        let gap = ComplexFile::parse(r#"{"vertices":3,"basepoint":0,"maximal_simplices":[[0,2]]}"#).unwrap();
        assert!(matches!(gap.to_complex(), Err(ComplexError::NonDenseVertices { missing: 1, .. })));
        let over = ComplexFile::parse(r#"{"vertices":2,"basepoint":0,"maximal_simplices":[[0,2]]}"#).unwrap();
        assert!(over.to_complex().is_err());
        assert!(ComplexFile::parse("{}").is_err());
        assert_eq!(circle().to_file().to_complex().unwrap(), circle());
    }

    #[test]
    fn subcomplexes() {
        let c = circle();
        let arc = c.subcomplex([Simplex::new(vec![0, 1]).unwrap()]).unwrap();
        assert_eq!(arc.f_vector(), vec![2, 1]);
        assert!(arc.is_subcomplex_of(&c));
        assert!(c.subcomplex([Simplex::new(vec![0, 1, 2]).unwrap()]).is_err());
        assert_eq!(c.maximal_simplices().len(), 3);
    }
}
