//! Posets of disk systems: pointed disjoint unions of collapsible
//! subcomplexes, ordered by inclusion.

use std::collections::HashMap;

use serde::Serialize;

use super::{FiniteCategory, HocolimError, SpaceDiagram};
use crate::complexes::{connected_components, is_collapsible, ElementaryCollapse, Simplex, SimplicialComplex};

/// Subcomplex visits allowed before exhaustive enumeration gives up.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 200_000;

/// Disk systems allowed before exhaustive enumeration gives up.
const OBJECT_BUDGET: usize = 400;

/// Which pieces disk systems are assembled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiskFamily {
    /// Every connected, greedily collapsible subcomplex.
    Exhaustive,
    /// Closed simplices only.
    ClosedSimplices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyChoice {
    /// Exhaustive if it fits the budget, closed simplices otherwise.
    Auto { budget: usize },
    Exhaustive { budget: usize },
    ClosedSimplices,
}

/// Vertex-disjoint connected collapsible subcomplexes of an ambient
/// complex, the first containing the basepoint.
#[derive(Clone, Debug)]
pub struct DiskSystem {
    components: Vec<SimplicialComplex>,
    certificates: Vec<Vec<ElementaryCollapse>>,
    union: SimplicialComplex,
}

impl DiskSystem {
    /// Checks every invariant: pieces are subcomplexes of `ambient`,
    /// pairwise vertex-disjoint, connected, greedily collapsible, and the
    /// first contains the basepoint.
    pub fn new(ambient: &SimplicialComplex, pieces: Vec<Vec<Simplex>>) -> Result<Self, HocolimError> {
        if pieces.is_empty() {
            return Err(HocolimError::NoComponents);
        }
        let mut seen = vec![false; ambient.vertex_count()];
        let mut components = Vec::with_capacity(pieces.len());
        let mut certificates = Vec::with_capacity(pieces.len());
        for (i, gens) in pieces.iter().enumerate() {
            let lowest = gens.iter().flat_map(|s| s.vertices().iter().copied()).min().ok_or(HocolimError::NoComponents)?;
            let base = if i == 0 { ambient.basepoint() } else { lowest };
            let piece = SimplicialComplex::from_simplices(ambient.vertex_count(), base, gens.iter().cloned())?;
            if !piece.is_subcomplex_of(ambient) {
                return Err(crate::complexes::ComplexError::NotASubcomplex(format!("component {i}")).into());
            }
            if i > 0 && piece.contains_vertex(ambient.basepoint()) {
                return Err(HocolimError::InvalidCategory(format!("component {i} contains the basepoint")));
            }
            for v in piece.vertices() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(HocolimError::InvalidCategory(format!("vertex {v} lies in two components")));
                }
            }
            if connected_components(&piece).count != 1 {
                return Err(HocolimError::InvalidCategory(format!("component {i} is disconnected")));
            }
            let cert = is_collapsible(&piece)
                .certificate()
                .ok_or_else(|| HocolimError::InvalidCategory(format!("component {i} has no collapse certificate")))?
                .to_vec();
            components.push(piece);
            certificates.push(cert);
        }
        let union =
            SimplicialComplex::from_simplices(ambient.vertex_count(), ambient.basepoint(), pieces.into_iter().flatten())?;
        Ok(Self { components, certificates, union })
    }

    pub fn components(&self) -> &[SimplicialComplex] {
        &self.components
    }

    pub fn certificate(&self, i: usize) -> &[ElementaryCollapse] {
        &self.certificates[i]
    }

    pub fn union(&self) -> &SimplicialComplex {
        &self.union
    }

    /// Vertex lists of the components.
    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(SimplicialComplex::vertices).collect()
    }
}

/// The poset of disk systems with its inclusion diagram.
#[derive(Clone, Debug)]
pub struct DiskPoset {
    pub family: DiskFamily,
    pub systems: Vec<DiskSystem>,
    pub diagram: SpaceDiagram,
}

impl DiskPoset {
    pub fn category(&self) -> &FiniteCategory {
        self.diagram.shape()
    }
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn bitset(n: usize, bits: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut b = vec![0u64; words(n)];
    for i in bits {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// A candidate component: its generating simplices, as global simplex ids
/// of the ambient complex, plus vertex and simplex bitsets.
struct Piece {
    simplices: Vec<usize>,
    vertices: Vec<u64>,
    cells: Vec<u64>,
    has_basepoint: bool,
}

struct Ambient<'a> {
    m: &'a SimplicialComplex,
    all: Vec<&'a Simplex>,
    id: HashMap<&'a Simplex, usize>,
}

impl<'a> Ambient<'a> {
    fn new(m: &'a SimplicialComplex) -> Self {
        let all: Vec<&Simplex> = m.iter().collect();
        let id = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self { m, all, id }
    }

    fn piece(&self, ids: Vec<usize>) -> Piece {
        let verts: Vec<usize> = ids.iter().filter(|&&i| self.all[i].dim() == 0).map(|&i| self.all[i].vertices()[0]).collect();
        Piece {
            has_basepoint: verts.contains(&self.m.basepoint()),
            vertices: bitset(self.m.vertex_count(), verts),
            cells: bitset(self.all.len(), ids.iter().copied()),
            simplices: ids,
        }
    }

    fn closure_ids(&self, s: &Simplex) -> Vec<usize> {
        let mut ids: Vec<usize> = s.all_faces().map(|f| self.id[&f]).collect();
        ids.sort_unstable();
        ids
    }

    /// Whether the simplices `ids` (downward closed) form a connected,
    /// greedily collapsible complex.
    fn is_disk(&self, ids: &[usize]) -> bool {
        let gens: Vec<Simplex> = ids.iter().map(|&i| self.all[i].clone()).collect();
        let base = gens[0].vertices()[0];
        let k = SimplicialComplex::from_simplices(self.m.vertex_count(), base, gens).expect("subcomplex");
        connected_components(&k).count == 1 && is_collapsible(&k).is_collapsible()
    }

    /// All nonempty connected collapsible subcomplexes, by backtracking
    /// over include/exclude decisions from the top dimension down.
    fn all_disks(&self, budget: usize) -> Result<Vec<Piece>, HocolimError> {
        let n = self.all.len();
        let faces: Vec<Vec<usize>> = self.all.iter().map(|s| s.faces().map(|f| self.id[&f]).collect()).collect();
        let mut forced = vec![0usize; n];
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        let mut visits = 0usize;
        // ids are dimension-major, so walking them downwards decides every
        // coface before its faces
        #[allow(clippy::too_many_arguments)]
        fn go(
            amb: &Ambient<'_>,
            i: usize,
            faces: &[Vec<usize>],
            forced: &mut [usize],
            chosen: &mut Vec<usize>,
            out: &mut Vec<Piece>,
            visits: &mut usize,
            budget: usize,
        ) -> Result<(), HocolimError> {
            *visits += 1;
            if *visits > budget {
                return Err(HocolimError::BudgetExceeded(budget));
            }
            if i == 0 {
                if !chosen.is_empty() {
                    let mut ids = chosen.clone();
                    ids.sort_unstable();
                    if amb.is_disk(&ids) {
                        out.push(amb.piece(ids));
                    }
                }
                return Ok(());
            }
            let s = i - 1;
            if forced[s] == 0 {
                go(amb, s, faces, forced, chosen, out, visits, budget)?;
            }
            for &f in &faces[s] {
                forced[f] += 1;
            }
            chosen.push(s);
            go(amb, s, faces, forced, chosen, out, visits, budget)?;
            chosen.pop();
            for &f in &faces[s] {
                forced[f] -= 1;
            }
            Ok(())
        }
        go(self, n, &faces, &mut forced, &mut chosen, &mut out, &mut visits, budget)?;
        Ok(out)
    }

    fn closed_simplices(&self) -> Vec<Piece> {
        self.all.iter().map(|s| self.piece(self.closure_ids(s))).collect()
    }
}

/// Systems of at most `max_components` pieces; the others are taken in
/// increasing piece order so each set of pieces appears once.
fn assemble_systems(pieces: &[Piece], max_components: usize, limit: Option<usize>) -> Result<Vec<Vec<usize>>, HocolimError> {
    let mut out = Vec::new();
    fn extend(
        pieces: &[Piece],
        current: &mut Vec<usize>,
        used: &mut Vec<u64>,
        from: usize,
        max: usize,
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
    ) -> Result<(), HocolimError> {
        out.push(current.clone());
        if limit.is_some_and(|l| out.len() > l) {
            return Err(HocolimError::BudgetExceeded(limit.unwrap_or(0)));
        }
        if current.len() == max {
            return Ok(());
        }
        for j in from..pieces.len() {
            let p = &pieces[j];
            if p.has_basepoint || !disjoint(used, &p.vertices) {
                continue;
            }
            for (u, v) in used.iter_mut().zip(&p.vertices) {
                *u |= v;
            }
            current.push(j);
            extend(pieces, current, used, j + 1, max, out, limit)?;
            current.pop();
            for (u, v) in used.iter_mut().zip(&p.vertices) {
                *u &= !v;
            }
        }
        Ok(())
    }
    if max_components == 0 {
        return Ok(out);
    }
    for (i, p) in pieces.iter().enumerate() {
        if p.has_basepoint {
            let mut used = p.vertices.clone();
            extend(pieces, &mut vec![i], &mut used, 0, max_components, &mut out, limit)?;
        }
    }
    Ok(out)
}

/// `disk_poset_with` using exhaustive enumeration when it fits the default
/// budget and closed simplices otherwise.
pub fn disk_poset(m: &SimplicialComplex, max_components: usize) -> Result<DiskPoset, HocolimError> {
    disk_poset_with(m, max_components, FamilyChoice::Auto { budget: DEFAULT_ENUMERATION_BUDGET })
}

/// Disk systems in `m` with at most `max_components` components, ordered
/// lexicographically by the simplex lists of their unions, with the
/// inclusion order. `m` must be connected.
pub fn disk_poset_with(m: &SimplicialComplex, max_components: usize, choice: FamilyChoice) -> Result<DiskPoset, HocolimError> {
    if connected_components(m).count != 1 {
        return Err(HocolimError::Disconnected);
    }
    disk_poset_unchecked(m, max_components, choice)
}

/// As `disk_poset_with`, without requiring `m` to be connected.
pub(crate) fn disk_poset_unchecked(
    m: &SimplicialComplex,
    max_components: usize,
    choice: FamilyChoice,
) -> Result<DiskPoset, HocolimError> {
    if max_components == 0 {
        return Err(HocolimError::NoComponents);
    }
    let amb = Ambient::new(m);
    let exhaustive = |budget: usize| -> Result<(Vec<Piece>, Vec<Vec<usize>>), HocolimError> {
        let pieces = amb.all_disks(budget)?;
        let systems = assemble_systems(&pieces, max_components, Some(OBJECT_BUDGET))?;
        Ok((pieces, systems))
    };
    let closed = || -> Result<(Vec<Piece>, Vec<Vec<usize>>), HocolimError> {
        let pieces = amb.closed_simplices();
        let systems = assemble_systems(&pieces, max_components, None)?;
        Ok((pieces, systems))
    };
    let (family, (pieces, systems)) = match choice {
        FamilyChoice::Exhaustive { budget } => (DiskFamily::Exhaustive, exhaustive(budget)?),
        FamilyChoice::ClosedSimplices => (DiskFamily::ClosedSimplices, closed()?),
        FamilyChoice::Auto { budget } => match exhaustive(budget) {
            Ok(r) => (DiskFamily::Exhaustive, r),
            Err(HocolimError::BudgetExceeded(_)) => (DiskFamily::ClosedSimplices, closed()?),
            Err(e) => return Err(e),
        },
    };

    // canonical order: lexicographic on the union's simplex list
    let mut keyed: Vec<(Vec<&Simplex>, Vec<usize>)> = systems
        .into_iter()
        .map(|sys| {
            let mut ids: Vec<usize> = sys.iter().flat_map(|&p| pieces[p].simplices.iter().copied()).collect();
            ids.sort_unstable();
            (ids.iter().map(|&i| amb.all[i]).collect(), sys)
        })
        .collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.0 == b.0);

    let cells: Vec<Vec<u64>> = keyed
        .iter()
        .map(|(_, sys)| {
            let mut b = vec![0u64; words(amb.all.len())];
            for &p in sys {
                for (x, y) in b.iter_mut().zip(&pieces[p].cells) {
                    *x |= y;
                }
            }
            b
        })
        .collect();
    let mut disk_systems = Vec::with_capacity(keyed.len());
    for (_, sys) in &keyed {
        let gens = sys.iter().map(|&p| pieces[p].simplices.iter().map(|&i| amb.all[i].clone()).collect()).collect();
        disk_systems.push(DiskSystem::new(m, gens)?);
    }
    let names = disk_systems
        .iter()
        .map(|d| d.vertex_lists().iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join("+"))
        .collect();
    let category = FiniteCategory::poset(names, |i, j| subset(&cells[i], &cells[j]))?;
    let values = disk_systems.iter().map(|d| d.union().clone()).collect();
    let diagram = SpaceDiagram::new(m.clone(), category, values)?;
    Ok(DiskPoset { family, systems: disk_systems, diagram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_complex, library};

    #[test]
    fn point_and_edge() {
        let p = disk_poset(&library::point(), 3).unwrap();
        assert_eq!(p.category().object_count(), 1);
        assert_eq!(p.category().morphisms().len(), 1);
        let e = build_complex(&[vec![0, 1]], 0).unwrap();
        let d = disk_poset(&e, 1).unwrap();
        assert_eq!(d.category().object_count(), 2);
        assert_eq!(d.category().morphisms().len(), 3);
        assert_eq!(d.family, DiskFamily::Exhaustive);
    }

    /// Brute force over all subsets of simplices.
    fn brute_force_count(m: &SimplicialComplex, max: usize) -> usize {
        let all: Vec<Simplex> = m.iter().cloned().collect();
        let mut unions = std::collections::BTreeSet::new();
        for mask in 1u64..(1 << all.len()) {
            let chosen: Vec<Simplex> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
            if chosen.iter().any(|s| s.faces().any(|f| !chosen.contains(&f))) || !chosen.contains(&Simplex::vertex(0)) {
                continue;
            }
            let k = SimplicialComplex::from_simplices(m.vertex_count(), 0, chosen.clone()).unwrap();
            let parts = connected_components(&k);
            if parts.count > max {
                continue;
            }
            let ok = parts.members().iter().all(|vs| {
                let set = vs.iter().copied().collect();
                let piece = k.induced(&set, vs[0]).unwrap();
                is_collapsible(&piece).is_collapsible()
            });
            if ok {
                unions.insert(chosen);
            }
        }
        unions.len()
    }

    #[test]
    fn triangle_circle_counts() {
        let c = library::circle3();
        assert_eq!(disk_poset(&c, 2).unwrap().category().object_count(), 11);
        for max in 1..=3 {
            assert_eq!(disk_poset(&c, max).unwrap().category().object_count(), brute_force_count(&c, max));
        }
    }

    #[test]
    fn hexagon_counts() {
        let c = library::circle6();
        let p = disk_poset(&c, 2).unwrap();
        assert_eq!(p.family, DiskFamily::Exhaustive);
        assert_eq!(p.category().object_count(), brute_force_count(&c, 2));
    }

    #[test]
    fn invariants_enforced() {
        let c = library::circle3();
        let s = |v: Vec<usize>| Simplex::new(v).unwrap();
        assert!(DiskSystem::new(&c, vec![vec![s(vec![0, 1])], vec![s(vec![2])]]).is_ok());
        assert!(DiskSystem::new(&c, vec![vec![s(vec![0, 1])], vec![s(vec![1, 2])]]).is_err());
        assert!(DiskSystem::new(&c, vec![vec![s(vec![1, 2])]]).is_err());
        assert!(DiskSystem::new(&c, vec![vec![s(vec![0, 1]), s(vec![1, 2]), s(vec![0, 2])]]).is_err());
        let two = build_complex(&[vec![0, 1], vec![2, 3]], 0).unwrap();
        assert!(matches!(disk_poset(&two, 2), Err(HocolimError::Disconnected)));
    }

    #[test]
    fn closed_simplex_family_of_torus() {
        let p = disk_poset(&library::torus9(), 2).unwrap();
        assert_eq!(p.family, DiskFamily::ClosedSimplices);
        // objects pair a closed simplex through the basepoint with an
        // optional vertex-disjoint closed simplex
        let t = library::torus9();
        let through: Vec<&Simplex> = t.iter().filter(|s| s.contains_vertex(0)).collect();
        let expected: usize = through
            .iter()
            .map(|s| 1 + t.iter().filter(|u| u.vertices().iter().all(|v| !s.contains_vertex(*v))).count())
            .sum();
        assert_eq!(p.category().object_count(), expected);
    }
}
