//! Finite categories given by explicit morphism lists and composition
//! tables, with posets as the main special case.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::HocolimError;
use crate::complexes::{Simplex, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
}

/// Objects `0..n`, morphisms by id, identities, and the composition table
/// `(f, g) -> g . f` for every composable pair.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    /// Morphism ids by source object, non-identities only.
    outgoing: Vec<Vec<usize>>,
    /// Unique morphism between an ordered pair, when the category is thin.
    hom: Option<HashMap<(usize, usize), usize>>,
}

impl FiniteCategory {
    /// Validates that identities are units and composition is associative,
    /// by exhaustive scan.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self, HocolimError> {
        let n = objects.len();
        let bad = |m: String| Err(HocolimError::InvalidCategory(m));
        if identities.len() != n {
            return bad("one identity per object required".into());
        }
        if morphisms.iter().any(|m| m.source >= n || m.target >= n) {
            return bad("morphism endpoint out of range".into());
        }
        for (o, &id) in identities.iter().enumerate() {
            if morphisms.get(id) != Some(&Morphism { source: o, target: o }) {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        let c = Self::assemble(objects, morphisms, identities, composition);
        c.validate()?;
        Ok(c)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let is_identity: BTreeSet<usize> = identities.iter().copied().collect();
        for (f, m) in morphisms.iter().enumerate() {
            if !is_identity.contains(&f) {
                outgoing[m.source].push(f);
            }
        }
        let mut hom = HashMap::new();
        let mut thin = true;
        for (f, m) in morphisms.iter().enumerate() {
            if hom.insert((m.source, m.target), f).is_some() {
                thin = false;
            }
        }
        Self { objects, morphisms, identities, composition, outgoing, hom: thin.then_some(hom) }
    }

    /// The poset on `0..n` with `i <= j` iff `leq(i, j)`; checks reflexivity,
    /// antisymmetry and transitivity.
    pub fn poset(objects: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, HocolimError> {
        let n = objects.len();
        let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        for i in 0..n {
            if !rel[i][i] {
                return Err(HocolimError::InvalidCategory(format!("relation not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && rel[i][j] && rel[j][i] {
                    return Err(HocolimError::InvalidCategory(format!("objects {i} and {j} are isomorphic")));
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut id_of = HashMap::new();
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    id_of.insert((i, j), morphisms.len());
                    if i == j {
                        identities[i] = morphisms.len();
                    }
                    morphisms.push(Morphism { source: i, target: j });
                }
            }
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in id_of.keys() {
            above[a].push(b);
        }
        let mut composition = HashMap::new();
        for (&(a, b), &f) in &id_of {
            for &c in &above[b] {
                let g = id_of[&(b, c)];
                let h = id_of
                    .get(&(a, c))
                    .ok_or_else(|| HocolimError::InvalidCategory(format!("relation not transitive: {a} <= {b} <= {c}")))?;
                composition.insert((f, g), *h);
            }
        }
        Ok(Self::assemble(objects, morphisms, identities, composition))
    }

    /// A single object with only its identity.
    pub fn point() -> Self {
        Self::poset(vec!["*".into()], |_, _| true).expect("valid")
    }

    /// One source object `0` with one arrow to each of `legs` further
    /// objects.
    pub fn star(legs: usize) -> Self {
        let names = std::iter::once("R1".to_string()).chain((2..=legs + 1).map(|i| format!("R1+R{i}"))).collect();
        Self::poset(names, |i, j| i == j || i == 0).expect("valid")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> Morphism {
        self.morphisms[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let m = self.morphisms[f];
        m.source == m.target && self.identities[m.source] == f
    }

    /// `g . f`, for `f : a -> b`, `g : b -> c`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    /// Non-identity morphisms out of `o`.
    pub fn outgoing(&self, o: usize) -> &[usize] {
        &self.outgoing[o]
    }

    /// Whether there is at most one morphism between any ordered pair.
    pub fn is_thin(&self) -> bool {
        self.hom.is_some()
    }

    /// The morphism `a -> b` of a thin category, if any.
    pub fn hom(&self, a: usize, b: usize) -> Option<usize> {
        self.hom.as_ref()?.get(&(a, b)).copied()
    }

    /// Unit and associativity laws on every composable pair and triple.
    pub fn validate(&self) -> Result<(), HocolimError> {
        let bad = |m: String| Err(HocolimError::InvalidCategory(m));
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for (f, m) in self.morphisms.iter().enumerate() {
            by_source[m.source].push(f);
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[m.source], f) != Some(f) || self.compose(f, self.identities[m.target]) != Some(f) {
                return bad(format!("identity law fails for morphism {f}"));
            }
            for &g in &by_source[m.target] {
                let Some(gf) = self.compose(f, g) else {
                    return bad(format!("composite of {f} then {g} missing"));
                };
                let expect = Morphism { source: m.source, target: self.morphisms[g].target };
                if self.morphisms[gf] != expect {
                    return bad(format!("composite of {f} then {g} has wrong endpoints"));
                }
                for &h in &by_source[self.morphisms[g].target] {
                    let left = self.compose(gf, h);
                    let right = self.compose(g, h).and_then(|hg| self.compose(f, hg));
                    if left.is_none() || left != right {
                        return bad(format!("associativity fails for {f}, {g}, {h}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Strings `f_1, ..., f_p` of composable non-identity morphisms
    /// (`target f_i = source f_{i+1}`) for `p = 0..=max_len`; the length-0
    /// strings are the objects, recorded as `[object]`.
    ///
    /// With `with_identities`, identities are allowed too (the unnormalized
    /// bar construction).
    pub fn composable_strings(&self, max_len: usize, with_identities: bool) -> Vec<Vec<Vec<usize>>> {
        let out_of = |o: usize| -> Vec<usize> {
            if with_identities {
                let mut v = vec![self.identities[o]];
                v.extend_from_slice(&self.outgoing[o]);
                v
            } else {
                self.outgoing[o].clone()
            }
        };
        let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..self.objects.len()).map(|o| vec![o]).collect()];
        if max_len == 0 {
            return levels;
        }
        let mut current: Vec<Vec<usize>> = (0..self.objects.len()).flat_map(|o| out_of(o).into_iter().map(|f| vec![f])).collect();
        for _ in 1..=max_len {
            let next: Vec<Vec<usize>> = current
                .iter()
                .flat_map(|s| {
                    let last = *s.last().expect("nonempty");
                    out_of(self.morphisms[last].target).into_iter().map(move |f| {
                        let mut t = s.clone();
                        t.push(f);
                        t
                    })
                })
                .collect();
            levels.push(std::mem::replace(&mut current, next));
            if levels.len() > max_len {
                break;
            }
        }
        levels
    }

    /// The full subcategory on `keep`, objects renumbered in the given
    /// order.
    pub fn full_subcategory(&self, keep: &[usize]) -> Self {
        let mut new_id = vec![usize::MAX; self.objects.len()];
        for (i, &o) in keep.iter().enumerate() {
            new_id[o] = i;
        }
        let mut morphism_id = HashMap::new();
        let mut morphisms = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if new_id[m.source] != usize::MAX && new_id[m.target] != usize::MAX {
                morphism_id.insert(f, morphisms.len());
                morphisms.push(Morphism { source: new_id[m.source], target: new_id[m.target] });
            }
        }
        let composition = self
            .composition
            .iter()
            .filter_map(|(&(f, g), &h)| Some(((*morphism_id.get(&f)?, *morphism_id.get(&g)?), morphism_id[&h])))
            .collect();
        let identities = keep.iter().map(|&o| morphism_id[&self.identities[o]]).collect();
        let names = keep.iter().map(|&o| self.objects[o].clone()).collect();
        Self::assemble(names, morphisms, identities, composition)
    }

    /// An object with exactly one morphism to every object.
    pub fn initial_object(&self) -> Option<usize> {
        let n = self.objects.len();
        (0..n).find(|&o| {
            let mut count = vec![0usize; n];
            for m in &self.morphisms {
                if m.source == o {
                    count[m.target] += 1;
                }
            }
            count.iter().all(|&c| c == 1)
        })
    }

    /// An object with exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<usize> {
        let n = self.objects.len();
        (0..n).find(|&o| {
            let mut count = vec![0usize; n];
            for m in &self.morphisms {
                if m.target == o {
                    count[m.source] += 1;
                }
            }
            count.iter().all(|&c| c == 1)
        })
    }

    /// The order complex: vertices are objects, simplices are chains.
    /// Thin categories only; `None` if the number of simplices would exceed
    /// `budget`.
    pub fn nerve(&self, budget: usize) -> Result<Option<SimplicialComplex>, HocolimError> {
        if !self.is_thin() {
            return Err(HocolimError::InvalidCategory("nerve as a complex needs a thin category".into()));
        }
        let n = self.objects.len();
        if n == 0 {
            return Ok(None);
        }
        // maximal chains generate the complex; enumerate all chains by extension
        let mut chains: Vec<Vec<usize>> = (0..n).map(|o| vec![o]).collect();
        let mut frontier = chains.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().expect("nonempty");
                for &f in &self.outgoing[last] {
                    let mut d = c.clone();
                    d.push(self.morphisms[f].target);
                    next.push(d);
                }
            }
            chains.extend(next.iter().cloned());
            if chains.len() > budget {
                return Ok(None);
            }
            frontier = next;
        }
        let simplices = chains.into_iter().map(|mut c| {
            c.sort_unstable();
            Simplex::new(c).expect("chains have distinct objects")
        });
        Ok(Some(SimplicialComplex::from_simplices(n, 0, simplices).expect("nerve is a complex")))
    }
}

/// A functor between finite categories, by its action on objects and
/// morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    /// Checks endpoints, identities and composites.
    pub fn new(source: &FiniteCategory, target: &FiniteCategory, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self, HocolimError> {
        let bad = |m: String| Err(HocolimError::InvalidFunctor(m));
        if objects.len() != source.object_count() || morphisms.len() != source.morphisms().len() {
            return bad("tables have the wrong length".into());
        }
        if objects.iter().any(|&o| o >= target.object_count()) || morphisms.iter().any(|&f| f >= target.morphisms().len()) {
            return bad("image out of range".into());
        }
        for (f, m) in source.morphisms().iter().enumerate() {
            let image = target.morphism(morphisms[f]);
            if image.source != objects[m.source] || image.target != objects[m.target] {
                return bad(format!("morphism {f} is sent to a morphism with the wrong endpoints"));
            }
        }
        for o in 0..source.object_count() {
            if morphisms[source.identity(o)] != target.identity(objects[o]) {
                return bad(format!("identity of object {o} not preserved"));
            }
        }
        for (&(f, g), &h) in &source.composition {
            if target.compose(morphisms[f], morphisms[g]) != Some(morphisms[h]) {
                return bad(format!("composite of {f} then {g} not preserved"));
            }
        }
        Ok(Self { objects, morphisms })
    }

    /// Between thin categories a functor is determined by an
    /// order-preserving object map.
    pub fn between_posets(source: &FiniteCategory, target: &FiniteCategory, objects: Vec<usize>) -> Result<Self, HocolimError> {
        let mut morphisms = Vec::with_capacity(source.morphisms().len());
        for m in source.morphisms() {
            let f = target
                .hom(objects[m.source], objects[m.target])
                .ok_or_else(|| HocolimError::InvalidFunctor(format!("order not preserved on {} <= {}", m.source, m.target)))?;
            morphisms.push(f);
        }
        Self::new(source, target, objects, morphisms)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let set: BTreeSet<_> = self.objects.iter().collect();
        set.len() == self.objects.len()
    }
}

/// The undercategory `star / F`: objects are pairs `(c, u : star -> F c)`,
/// morphisms `(c, u) -> (c', u')` are `g : c -> c'` with `F g . u = u'`.
/// Returns the category and the pairs.
pub fn undercategory(
    functor: &Functor,
    source: &FiniteCategory,
    target: &FiniteCategory,
    star: usize,
) -> Result<(FiniteCategory, Vec<(usize, usize)>), HocolimError> {
    let mut objects = Vec::new();
    for c in 0..source.object_count() {
        for (u, m) in target.morphisms().iter().enumerate() {
            if m.source == star && m.target == functor.objects[c] {
                objects.push((c, u));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::new();
    let mut lift: HashMap<(usize, usize), usize> = HashMap::new(); // (object index, g) -> morphism id
    for (i, &(c, u)) in objects.iter().enumerate() {
        for (g, m) in source.morphisms().iter().enumerate() {
            if m.source != c {
                continue;
            }
            let u2 = target.compose(u, functor.morphisms[g]).expect("composable");
            let j = index[&(m.target, u2)];
            lift.insert((i, g), morphisms.len());
            morphisms.push((Morphism { source: i, target: j }, g));
        }
    }
    let identities = (0..objects.len()).map(|i| lift[&(i, source.identity(objects[i].0))]).collect();
    let mut composition = HashMap::new();
    for (f, &(m, g)) in morphisms.iter().enumerate() {
        for (h, &(m2, g2)) in morphisms.iter().enumerate() {
            if m2.source == m.target {
                let gg = source.compose(g, g2).expect("composable");
                composition.insert((f, h), lift[&(m.source, gg)]);
            }
        }
    }
    let names = objects.iter().map(|&(c, _)| source.object_name(c).to_string()).collect();
    let cat = FiniteCategory::new(names, morphisms.into_iter().map(|p| p.0).collect(), identities, composition)?;
    Ok((cat, objects))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FiniteCategory {
        FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |i, j| i <= j).unwrap()
    }

    #[test]
    fn posets_validate() {
        let c = chain3();
        c.validate().unwrap();
        assert_eq!(c.morphisms().len(), 6);
        assert_eq!(c.initial_object(), Some(0));
        assert_eq!(c.terminal_object(), Some(2));
        assert!(FiniteCategory::poset(vec!["a".into(), "b".into()], |_, _| true).is_err());
        let not_transitive = FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |i, j| i == j || j == i + 1);
        assert!(not_transitive.is_err());
    }

    #[test]
    fn composable_strings_of_chain() {
        let c = chain3();
        let s = c.composable_strings(3, false);
        assert_eq!(s.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 1, 0]);
        let u = c.composable_strings(2, true);
        // nondecreasing sequences of length 2 and 3 in a 3-chain
        assert_eq!(u.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 6, 10]);
    }

    #[test]
    fn bad_composition_rejected() {
        // two parallel arrows a -> b that compose inconsistently with identities
        let morphisms = vec![
            Morphism { source: 0, target: 0 },
            Morphism { source: 1, target: 1 },
            Morphism { source: 0, target: 1 },
        ];
        let mut comp = HashMap::new();
        comp.insert((0, 0), 0);
        comp.insert((1, 1), 1);
        comp.insert((0, 2), 2);
        // missing (2, 1)
        assert!(FiniteCategory::new(vec!["a".into(), "b".into()], morphisms.clone(), vec![0, 1], comp.clone()).is_err());
        comp.insert((2, 1), 2);
        assert!(FiniteCategory::new(vec!["a".into(), "b".into()], morphisms, vec![0, 1], comp).is_ok());
    }

    #[test]
    fn nerve_of_span() {
        let span = FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |i, j| i == j || i == 1).unwrap();
        let n = span.nerve(100).unwrap().unwrap();
        assert_eq!(n.f_vector(), vec![3, 2]);
    }

    #[test]
    fn undercategories_of_identity_have_initial_objects() {
        let c = chain3();
        let id = Functor::between_posets(&c, &c, vec![0, 1, 2]).unwrap();
        for star in 0..3 {
            let (u, objs) = undercategory(&id, &c, &c, star).unwrap();
            assert_eq!(objs.len(), 3 - star);
            assert!(u.initial_object().is_some());
        }
        assert!(Functor::between_posets(&c, &c, vec![2, 1, 0]).is_err());
    }
}
