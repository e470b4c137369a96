//! Labelled finite configurations in a finite pointed set.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::SymError;
use crate::homalg::{AbGroup, CoeffGroup};

/// An element of `A = Z^r + Z/q_1 + ...` by coordinates: the first `r`
/// arbitrary, the rest reduced modulo their `q_i`.
pub type Element = Vec<i64>;

fn reduce(a: &CoeffGroup, mut x: Element) -> Result<Element, SymError> {
    let width = a.rank() + a.torsion().len();
    if x.len() != width {
        return Err(SymError::BadElement { expected: width, got: x.len() });
    }
    for (c, &q) in x[a.rank()..].iter_mut().zip(a.torsion()) {
        *c = c.rem_euclid(q as i64);
    }
    Ok(x)
}

pub fn identity_element(a: &CoeffGroup) -> Element {
    vec![0; a.rank() + a.torsion().len()]
}

pub fn add_elements(a: &CoeffGroup, x: &Element, y: &Element) -> Element {
    reduce(a, x.iter().zip(y).map(|(u, v)| u + v).collect()).expect("same width")
}

pub fn negate_element(a: &CoeffGroup, x: &Element) -> Element {
    reduce(a, x.iter().map(|u| -u).collect()).expect("same width")
}

/// Every element of a finite group, lexicographically.
pub fn group_elements(a: &CoeffGroup) -> Result<Vec<Element>, SymError> {
    let all = a.elements().ok_or_else(|| SymError::InfiniteGroup(a.clone()))?;
    Ok(all.into_iter().map(|v| v.into_iter().map(|c| c as i64).collect()).collect())
}

/// The points `0..size`, one of them the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointedSet {
    pub size: usize,
    pub basepoint: usize,
}

impl PointedSet {
    pub fn new(size: usize, basepoint: usize) -> Result<Self, SymError> {
        if basepoint >= size {
            return Err(SymError::PointOutOfRange { point: basepoint, size });
        }
        Ok(Self { size, basepoint })
    }

    /// `I_+`: the basepoint `0` added to the points `1..=n`.
    pub fn plus(n: usize) -> Self {
        Self { size: n + 1, basepoint: 0 }
    }

    /// The points other than the basepoint.
    pub fn free_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&p| p != self.basepoint)
    }
}

/// A finite subset containing the basepoint with labels off the basepoint,
/// in normal form: no label is the identity, so the support is the
/// basepoint plus the labelled points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Configuration {
    carrier_size: usize,
    basepoint: usize,
    labels: BTreeMap<usize, Element>,
}

impl Configuration {
    /// The configuration consisting of the basepoint alone.
    pub fn basepoint_only(carrier: PointedSet) -> Self {
        Self { carrier_size: carrier.size, basepoint: carrier.basepoint, labels: BTreeMap::new() }
    }

    pub fn carrier(&self) -> PointedSet {
        PointedSet { size: self.carrier_size, basepoint: self.basepoint }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        std::iter::once(self.basepoint).chain(self.labels.keys().copied()).collect()
    }

    pub fn labels(&self) -> &BTreeMap<usize, Element> {
        &self.labels
    }

    pub fn label(&self, p: usize) -> Option<&Element> {
        self.labels.get(&p)
    }
}

/// Normal form of `(S, l)`: drops identity labels and any basepoint label.
pub fn normalize(
    carrier: PointedSet,
    support: &BTreeSet<usize>,
    labels: &BTreeMap<usize, Element>,
    a: &CoeffGroup,
) -> Result<Configuration, SymError> {
    if !support.contains(&carrier.basepoint) {
        return Err(SymError::MissingBasepoint);
    }
    if let Some(&p) = support.iter().find(|&&p| p >= carrier.size) {
        return Err(SymError::PointOutOfRange { point: p, size: carrier.size });
    }
    let e = identity_element(a);
    let mut out = BTreeMap::new();
    for (&p, x) in labels {
        if !support.contains(&p) {
            return Err(SymError::LabelOffSupport(p));
        }
        let x = reduce(a, x.clone())?;
        if p != carrier.basepoint && x != e {
            out.insert(p, x);
        }
    }
    Ok(Configuration { carrier_size: carrier.size, basepoint: carrier.basepoint, labels: out })
}

/// The normal-form configurations on one carrier with labels in a finite
/// group, under labelwise addition.
#[derive(Clone, Debug)]
pub struct SymGroup {
    carrier: PointedSet,
    coeff: CoeffGroup,
}

impl SymGroup {
    pub fn new(carrier: PointedSet, coeff: CoeffGroup) -> Self {
        Self { carrier, coeff }
    }

    pub fn carrier(&self) -> PointedSet {
        self.carrier
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn zero(&self) -> Configuration {
        Configuration::basepoint_only(self.carrier)
    }

    pub fn add(&self, x: &Configuration, y: &Configuration) -> Configuration {
        let e = identity_element(&self.coeff);
        let mut labels = x.labels.clone();
        for (&p, v) in &y.labels {
            let sum = add_elements(&self.coeff, labels.get(&p).unwrap_or(&e), v);
            if sum == e {
                labels.remove(&p);
            } else {
                labels.insert(p, sum);
            }
        }
        Configuration { labels, ..x.clone() }
    }

    pub fn negate(&self, x: &Configuration) -> Configuration {
        let labels = x.labels.iter().map(|(&p, v)| (p, negate_element(&self.coeff, v))).collect();
        Configuration { labels, ..x.clone() }
    }

    /// All configurations, in order of the label functions they come from.
    pub fn elements(&self) -> Result<Vec<Configuration>, SymError> {
        let values = group_elements(&self.coeff)?;
        let points: Vec<usize> = self.carrier.free_points().collect();
        let mut out = vec![self.zero()];
        let e = identity_element(&self.coeff);
        for &p in &points {
            out = out
                .into_iter()
                .flat_map(|c| {
                    let e = &e;
                    values.iter().map(move |v| {
                        let mut c = c.clone();
                        if v != e {
                            c.labels.insert(p, v.clone());
                        }
                        c
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

/// Outcome of the exhaustive comparison of `Sym(I_+; A)` with `A^I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymFiniteReport {
    pub points: usize,
    pub coeff: AbGroup,
    pub configurations: usize,
    /// `A^I` in normal form.
    pub power: AbGroup,
    pub g_after_f_is_identity: bool,
    pub f_after_g_is_identity: bool,
    pub f_is_homomorphism: bool,
}

impl SymFiniteReport {
    pub fn passed(&self) -> bool {
        self.g_after_f_is_identity
            && self.f_after_g_is_identity
            && self.f_is_homomorphism
            && Some(self.configurations as u64) == self.power.order()
    }
}

/// The configuration group on `I_+` with both directions of its
/// identification with `A^I` tabulated.
#[derive(Clone, Debug)]
pub struct SymFinite {
    pub group: SymGroup,
    pub configurations: Vec<Configuration>,
    /// `f`: configuration to its label tuple, `e` off the support.
    pub f: HashMap<Configuration, Vec<Element>>,
    /// `g`: label tuple to the configuration labelling point `i` by entry `i`.
    pub g: HashMap<Vec<Element>, Configuration>,
}

/// `f(S, l)_i = l(i)` for `i` in `S`, else `e`; `g` is its inverse.
pub fn sym_finite(points: usize, a: &CoeffGroup) -> Result<(SymFinite, SymFiniteReport), SymError> {
    let carrier = PointedSet::plus(points);
    let group = SymGroup::new(carrier, a.clone());
    let configurations = group.elements()?;
    let e = identity_element(a);
    let f_of = |c: &Configuration| -> Vec<Element> {
        (1..=points).map(|i| if c.support().contains(&i) { c.labels[&i].clone() } else { e.clone() }).collect()
    };
    let values = group_elements(a)?;
    let mut tuples: Vec<Vec<Element>> = vec![Vec::new()];
    for _ in 0..points {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    let g_of = |t: &Vec<Element>| -> Result<Configuration, SymError> {
        let support = (0..=points).collect();
        let labels = t.iter().enumerate().map(|(i, v)| (i + 1, v.clone())).collect();
        normalize(carrier, &support, &labels, a)
    };
    let f: HashMap<Configuration, Vec<Element>> = configurations.iter().map(|c| (c.clone(), f_of(c))).collect();
    let g: HashMap<Vec<Element>, Configuration> =
        tuples.iter().map(|t| Ok((t.clone(), g_of(t)?))).collect::<Result<_, SymError>>()?;

    let g_after_f_is_identity = configurations.iter().all(|c| g.get(&f[c]) == Some(c));
    let f_after_g_is_identity = tuples.len() == configurations.len() && tuples.iter().all(|t| f.get(&g[t]) == Some(t));
    let add_tuples = |s: &[Element], t: &[Element]| -> Vec<Element> { s.iter().zip(t).map(|(x, y)| add_elements(a, x, y)).collect() };
    let f_is_homomorphism = f[&group.zero()].iter().all(|x| *x == e)
        && configurations.iter().all(|c| configurations.iter().all(|d| f[&group.add(c, d)] == add_tuples(&f[c], &f[d])));
    let report = SymFiniteReport {
        points,
        coeff: a.clone(),
        configurations: configurations.len(),
        power: a.power(points),
        g_after_f_is_identity,
        f_after_g_is_identity,
        f_is_homomorphism,
    };
    Ok((SymFinite { group, configurations, f, g }, report))
}

/// A map of finite pointed sets by its value on each point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedMap {
    pub source: PointedSet,
    pub target: PointedSet,
    pub map: Vec<usize>,
}

impl PointedMap {
    /// Checks that values land in the target; pointedness is checked where
    /// it matters.
    pub fn new(source: PointedSet, target: PointedSet, map: Vec<usize>) -> Result<Self, SymError> {
        if map.len() != source.size {
            return Err(SymError::PointOutOfRange { point: map.len(), size: source.size });
        }
        if let Some(&p) = map.iter().find(|&&p| p >= target.size) {
            return Err(SymError::PointOutOfRange { point: p, size: target.size });
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(s: PointedSet) -> Self {
        Self { source: s, target: s, map: (0..s.size).collect() }
    }

    pub fn is_pointed(&self) -> bool {
        self.map[self.source.basepoint] == self.target.basepoint
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len()
    }

    /// `after . self`
    pub fn then(&self, after: &PointedMap) -> PointedMap {
        Self { source: self.source, target: after.target, map: self.map.iter().map(|&p| after.map[p]).collect() }
    }
}

/// Labels summed over fibres; whatever lands on the basepoint vanishes.
pub fn pushforward(f: &PointedMap, c: &Configuration, a: &CoeffGroup) -> Result<Configuration, SymError> {
    if !f.is_pointed() {
        return Err(SymError::NotPointed);
    }
    if c.carrier() != f.source {
        return Err(SymError::CarrierMismatch);
    }
    let e = identity_element(a);
    let mut labels: BTreeMap<usize, Element> = BTreeMap::new();
    for (&p, v) in &c.labels {
        let q = f.map[p];
        let sum = add_elements(a, labels.get(&q).unwrap_or(&e), v);
        labels.insert(q, sum);
    }
    let mut support: BTreeSet<usize> = labels.keys().copied().collect();
    support.insert(f.target.basepoint);
    normalize(f.target, &support, &labels, a)
}

/// Which configurations were compared.
#[derive(Clone, Debug)]
pub enum Sample {
    /// Every pair of configurations on the source (finite `A` only).
    Exhaustive,
    Pairs(Vec<(Configuration, Configuration)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub map_is_injective: bool,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    /// Two different configurations with the same image.
    pub collision: Option<(Configuration, Configuration, Configuration)>,
}

impl InjectivityReport {
    pub fn injective_on_sample(&self) -> bool {
        self.collision.is_none()
    }
}

/// Looks for two configurations identified by `pushforward(g, -)`.
pub fn check_injectivity(g: &PointedMap, a: &CoeffGroup, sample: &Sample) -> Result<InjectivityReport, SymError> {
    let (collision, pairs_checked, exhaustive) = match sample {
        Sample::Exhaustive => {
            let all = SymGroup::new(g.source, a.clone()).elements()?;
            let mut seen: HashMap<Configuration, Configuration> = HashMap::new();
            let mut collision = None;
            for c in &all {
                let image = pushforward(g, c, a)?;
                if let Some(prev) = seen.get(&image) {
                    collision.get_or_insert_with(|| (prev.clone(), c.clone(), image.clone()));
                } else {
                    seen.insert(image, c.clone());
                }
            }
            (collision, all.len() * all.len(), true)
        }
        Sample::Pairs(pairs) => {
            let mut collision = None;
            for (c, d) in pairs {
                if c == d {
                    continue;
                }
                let (ic, id) = (pushforward(g, c, a)?, pushforward(g, d, a)?);
                if ic == id {
                    collision = Some((c.clone(), d.clone(), ic));
                    break;
                }
            }
            (collision, pairs.len(), false)
        }
    };
    Ok(InjectivityReport { map_is_injective: g.is_injective(), exhaustive, pairs_checked, collision })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> CoeffGroup {
        AbGroup::cyclic(2)
    }

    fn config(carrier: PointedSet, labels: &[(usize, i64)], a: &CoeffGroup) -> Configuration {
        let mut support: BTreeSet<usize> = labels.iter().map(|l| l.0).collect();
        support.insert(carrier.basepoint);
        let labels = labels.iter().map(|&(p, v)| (p, vec![v])).collect();
        normalize(carrier, &support, &labels, a).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let c = PointedSet::plus(2);
        let a = z2();
        // ({*, x}, x -> e) is the basepoint alone
        assert_eq!(config(c, &[(1, 0)], &a), Configuration::basepoint_only(c));
        assert_eq!(config(c, &[], &a), Configuration::basepoint_only(c));
        let n = config(c, &[(1, 1), (2, 0)], &a);
        assert_eq!(n.support(), BTreeSet::from([0, 1]));
        assert_eq!(n.label(1), Some(&vec![1]));
        let missing = normalize(c, &BTreeSet::from([1]), &BTreeMap::new(), &a);
        assert_eq!(missing, Err(SymError::MissingBasepoint));
    }

    #[test]
    fn lemma_examples() {
        let (_, r) = sym_finite(2, &z2()).unwrap();
        assert_eq!(r.configurations, 4);
        assert_eq!(r.power, AbGroup::new(0, vec![2, 2]).unwrap());
        assert!(r.passed());
        let (s, r) = sym_finite(0, &z2()).unwrap();
        assert_eq!(r.configurations, 1);
        assert_eq!(s.configurations, vec![s.group.zero()]);
        let (_, r) = sym_finite(1, &AbGroup::cyclic(3)).unwrap();
        assert_eq!(r.power, AbGroup::cyclic(3));
        assert!(r.passed());
        assert!(matches!(sym_finite(1, &AbGroup::integers()), Err(SymError::InfiniteGroup(_))));
    }

    #[test]
    fn pushforward_examples() {
        let a = AbGroup::cyclic(4);
        let src = PointedSet::plus(2);
        let c = config(src, &[(1, 1), (2, 3)], &a);
        assert_eq!(pushforward(&PointedMap::identity(src), &c, &a).unwrap(), c);
        let tgt = PointedSet::plus(1);
        let merge = PointedMap::new(src, tgt, vec![0, 1, 1]).unwrap();
        // 1 + 3 = 0 in Z/4, so the merged label vanishes
        assert_eq!(pushforward(&merge, &c, &a).unwrap(), Configuration::basepoint_only(tgt));
        let d = config(src, &[(1, 1), (2, 2)], &a);
        assert_eq!(pushforward(&merge, &d, &a).unwrap(), config(tgt, &[(1, 3)], &a));
        let kill = PointedMap::new(src, tgt, vec![0, 0, 1]).unwrap();
        assert_eq!(pushforward(&kill, &d, &a).unwrap(), config(tgt, &[(1, 2)], &a));
        let unpointed = PointedMap::new(src, tgt, vec![1, 0, 0]).unwrap();
        assert_eq!(pushforward(&unpointed, &d, &a), Err(SymError::NotPointed));
    }

    #[test]
    fn injectivity_examples() {
        let a = z2();
        let (two, three) = (PointedSet::plus(2), PointedSet::plus(3));
        let inc = PointedMap::new(two, three, vec![0, 1, 2]).unwrap();
        let r = check_injectivity(&inc, &a, &Sample::Exhaustive).unwrap();
        assert!(r.injective_on_sample() && r.exhaustive);
        assert_eq!(r.pairs_checked, 16);
        let id = PointedMap::identity(three);
        assert!(check_injectivity(&id, &a, &Sample::Exhaustive).unwrap().injective_on_sample());
        let collapse = PointedMap::new(two, PointedSet::plus(1), vec![0, 1, 1]).unwrap();
        let r = check_injectivity(&collapse, &a, &Sample::Exhaustive).unwrap();
        let (c, d, image) = r.collision.unwrap();
        assert_ne!(c, d);
        assert_eq!(pushforward(&collapse, &c, &a).unwrap(), image);
        assert_eq!(pushforward(&collapse, &d, &a).unwrap(), image);
        // a + a = e: both points labelled collide with the empty configuration
        let both = config(two, &[(1, 1), (2, 1)], &a);
        let pairs = Sample::Pairs(vec![(Configuration::basepoint_only(two), both)]);
        let r = check_injectivity(&collapse, &a, &pairs).unwrap();
        assert_eq!(r.collision.unwrap().2, Configuration::basepoint_only(PointedSet::plus(1)));
        assert!(!r.map_is_injective);
    }
}
