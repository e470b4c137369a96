//! Contractibility checks on cover subcategories and undercategories, and
//! the comparisons between homotopy colimits.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::disks::disk_poset_unchecked;
use super::replacement::chains_diagram;
use super::{
    disk_poset, h0_diagram, simplicial_replacement, undercategory, ChainDiagram, FamilyChoice, FiniteCategory, Functor,
    HocolimError, SpaceDiagram, DEFAULT_ENUMERATION_BUDGET,
};
use crate::complexes::{
    build_complex, connected_components, is_collapsible, reduced_chains, ChainBasis, Simplex, SimplicialComplex,
};
use crate::homalg::{homology, AbGroup, ChainComplex, ChainMap, CoeffGroup, SparseMatrix};

/// Largest nerve (in simplices) built for the collapse test.
const NERVE_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Certified(String),
    Refuted(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified(_) => "certified",
            Verdict::Refuted(_) => "refuted",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            Verdict::Certified(r) | Verdict::Refuted(r) | Verdict::Inconclusive(r) => r,
        }
    }
}

/// Sound but incomplete: an initial or terminal object, else a greedy
/// collapse of the nerve. Refutes an empty category, a disconnected
/// nerve, or a nerve with nonzero reduced homology.
pub fn certify_contractible(c: &FiniteCategory) -> Verdict {
    if c.object_count() == 0 {
        return Verdict::Refuted("empty".into());
    }
    if let Some(o) = c.initial_object() {
        return Verdict::Certified(format!("initial object {}", c.object_name(o)));
    }
    if let Some(o) = c.terminal_object() {
        return Verdict::Certified(format!("terminal object {}", c.object_name(o)));
    }
    if !c.is_thin() {
        return Verdict::Inconclusive("no initial or terminal object in a non-thin category".into());
    }
    let nerve = match c.nerve(NERVE_BUDGET) {
        Ok(Some(n)) => n,
        _ => return Verdict::Inconclusive(format!("nerve larger than {NERVE_BUDGET} simplices")),
    };
    let parts = connected_components(&nerve);
    if parts.count > 1 {
        return Verdict::Refuted(format!("nerve has {} components", parts.count));
    }
    if let Some(cert) = is_collapsible(&nerve).certificate() {
        return Verdict::Certified(format!("nerve collapses in {} steps", cert.len()));
    }
    match reduced_chains(&nerve).integral_homology(nerve.dim()) {
        Ok(h) => match h.iter().position(|g| !g.is_zero()) {
            Some(i) => Verdict::Refuted(format!("nerve has H~_{i} = {}", h[i])),
            None => Verdict::Inconclusive("nerve is acyclic but the greedy collapse got stuck".into()),
        },
        Err(e) => Verdict::Inconclusive(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexVerdict {
    pub simplex: Simplex,
    /// Objects whose value contains the simplex.
    pub objects: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SvkReport {
    pub simplices: Vec<SimplexVerdict>,
    pub certified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    /// Set when some verdict is inconclusive.
    pub suggestion: Option<String>,
}

impl SvkReport {
    pub fn all_certified(&self) -> bool {
        self.refuted == 0 && self.inconclusive == 0
    }

    /// First refuted simplex, if any.
    pub fn first_refuted(&self) -> Option<&SimplexVerdict> {
        self.simplices.iter().find(|s| s.verdict.is_refuted())
    }
}

/// For every simplex `x` of the ambient complex, contractibility of the
/// full subcategory of objects whose value contains `x`.
pub fn svk_check(d: &SpaceDiagram) -> SvkReport {
    let shape = d.shape();
    let simplices: Vec<SimplexVerdict> = d
        .ambient()
        .iter()
        .map(|x| {
            let keep: Vec<usize> = (0..shape.object_count()).filter(|&o| d.value(o).contains(x)).collect();
            let verdict = certify_contractible(&shape.full_subcategory(&keep));
            SimplexVerdict { simplex: x.clone(), objects: keep.len(), verdict }
        })
        .collect();
    let count = |f: fn(&Verdict) -> bool| simplices.iter().filter(|s| f(&s.verdict)).count();
    let certified = count(Verdict::is_certified);
    let refuted = count(Verdict::is_refuted);
    let inconclusive = simplices.len() - certified - refuted;
    let suggestion = (inconclusive > 0).then(|| "subdivide the complex once and check again".to_string());
    SvkReport { simplices, certified, refuted, inconclusive, suggestion }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectVerdict {
    pub object: usize,
    pub name: String,
    pub undercategory_size: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalityReport {
    pub objects: Vec<ObjectVerdict>,
}

impl FinalityReport {
    pub fn all_certified(&self) -> bool {
        self.objects.iter().all(|o| o.verdict.is_certified())
    }
}

/// For each object `*` of `c`, contractibility of the undercategory of the
/// embedding at `*`; nonempty contractible undercategories everywhere make
/// the embedding homotopy final.
pub fn finality_check(sub: &FiniteCategory, c: &FiniteCategory, embedding: &Functor) -> Result<FinalityReport, HocolimError> {
    let embedding = Functor::new(sub, c, embedding.objects.clone(), embedding.morphisms.clone())?;
    if !embedding.is_injective_on_objects() {
        return Err(HocolimError::InvalidFunctor("embedding is not injective on objects".into()));
    }
    let objects = (0..c.object_count())
        .map(|star| {
            let (u, pairs) = undercategory(&embedding, sub, c, star)?;
            Ok(ObjectVerdict {
                object: star,
                name: c.object_name(star).to_string(),
                undercategory_size: pairs.len(),
                verdict: certify_contractible(&u),
            })
        })
        .collect::<Result<_, HocolimError>>()?;
    Ok(FinalityReport { objects })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanExtensionReport {
    pub m: usize,
    /// Homotopy colimit over the star category.
    pub star_homology: Vec<AbGroup>,
    /// `H~_0` of an `m`-component object, in degree 0.
    pub expected: Vec<AbGroup>,
    pub star_matches: bool,
    /// Homotopy colimit over all pointed subsystems of at most two pieces
    /// inside `m` disjoint edges.
    pub slice_homology: Vec<AbGroup>,
    pub slice_matches: bool,
    /// The star category embedded in that slice.
    pub finality: FinalityReport,
}

impl KanExtensionReport {
    pub fn passed(&self) -> bool {
        self.star_matches && self.slice_matches && self.finality.all_certified()
    }
}

/// The star category on one source `R1` and `m - 1` targets `R1 + Ri`,
/// with `H~_0` values `0 -> A`; its homotopy colimit against `A^{m-1}`.
/// Also compares with the full slice of `m` disjoint edges and checks the
/// star is final in it.
pub fn kan_extension_check(m: usize, a: &CoeffGroup, max_degree: usize) -> Result<KanExtensionReport, HocolimError> {
    if m == 0 {
        return Err(HocolimError::NoComponents);
    }
    let star = FiniteCategory::star(m - 1);
    let values: Vec<ChainComplex> = (0..m)
        .map(|o| ChainComplex::new(vec![usize::from(o > 0)], Vec::new(), a.clone()).expect("no boundaries"))
        .collect();
    let arrows = star
        .morphisms()
        .iter()
        .map(|f| {
            let mut mat = SparseMatrix::zeros(values[f.target].rank(0), 0);
            for j in 0..values[f.source].rank(0) {
                mat.push_column(vec![(j, BigInt::from(1))]);
            }
            ChainMap::from_components(vec![mat])
        })
        .collect();
    let diagram = ChainDiagram::new(star.clone(), values, arrows)?;
    let star_homology = homology(&simplicial_replacement(&diagram, max_degree)?, a, max_degree)?;
    let mut expected = vec![a.power(m - 1)];
    expected.resize(max_degree + 1, AbGroup::zero());

    // m disjoint edges [2i, 2i+1], basepoint 0
    let edges: Vec<Vec<usize>> = (0..m).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let u = build_complex(&edges, 0)?;
    let slice = disk_poset_unchecked(&u, 2, FamilyChoice::Exhaustive { budget: DEFAULT_ENUMERATION_BUDGET })?;
    let slice_homology = homology(&simplicial_replacement(&h0_diagram(&slice.diagram, a)?, max_degree)?, a, max_degree)?;
    let edge = |i: usize| Simplex::new(edges[i].clone()).expect("edge");
    let find = |gens: Vec<Simplex>| -> Result<usize, HocolimError> {
        let target = SimplicialComplex::from_simplices(u.vertex_count(), 0, gens)?;
        slice
            .diagram
            .values()
            .iter()
            .position(|v| *v == target)
            .ok_or_else(|| HocolimError::InvalidFunctor("star object missing from the slice".into()))
    };
    let mut objects = vec![find(vec![edge(0)])?];
    for i in 1..m {
        objects.push(find(vec![edge(0), edge(i)])?);
    }
    let embedding = Functor::between_posets(&star, slice.category(), objects)?;
    let finality = finality_check(&star, slice.category(), &embedding)?;
    Ok(KanExtensionReport {
        m,
        star_matches: star_homology == expected,
        slice_matches: slice_homology == expected,
        star_homology,
        expected,
        slice_homology,
        finality,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainVsSpaceReport {
    /// Homotopy colimit of `H~_0` in degree 0.
    pub chain_level: Vec<AbGroup>,
    /// Homotopy colimit of the reduced chains of the component sets.
    pub space_level: Vec<AbGroup>,
    pub agree: bool,
    /// First degree where they differ.
    pub witness: Option<usize>,
    /// Homotopy colimit of the reduced chains of the values themselves.
    pub space_actual: Vec<AbGroup>,
    pub actual_agrees: bool,
}

/// Reduced chains of the discrete complex on the components of `u`.
fn component_set(u: &SimplicialComplex) -> (SimplicialComplex, Vec<Option<usize>>) {
    let parts = connected_components(u);
    let k = SimplicialComplex::from_simplices(parts.count, parts.basepoint_component, (0..parts.count).map(Simplex::vertex))
        .expect("nonempty");
    (k, parts.component_of)
}

/// The chain map of a vertex map on oriented simplices: collapsed simplices
/// go to zero, others to their image with the sign of the sorting
/// permutation.
fn vertex_map_chain_map(k: &SimplicialComplex, l: &SimplicialComplex, f: impl Fn(usize) -> usize, top: usize) -> ChainMap {
    let (bk, bl) = (ChainBasis::new(k, true), ChainBasis::new(l, true));
    let components = (0..=top)
        .map(|d| {
            let mut m = SparseMatrix::zeros(bl.rank(d), 0);
            for s in bk.generators(d) {
                let image: Vec<usize> = s.vertices().iter().map(|&v| f(v)).collect();
                let distinct: BTreeSet<usize> = image.iter().copied().collect();
                if distinct.len() < image.len() {
                    m.push_column(Vec::new());
                    continue;
                }
                let inversions = (0..image.len())
                    .flat_map(|i| (i + 1..image.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| image[i] > image[j])
                    .count();
                let sorted = Simplex::new(image).expect("distinct vertices");
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                m.push_column(bl.index_of(&sorted).map(|r| (r, BigInt::from(sign))).into_iter().collect());
            }
            m
        })
        .collect();
    ChainMap::from_components(components)
}

/// Compares the homotopy colimit of `H~_0(U)` in degree 0 with the
/// homotopy colimit of the chains of the component sets `pi_0(U)`, which
/// needs every component of every value to be collapsible.
pub fn compare_chain_vs_space(d: &SpaceDiagram, a: &CoeffGroup, max_degree: usize) -> Result<ChainVsSpaceReport, HocolimError> {
    for (o, u) in d.values().iter().enumerate() {
        let parts = connected_components(u);
        for vs in parts.members() {
            let piece = u.induced(&vs.iter().copied().collect(), vs[0])?;
            if !is_collapsible(&piece).is_collapsible() {
                return Err(HocolimError::NotPiecewiseCollapsible(o));
            }
        }
    }
    let chain_level = homology(&simplicial_replacement(&h0_diagram(d, a)?, max_degree)?, a, max_degree)?;

    let sets: Vec<(SimplicialComplex, Vec<Option<usize>>)> = d.values().iter().map(component_set).collect();
    let values: Vec<ChainComplex> = sets.iter().map(|(k, _)| reduced_chains(k).with_coeff(a.clone())).collect();
    let arrows = d
        .shape()
        .morphisms()
        .iter()
        .map(|m| {
            let (src, tgt) = (&sets[m.source], &sets[m.target]);
            let members = connected_components(d.value(m.source)).members();
            let f = |c: usize| tgt.1[members[c][0]].expect("inclusion keeps vertices");
            vertex_map_chain_map(&src.0, &tgt.0, f, values[m.source].top().min(values[m.target].top()))
        })
        .collect();
    let discrete = ChainDiagram::new(d.shape().clone(), values, arrows)?;
    let space_level = homology(&simplicial_replacement(&discrete, max_degree)?, a, max_degree)?;
    let space_actual = homology(&simplicial_replacement(&chains_diagram(d, a)?, max_degree)?, a, max_degree)?;
    let witness = (0..=max_degree).find(|&i| chain_level[i] != space_level[i]);
    Ok(ChainVsSpaceReport {
        agree: witness.is_none(),
        witness,
        actual_agrees: space_actual == chain_level,
        chain_level,
        space_level,
        space_actual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionLevel {
    pub max_components: usize,
    pub objects: usize,
    pub homology: Vec<AbGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub levels: Vec<RestrictionLevel>,
    pub agree: bool,
}

/// Homology of the `H~_0` homotopy colimit over disk posets with the given
/// component bounds.
pub fn restriction_invariance(
    m: &SimplicialComplex,
    a: &CoeffGroup,
    bounds: &[usize],
    max_degree: usize,
) -> Result<RestrictionReport, HocolimError> {
    let levels: Vec<RestrictionLevel> = bounds
        .iter()
        .map(|&k| {
            let p = disk_poset(m, k)?;
            let h = homology(&simplicial_replacement(&h0_diagram(&p.diagram, a)?, max_degree)?, a, max_degree)?;
            Ok(RestrictionLevel { max_components: k, objects: p.category().object_count(), homology: h })
        })
        .collect::<Result<_, HocolimError>>()?;
    let agree = levels.windows(2).all(|w| w[0].homology == w[1].homology);
    Ok(RestrictionReport { levels, agree })
}
