//! The end-to-end comparison of homotopy groups of the free simplicial
//! module, the homotopy colimit of `H~_0` over disk systems, and reduced
//! homology.

use serde::Serialize;

use super::{disk_poset, h0_diagram, simplicial_replacement, svk_check, DiskFamily, DiskPoset, HocolimError, SvkReport};
use crate::complexes::{reduced_chains, to_simplicial_set, Simplex, SimplicialComplex};
use crate::doldkan::{free_module, homotopy_groups, normalized_chains};
use crate::homalg::{homology, is_quasi_iso, AbGroup, ChainMap, CoeffGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub first: &'static str,
    pub second: &'static str,
    pub agree: bool,
    /// First degree of disagreement with the two groups there.
    pub witness: Option<(usize, AbGroup, AbGroup)>,
}

fn agreement(first: &'static str, a: &[AbGroup], second: &'static str, b: &[AbGroup]) -> Agreement {
    let witness = a.iter().zip(b).enumerate().find(|(_, (x, y))| x != y).map(|(i, (x, y))| (i, x.clone(), y.clone()));
    Agreement { first, second, agree: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoldThomReport {
    pub coeff: AbGroup,
    pub max_degree: usize,
    /// Homotopy groups of `A[M]/A[*]` from the Moore complex.
    pub homotopy: Vec<AbGroup>,
    /// Homotopy colimit of `H~_0` over pointed disk systems of at most two
    /// components.
    pub hocolim: Vec<AbGroup>,
    /// Reduced simplicial homology.
    pub homology: Vec<AbGroup>,
    /// Normalized chains of the module against reduced simplicial chains.
    pub normalized_quasi_iso: bool,
    pub family: DiskFamily,
    pub objects: usize,
    pub svk: SvkReport,
    pub agreements: Vec<Agreement>,
}

impl DoldThomReport {
    pub fn groups_agree(&self) -> bool {
        self.agreements.iter().all(|a| a.agree)
    }

    pub fn passed(&self) -> bool {
        self.groups_agree() && self.normalized_quasi_iso && self.svk.all_certified()
    }
}

pub fn dold_thom_verify(m: &SimplicialComplex, a: &CoeffGroup, max_degree: usize) -> Result<DoldThomReport, HocolimError> {
    let set = to_simplicial_set(m, max_degree + 1);
    let module = free_module(&set, a);
    let homotopy = homotopy_groups(&module, max_degree)?;

    let poset = disk_poset(m, 2)?;
    let svk = svk_check(&poset.diagram);
    let hocolim = homology(&simplicial_replacement(&h0_diagram(&poset.diagram, a)?, max_degree)?, a, max_degree)?;

    let top = max_degree + 1;
    let simplicial = reduced_chains(m).padded(top).truncated(top);
    let homology_groups = homology(&simplicial, a, max_degree)?;

    // with vertices in ascending order the nondegenerate simplices of the
    // associated set line up with the simplices of the complex
    let normalized = normalized_chains(&module, max_degree)?;
    let identity = ChainMap::identity(&normalized);
    let normalized_quasi_iso =
        is_quasi_iso(&identity, &normalized, &simplicial.clone().with_coeff(a.clone()), max_degree).is_ok_and(|r| r.is_quasi_iso);

    let agreements = vec![
        agreement("homotopy", &homotopy, "hocolim", &hocolim),
        agreement("hocolim", &hocolim, "homology", &homology_groups),
        agreement("homotopy", &homotopy, "homology", &homology_groups),
    ];
    Ok(DoldThomReport {
        coeff: a.clone(),
        max_degree,
        homotopy,
        hocolim,
        homology: homology_groups,
        normalized_quasi_iso,
        family: poset.family,
        objects: poset.category().object_count(),
        svk,
        agreements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DumpObject {
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DumpVerdict {
    pub simplex: Simplex,
    pub verdict: &'static str,
    pub reason: String,
}

/// JSON form of a disk poset: objects by component vertex lists,
/// non-identity morphisms as index pairs, and SVK verdicts when computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverDump {
    pub family: DiskFamily,
    pub objects: Vec<DumpObject>,
    pub morphisms: Vec<[usize; 2]>,
    pub svk: Vec<DumpVerdict>,
}

impl CoverDump {
    pub fn new(poset: &DiskPoset, svk: Option<&SvkReport>) -> Self {
        let c = poset.category();
        Self {
            family: poset.family,
            objects: poset.systems.iter().map(|s| DumpObject { components: s.vertex_lists() }).collect(),
            morphisms: (0..c.morphisms().len())
                .filter(|&f| !c.is_identity(f))
                .map(|f| [c.morphism(f).source, c.morphism(f).target])
                .collect(),
            svk: svk
                .map(|r| {
                    r.simplices
                        .iter()
                        .map(|s| DumpVerdict {
                            simplex: s.simplex.clone(),
                            verdict: s.verdict.label(),
                            reason: s.verdict.reason().to_string(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}
