//! Greedy elementary collapses.

use std::collections::BTreeSet;

use serde::Serialize;

use super::complex::{Simplex, SimplicialComplex};

/// Removal of a free face together with its unique coface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryCollapse {
    pub face: Simplex,
    pub coface: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CollapseOutcome {
    /// Collapses in the order performed; what remains is a single vertex.
    Collapsible(Vec<ElementaryCollapse>),
    /// The greedy search ran out of free faces with `remaining` simplices
    /// left. This does not show that no collapse sequence exists.
    Stuck { performed: usize, remaining: usize },
}

impl CollapseOutcome {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, CollapseOutcome::Collapsible(_))
    }

    pub fn certificate(&self) -> Option<&[ElementaryCollapse]> {
        match self {
            CollapseOutcome::Collapsible(c) => Some(c),
            CollapseOutcome::Stuck { .. } => None,
        }
    }
}

/// Repeatedly removes the least free face (by dimension, then
/// lexicographically) with its coface.
pub fn is_collapsible(k: &SimplicialComplex) -> CollapseOutcome {
    // global ids: dimension-major, lexicographic within a dimension, so
    // comparing ids is the tie-breaking order
    let mut offset = vec![0usize];
    for d in 0..=k.dim() {
        offset.push(offset[d] + k.count(d));
    }
    let n = offset[k.dim() + 1];
    let id = |s: &Simplex| offset[s.dim()] + k.index_of(s).expect("face is stored");
    let simplex: Vec<&Simplex> = k.iter().collect();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in simplex.iter().enumerate() {
        for f in s.faces() {
            let j = id(&f);
            faces[i].push(j);
            cofaces[j].push(i);
        }
    }
    let mut live = vec![true; n];
    let mut live_cofaces: Vec<usize> = cofaces.iter().map(Vec::len).collect();
    let mut remaining = n;
    let mut candidates: BTreeSet<usize> = (0..n).filter(|&i| live_cofaces[i] == 1).collect();
    let mut certificate = Vec::new();

    while let Some(sigma) = candidates.pop_first() {
        if !live[sigma] || live_cofaces[sigma] != 1 {
            continue;
        }
        let tau = *cofaces[sigma].iter().find(|&&c| live[c]).expect("one live coface");
        if live_cofaces[tau] != 0 {
            continue;
        }
        live[sigma] = false;
        live[tau] = false;
        remaining -= 2;
        certificate.push(ElementaryCollapse { face: simplex[sigma].clone(), coface: simplex[tau].clone() });
        for &f in faces[tau].iter().chain(&faces[sigma]) {
            if !live[f] {
                continue;
            }
            live_cofaces[f] -= 1;
            match live_cofaces[f] {
                1 => {
                    candidates.insert(f);
                }
                // f became maximal, so its own faces may now be free
                0 => candidates.extend(faces[f].iter().copied().filter(|&g| live[g] && live_cofaces[g] == 1)),
                _ => {}
            }
        }
    }
    if remaining == 1 {
        CollapseOutcome::Collapsible(certificate)
    } else {
        CollapseOutcome::Stuck { performed: certificate.len(), remaining }
    }
}
