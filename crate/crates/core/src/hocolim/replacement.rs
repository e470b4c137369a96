//! The bar-complex model of a homotopy colimit of chain complexes, and the
//! two diagrams of chain complexes attached to a diagram of subcomplexes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ChainDiagram, HocolimError, SpaceDiagram};
use crate::complexes::{connected_components, inclusion_chain_map, reduced_chains};
use crate::homalg::{AbGroup, ChainComplex, ChainMap, CoeffGroup, SparseMatrix};

fn rank_at(c: &ChainComplex, q: usize) -> usize {
    if q <= c.top() {
        c.rank(q)
    } else {
        0
    }
}

/// Total complex of the simplicial replacement through total degree
/// `max_degree + 2`, so its homology is exact through `max_degree + 1`.
///
/// The `(p, q)` part is the sum over strings `c_0 -> ... -> c_p` of
/// non-identity morphisms of `D(c_0)_q`. Face `0` applies the first arrow,
/// the last face drops the last morphism, inner faces compose; a string
/// whose composite is an identity is degenerate and dropped.
pub fn simplicial_replacement(d: &ChainDiagram, max_degree: usize) -> Result<ChainComplex, HocolimError> {
    assemble(d, max_degree + 2, false)
}

/// The same construction with identities allowed in strings; larger, with
/// the same homology.
pub fn simplicial_replacement_unnormalized(d: &ChainDiagram, max_degree: usize) -> Result<ChainComplex, HocolimError> {
    assemble(d, max_degree + 2, true)
}

fn assemble(d: &ChainDiagram, top: usize, with_identities: bool) -> Result<ChainComplex, HocolimError> {
    let shape = d.shape();
    let strings = shape.composable_strings(top, with_identities);
    let first_object = |p: usize, s: &[usize]| if p == 0 { s[0] } else { shape.morphism(s[0]).source };
    let index: Vec<HashMap<&[usize], usize>> =
        strings.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();

    // offset[n][p][i]: position of string i of length p in total degree n
    let mut offset: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
    let mut ranks = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut next = 0;
        let mut by_p = Vec::new();
        for (p, level) in strings.iter().enumerate().take(n + 1) {
            let q = n - p;
            let offs = level
                .iter()
                .map(|s| {
                    let o = next;
                    next += rank_at(d.value(first_object(p, s)), q);
                    o
                })
                .collect();
            by_p.push(offs);
        }
        offset.push(by_p);
        ranks.push(next);
    }

    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let mut m = SparseMatrix::zeros(ranks[n - 1], 0);
        for (p, level) in strings.iter().enumerate().take(n + 1) {
            let q = n - p;
            let sign = |i: usize| BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            for s in level {
                let c0 = first_object(p, s);
                for j in 0..rank_at(d.value(c0), q) {
                    let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
                    let mut add = |row: usize, v: BigInt| *col.entry(row).or_insert_with(BigInt::zero) += v;
                    if p >= 1 {
                        // face 0: push the element along the first arrow
                        let rest: Vec<usize> = if p == 1 { vec![shape.morphism(s[0]).target] } else { s[1..].to_vec() };
                        let arrow = d.arrow(s[0]);
                        // above the arrow's top the target is zero
                        if q <= arrow.top() {
                            let base = offset[n - 1][p - 1][index[p - 1][rest.as_slice()]];
                            for (r, v) in arrow.component(q).expect("degree in range").column(j) {
                                add(base + r, v.clone());
                            }
                        }
                        // inner faces
                        for i in 1..p {
                            let h = shape.compose(s[i - 1], s[i]).expect("composable string");
                            if !with_identities && shape.is_identity(h) {
                                continue;
                            }
                            let mut t = s[..i - 1].to_vec();
                            t.push(h);
                            t.extend_from_slice(&s[i + 1..]);
                            add(offset[n - 1][p - 1][index[p - 1][t.as_slice()]] + j, sign(i));
                        }
                        // last face
                        let t: Vec<usize> = if p == 1 { vec![c0] } else { s[..p - 1].to_vec() };
                        add(offset[n - 1][p - 1][index[p - 1][t.as_slice()]] + j, sign(p));
                    }
                    if q >= 1 {
                        let base = offset[n - 1][p][index[p][s.as_slice()]];
                        let dq = d.value(c0).boundary(q).expect("degree in range");
                        for (r, v) in dq.column(j) {
                            add(base + r, sign(p) * v);
                        }
                    }
                    m.push_column(col.into_iter().collect());
                }
            }
        }
        boundaries.push(m);
    }
    let coeff = d.values().first().map_or_else(AbGroup::integers, |v| v.coeff().clone());
    Ok(ChainComplex::new(ranks, boundaries, coeff)?)
}

/// `U -> H~_0(U)` in degree 0: free on the components away from the
/// basepoint, listed by least vertex; an inclusion sends a component to the
/// component containing it, and to zero if that is the basepoint's.
pub fn h0_diagram(d: &SpaceDiagram, a: &CoeffGroup) -> Result<ChainDiagram, HocolimError> {
    let parts: Vec<_> = d.values().iter().map(connected_components).collect();
    // generator index of each component, None for the basepoint's
    let gen_of: Vec<Vec<Option<usize>>> = parts
        .iter()
        .map(|p| {
            let mut next = 0;
            (0..p.count)
                .map(|c| {
                    (c != p.basepoint_component).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let values: Vec<ChainComplex> = parts
        .iter()
        .map(|p| ChainComplex::new(vec![p.count - 1], Vec::new(), a.clone()).expect("no boundaries"))
        .collect();
    let members: Vec<Vec<Vec<usize>>> = parts.iter().map(|p| p.members()).collect();
    let arrows = d
        .shape()
        .morphisms()
        .iter()
        .map(|m| {
            let (s, t) = (m.source, m.target);
            let mut mat = SparseMatrix::zeros(parts[t].count - 1, 0);
            for (c, g) in gen_of[s].iter().enumerate() {
                if g.is_none() {
                    continue;
                }
                let v = members[s][c][0];
                let tc = parts[t].component_of[v].expect("inclusion keeps vertices");
                mat.push_column(gen_of[t][tc].map(|r| (r, BigInt::from(1))).into_iter().collect());
            }
            ChainMap::from_components(vec![mat])
        })
        .collect();
    ChainDiagram::new(d.shape().clone(), values, arrows)
}

/// `U -> C~(U)`, reduced simplicial chains with the inclusion maps.
pub fn chains_diagram(d: &SpaceDiagram, a: &CoeffGroup) -> Result<ChainDiagram, HocolimError> {
    let values: Vec<ChainComplex> = d.values().iter().map(|u| reduced_chains(u).with_coeff(a.clone())).collect();
    let arrows = d
        .shape()
        .morphisms()
        .iter()
        .map(|m| {
            let top = values[m.source].top().min(values[m.target].top());
            inclusion_chain_map(d.value(m.source), d.value(m.target), true, top)
        })
        .collect();
    ChainDiagram::new(d.shape().clone(), values, arrows)
}

/// Simplicial replacement of the reduced-chains diagram: chains on the
/// homotopy colimit of the spaces.
pub fn space_hocolim_chains(d: &SpaceDiagram, a: &CoeffGroup, max_degree: usize) -> Result<ChainComplex, HocolimError> {
    simplicial_replacement(&chains_diagram(d, a)?, max_degree)
}
