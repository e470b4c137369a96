//! Symmetric powers `SP^d X = X^d / S_d` and the stabilization maps.

use std::collections::HashMap;

use super::SymError;
use crate::complexes::{SimplicialMap, SimplicialSet, SimplicialTables};

/// `SP^d X` through a dimension bound. A `k`-simplex is an unordered
/// `d`-tuple of `k`-simplices of `X`, stored sorted; orbits of the
/// coordinate permutation action on `X^d` correspond to these tuples, and
/// the sorted tuple is the lexicographically least member of its orbit.
#[derive(Clone, Debug)]
pub struct SymmetricPower {
    d: usize,
    set: SimplicialSet,
    /// `tuples[k][x * d .. (x + 1) * d]` is simplex `x` of dimension `k`.
    tuples: Vec<Vec<u32>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl SymmetricPower {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn tuple(&self, k: usize, x: usize) -> &[u32] {
        &self.tuples[k][x * self.d..(x + 1) * self.d]
    }

    pub fn index_of(&self, k: usize, tuple: &[u32]) -> Option<usize> {
        self.index[k].get(tuple).map(|&x| x as usize)
    }
}

/// All sorted `d`-tuples from `0..n`, lexicographically.
fn multisets(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn go(start: u32, n: u32, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v, n, d, cur, out);
            cur.pop();
        }
    }
    go(0, n as u32, d, &mut cur, &mut out);
    out
}

/// Number of `k`-simplices `SP^d X` would have in each dimension through
/// `bound`, without building it.
pub fn symmetric_power_size(x: &SimplicialSet, d: usize, bound: usize) -> Vec<u128> {
    let binom = |n: u128, r: u128| -> u128 { (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1)) };
    (0..=bound.min(x.bound())).map(|k| binom(x.count(k) as u128 + d as u128 - 1, d as u128)).collect()
}

pub fn symmetric_power(x: &SimplicialSet, d: usize, bound: usize) -> Result<SymmetricPower, SymError> {
    if d == 0 {
        return Err(SymError::ZeroPower);
    }
    if bound > x.bound() {
        return Err(SymError::BoundTooLarge { requested: bound, available: x.bound() });
    }
    let levels: Vec<Vec<Vec<u32>>> = (0..=bound).map(|k| multisets(x.count(k), d)).collect();
    let index: Vec<HashMap<Vec<u32>, u32>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect()).collect();
    let mut tables = SimplicialTables { counts: levels.iter().map(Vec::len).collect(), ..Default::default() };
    let mut image = vec![0u32; d];
    for (k, level) in levels.iter().enumerate() {
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for t in level {
            if k > 0 {
                for i in 0..=k {
                    for (slot, &a) in image.iter_mut().zip(t) {
                        *slot = x.face(k, a as usize, i) as u32;
                    }
                    image.sort_unstable();
                    faces.push(index[k - 1][&image]);
                }
            }
            if k < bound {
                for i in 0..=k {
                    for (slot, &a) in image.iter_mut().zip(t) {
                        *slot = x.degeneracy(k, a as usize, i) as u32;
                    }
                    image.sort_unstable();
                    degens.push(index[k + 1][&image]);
                }
            }
        }
        tables.faces.push(faces);
        tables.degens.push(degens);
    }
    let basepoint = index[0][&vec![x.basepoint() as u32; d]] as usize;
    let set = SimplicialSet::from_tables(basepoint, tables)?;
    let tuples = levels.into_iter().map(|l| l.into_iter().flatten().collect()).collect();
    Ok(SymmetricPower { d, set, tuples, index })
}

/// `SP^d X -> SP^e X` for `d <= e`, padding with copies of the degenerate
/// basepoint simplex.
pub fn stabilization_map(x: &SimplicialSet, from: &SymmetricPower, to: &SymmetricPower) -> Result<SimplicialMap, SymError> {
    if to.d < from.d {
        return Err(SymError::PowerMismatch { from: from.d, to: to.d });
    }
    let bound = from.set.bound();
    let mut levels = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let base = x.base_simplex(k) as u32;
        let mut l = Vec::with_capacity(from.set.count(k));
        let mut t = Vec::with_capacity(to.d);
        for s in 0..from.set.count(k) {
            t.clear();
            t.extend_from_slice(from.tuple(k, s));
            let at = t.partition_point(|&a| a < base);
            t.splice(at..at, std::iter::repeat_n(base, to.d - from.d));
            l.push(to.index[k][&t]);
        }
        levels.push(l);
    }
    Ok(SimplicialMap::new(levels, &from.set, &to.set)?)
}
