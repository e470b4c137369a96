//! Smith normal form and the integer lattice computations built on it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{Dense, IntMatrix, SparseMatrix};
use super::scalar::{with_fallback, Checked, Scalar};

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// diagonal entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    with_fallback(|| smith_generic::<i64>(m, true, true), || smith_generic::<BigInt>(m, true, true))
}

fn smith_generic<S: Scalar>(m: &IntMatrix, track_u: bool, track_v: bool) -> Checked<SmithForm> {
    let (d, u, v) = reduce_dense(m.to_dense::<S>()?, track_u, track_v)?;
    Ok(SmithForm {
        u: u.map_or_else(|| IntMatrix::identity(m.rows()), |u| u.to_int_matrix()),
        d: d.to_int_matrix(),
        v: v.map_or_else(|| IntMatrix::identity(m.cols()), |v| v.to_int_matrix()),
    })
}

/// Diagonalizes `a` in place. Pivots are the entry of smallest nonzero
/// absolute value, ties broken by (row, column).
pub(crate) fn reduce_dense<S: Scalar>(
    mut a: Dense<S>,
    track_u: bool,
    track_v: bool,
) -> Checked<(Dense<S>, Option<Dense<S>>, Option<Dense<S>>)> {
    let (rows, cols) = (a.rows, a.cols);
    let mut u = track_u.then(|| Dense::<S>::identity(rows));
    let mut v = track_v.then(|| Dense::<S>::identity(cols));
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, (t..rows).flat_map(|r| (t..cols).map(move |c| (r, c)))) else {
            break;
        };
        move_pivot(&mut a, &mut u, &mut v, t, pi, pj);
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if !a.at(r, t).is_zero() {
                    let q = a.at(r, t).div_floor(a.at(t, t))?;
                    a.row_sub(r, t, &q)?;
                    if let Some(u) = u.as_mut() {
                        u.row_sub(r, t, &q)?;
                    }
                    clean &= a.at(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !a.at(t, c).is_zero() {
                    let q = a.at(t, c).div_floor(a.at(t, t))?;
                    a.col_sub(c, t, &q)?;
                    if let Some(v) = v.as_mut() {
                        v.col_sub(c, t, &q)?;
                    }
                    clean &= a.at(t, c).is_zero();
                }
            }
            if !clean {
                let line = std::iter::once((t, t))
                    .chain((t + 1..rows).map(|r| (r, t)))
                    .chain((t + 1..cols).map(|c| (t, c)));
                let (pi, pj) = min_entry(&a, line).expect("pivot line is nonzero");
                move_pivot(&mut a, &mut u, &mut v, t, pi, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !a.at(t, t).divides(a.at(r, c)));
            match offender {
                Some((r, _)) => {
                    let minus_one = S::one().try_neg()?;
                    a.row_sub(t, r, &minus_one)?;
                    if let Some(u) = u.as_mut() {
                        u.row_sub(t, r, &minus_one)?;
                    }
                }
                None => break,
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t)?;
            if let Some(u) = u.as_mut() {
                u.negate_row(t)?;
            }
        }
        t += 1;
    }
    Ok((a, u, v))
}

fn min_entry<S: Scalar>(
    a: &Dense<S>,
    candidates: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, c) in candidates {
        let x = a.at(r, c);
        if x.is_zero() {
            continue;
        }
        let better = match best {
            None => true,
            Some((br, bc)) => x.cmp_abs(a.at(br, bc)).is_lt(),
        };
        if better {
            best = Some((r, c));
            if x.is_unit() {
                break;
            }
        }
    }
    best
}

fn move_pivot<S: Scalar>(
    a: &mut Dense<S>,
    u: &mut Option<Dense<S>>,
    v: &mut Option<Dense<S>>,
    t: usize,
    pi: usize,
    pj: usize,
) {
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    if let Some(u) = u.as_mut() {
        u.swap_rows(t, pi);
    }
    if let Some(v) = v.as_mut() {
        v.swap_cols(t, pj);
    }
}

/// Rank and invariant factors of an integer matrix, without transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Invariant factors of a sparse matrix: unit pivots are eliminated
/// sparsely, the remainder goes through dense Smith reduction.
pub fn sparse_invariants(m: &SparseMatrix) -> SmithInvariants {
    with_fallback(|| sparse_invariants_generic::<i64>(m), || sparse_invariants_generic::<BigInt>(m))
}

fn sparse_invariants_generic<S: Scalar>(m: &SparseMatrix) -> Checked<SmithInvariants> {
    // Columns of `m` are treated as the lines being combined; invariant
    // factors are transpose-invariant.
    let mut lines: Vec<Vec<(usize, S)>> = m
        .columns()
        .iter()
        .map(|col| col.iter().map(|(r, v)| Ok((*r, S::from_big(v)?))).collect::<Checked<Vec<_>>>())
        .collect::<Checked<_>>()?;
    let npos = m.rows();
    let mut line_live: Vec<bool> = lines.iter().map(|l| !l.is_empty()).collect();
    let mut pos_live = vec![true; npos];
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); npos];
    for (i, l) in lines.iter().enumerate() {
        for (p, _) in l {
            occurs[*p].push(i);
        }
    }
    let mut pivots = 0usize;
    loop {
        let mut progress = false;
        for p in 0..npos {
            if !pos_live[p] {
                continue;
            }
            let mut holders: Vec<usize> = std::mem::take(&mut occurs[p]);
            holders.sort_unstable();
            holders.dedup();
            holders.retain(|&i| line_live[i] && entry(&lines[i], p).is_some());
            let pivot = holders
                .iter()
                .copied()
                .filter(|&i| entry(&lines[i], p).is_some_and(S::is_unit))
                .min_by_key(|&i| (lines[i].len(), i));
            let Some(pl) = pivot else {
                occurs[p] = holders;
                continue;
            };
            let pivot_line = std::mem::take(&mut lines[pl]);
            let pv = entry(&pivot_line, p).expect("pivot present").clone();
            for &i in &holders {
                if i == pl {
                    continue;
                }
                let a = entry(&lines[i], p).expect("holder has entry").clone();
                let q = a.try_mul(&pv)?;
                let merged = axpy(&lines[i], &q, &pivot_line)?;
                for (pp, _) in &merged {
                    if entry(&lines[i], *pp).is_none() {
                        occurs[*pp].push(i);
                    }
                }
                lines[i] = merged;
                if lines[i].is_empty() {
                    line_live[i] = false;
                }
            }
            line_live[pl] = false;
            pos_live[p] = false;
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_lines: Vec<usize> = (0..lines.len()).filter(|&i| line_live[i] && !lines[i].is_empty()).collect();
    let mut live_pos: Vec<usize> = live_lines.iter().flat_map(|&i| lines[i].iter().map(|(p, _)| *p)).collect();
    live_pos.sort_unstable();
    live_pos.dedup();
    let mut residual = Dense { rows: live_lines.len(), cols: live_pos.len(), data: vec![S::zero(); live_lines.len() * live_pos.len()] };
    for (r, &i) in live_lines.iter().enumerate() {
        for (p, v) in &lines[i] {
            let c = live_pos.binary_search(p).expect("position collected");
            *residual.at_mut(r, c) = v.clone();
        }
    }
    let (d, _, _) = reduce_dense(residual, false, false)?;
    let mut rank = pivots;
    let mut torsion = Vec::new();
    for i in 0..d.rows.min(d.cols) {
        let x = d.at(i, i);
        if x.is_zero() {
            break;
        }
        rank += 1;
        if !x.is_unit() {
            torsion.push(x.to_big());
        }
    }
    Ok(SmithInvariants { rank, torsion })
}

fn entry<S>(line: &[(usize, S)], p: usize) -> Option<&S> {
    line.binary_search_by_key(&p, |(q, _)| *q).ok().map(|i| &line[i].1)
}

/// `x - q * y` on sorted sparse lines.
fn axpy<S: Scalar>(x: &[(usize, S)], q: &S, y: &[(usize, S)]) -> Checked<Vec<(usize, S)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some((px, vx)), Some((py, vy))) if px == py => {
                let v = vx.sub_mul(q, vy)?;
                if !v.is_zero() {
                    out.push((*px, v));
                }
                i += 1;
                j += 1;
            }
            (Some((px, vx)), Some((py, _))) if px < py => {
                out.push((*px, vx.clone()));
                i += 1;
            }
            (Some((px, vx)), None) => {
                out.push((*px, vx.clone()));
                i += 1;
            }
            (_, Some((py, vy))) => {
                out.push((*py, S::zero().sub_mul(q, vy)?));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(out)
}

/// Basis of the integer kernel `{x : m x = 0}`, as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (rank, v) = with_fallback(
        || kernel_generic::<i64>(m),
        || kernel_generic::<BigInt>(m),
    );
    let cols: Vec<usize> = (rank..m.cols()).collect();
    v.select_columns(&cols)
}

fn kernel_generic<S: Scalar>(m: &IntMatrix) -> Checked<(usize, IntMatrix)> {
    let (d, _, v) = reduce_dense(m.to_dense::<S>()?, false, true)?;
    let rank = (0..d.rows.min(d.cols)).take_while(|&i| !d.at(i, i).is_zero()).count();
    Ok((rank, v.expect("tracked").to_int_matrix()))
}

/// Solves `m x = y` over the integers, reusing one Smith decomposition for
/// many right-hand sides.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    form: SmithForm,
    rank: usize,
    diag: Vec<BigInt>,
}

impl IntegerSolver {
    pub fn new(m: &IntMatrix) -> Self {
        let form = smith_normal_form(m);
        let diag = form.diagonal();
        Self { rank: diag.len(), diag, form }
    }

    /// Some integer solution, or `None` when `y` is not in the integer image.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let z = self.form.u.mul_vec(y);
        let mut w = vec![BigInt::zero(); self.form.v.rows()];
        for (j, zj) in z.iter().enumerate() {
            if j < self.rank {
                if !(zj % &self.diag[j]).is_zero() {
                    return None;
                }
                w[j] = zj / &self.diag[j];
            } else if !zj.is_zero() {
                return None;
            }
        }
        Some(self.form.v.mul_vec(&w))
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        self.solve(y).is_some()
    }
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
