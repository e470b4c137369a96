//! Dense and sparse integer matrices with exact entries.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{Checked, Scalar};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the count does not match.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape {rows}x{cols}");
        Self { rows, cols, entries }
    }

    /// Convenience constructor from small rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&v| BigInt::from(v)));
        }
        Self { rows: rows.len(), cols, entries }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.entries[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(r, c) * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[IntMatrix], cols: usize) -> IntMatrix {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "stacked blocks must share column count");
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        IntMatrix { rows, cols, entries }
    }

    pub(crate) fn to_dense<S: Scalar>(&self) -> Checked<Dense<S>> {
        let data = self.entries.iter().map(S::from_big).collect::<Checked<Vec<_>>>()?;
        Ok(Dense { rows: self.rows, cols: self.cols, data })
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::zeros(self.rows, 0);
        for c in 0..self.cols {
            s.push_column(
                (0..self.rows)
                    .filter(|&r| !self.get(r, c).is_zero())
                    .map(|r| (r, self.get(r, c).clone()))
                    .collect(),
            );
        }
        s
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Working copy used by the elimination kernels.
#[derive(Clone, Debug)]
pub(crate) struct Dense<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Dense<S> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = S::one();
        }
        Self { rows: n, cols: n, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    pub fn row_sub(&mut self, dst: usize, src: usize, q: &S) -> Checked<()> {
        for c in 0..self.cols {
            let s = self.at(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.at(dst, c).sub_mul(q, s)?;
            *self.at_mut(dst, c) = v;
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    pub fn col_sub(&mut self, dst: usize, src: usize, q: &S) -> Checked<()> {
        for r in 0..self.rows {
            let s = self.at(r, src);
            if s.is_zero() {
                continue;
            }
            let v = self.at(r, dst).sub_mul(q, s)?;
            *self.at_mut(r, dst) = v;
        }
        Ok(())
    }

    pub fn negate_row(&mut self, r: usize) -> Checked<()> {
        for c in 0..self.cols {
            let v = self.at(r, c).try_neg()?;
            *self.at_mut(r, c) = v;
        }
        Ok(())
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_entries(self.rows, self.cols, self.data.iter().map(S::to_big).collect())
    }
}

/// Column-major sparse integer matrix. Each column is sorted by row and
/// holds no explicit zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.cols
    }

    /// Appends a column given as (row, value) pairs in any order; repeated
    /// rows are summed and zeros dropped.
    pub fn push_column(&mut self, entries: Vec<(usize, BigInt)>) {
        self.cols.push(normalize_column(self.rows, entries));
    }

    pub fn set_column(&mut self, c: usize, entries: Vec<(usize, BigInt)>) {
        self.cols[c] = normalize_column(self.rows, entries);
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                t[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: t }
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, x) in v {
            for (r, a) in &self.cols[*c] {
                *acc.entry(*r).or_insert_with(BigInt::zero) += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows, "shape mismatch in sparse product");
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|col| self.apply(col)).collect() }
    }

    pub fn scaled(&self, k: &BigInt) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows, 0);
        for col in &self.cols {
            out.push_column(col.iter().map(|(r, v)| (*r, v * k)).collect());
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "shape mismatch in difference");
        let mut out = SparseMatrix::zeros(self.rows, 0);
        for (a, b) in self.cols.iter().zip(&other.cols) {
            let mut e = a.clone();
            e.extend(b.iter().map(|(r, v)| (*r, -v)));
            out.push_column(e);
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`; missing blocks are zero.
    pub fn block(
        top: usize,
        bottom: usize,
        left: usize,
        right: usize,
        blocks: [Option<&SparseMatrix>; 4],
    ) -> SparseMatrix {
        let [a, b, c, d] = blocks;
        let mut out = SparseMatrix::zeros(top + bottom, 0);
        for j in 0..left + right {
            let mut e = Vec::new();
            let (upper, lower, jj) = if j < left { (a, c, j) } else { (b, d, j - left) };
            if let Some(m) = upper {
                e.extend(m.column(jj).iter().cloned());
            }
            if let Some(m) = lower {
                e.extend(m.column(jj).iter().map(|(r, v)| (r + top, v.clone())));
            }
            out.push_column(e);
        }
        out
    }
}

fn normalize_column(rows: usize, entries: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (r, v) in entries {
        assert!(r < rows, "row index {r} out of range {rows}");
        *acc.entry(r).or_insert_with(BigInt::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} nnz={}", self.rows, self.cols.len(), self.nnz())
    }
}

impl From<&IntMatrix> for SparseMatrix {
    fn from(m: &IntMatrix) -> Self {
        m.to_sparse()
    }
}
