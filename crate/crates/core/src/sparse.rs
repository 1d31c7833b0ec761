//! Column-major sparse matrices with no stored zeros.

use std::fmt;

use crate::scalar::Scalar;

/// A sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Sorts, merges duplicate indices and drops negligible entries.
pub fn normalize<T: Scalar>(mut v: Vec<(usize, T)>) -> SparseVec<T> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<T> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = std::mem::replace(y, T::zero()) + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_negligible());
    out
}

/// `a + s * b` for sorted sparse vectors.
pub fn axpy<T: Scalar>(a: &[(usize, T)], s: &T, b: &[(usize, T)]) -> SparseVec<T> {
    if s.is_negligible() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let x = s.clone() * b[j].1.clone();
            if !x.is_negligible() {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let mut x = a[i].1.clone();
            x.add_mul_assign(s, &b[j].1);
            if !x.is_negligible() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec<T: Scalar>(s: &T, v: &[(usize, T)]) -> SparseVec<T> {
    if s.is_negligible() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, s.clone() * x.clone())).collect()
}

/// Converts a dense vector to sparse form.
pub fn sparse_from_dense<T: Scalar>(v: &[T]) -> SparseVec<T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_negligible())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<T: Scalar>(len: usize, v: &[(usize, T)]) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Clone, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<T>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, s: T) -> Self {
        let columns = (0..n)
            .map(|i| {
                if s.is_negligible() {
                    Vec::new()
                } else {
                    vec![(i, s.clone())]
                }
            })
            .collect();
        SparseMatrix {
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Builds a matrix from raw columns, normalizing each.
    ///
    /// Panics if a row index is out of range.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        let columns: Vec<SparseVec<T>> = columns.into_iter().map(normalize).collect();
        for col in &columns {
            if let Some((r, _)) = col.last() {
                assert!(*r < rows, "row index {r} out of range {rows}");
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(c < cols, "column index {c} out of range {cols}");
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<T>]) -> Self {
        assert_eq!(data.len(), rows);
        Self::from_triplets(
            rows,
            cols,
            data.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols);
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn col(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec<T>> {
        self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul_vec(&self, v: &[(usize, T)]) -> SparseVec<T> {
        let mut acc = Accumulator::new(self.rows);
        for (k, x) in v {
            for (r, y) in &self.columns[*k] {
                acc.add_mul(*r, x, y);
            }
        }
        acc.drain()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col {
                    for (r, y) in &self.columns[*k] {
                        acc.add_mul(*r, y, x);
                    }
                }
                acc.drain()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn add(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        self.axpy(&T::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        self.axpy(&-T::one(), other)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &T, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(a, s, b))
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn scale(&self, s: &T) -> SparseMatrix<T> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| scale_vec(s, c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseMatrix<T> {
        self.scale(&-T::one())
    }

    /// Kronecker product `self ⊗ other` with row-major (lexicographic) index order.
    pub fn kron(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        let rows = self.rows * other.rows;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * other.rows + k, x.clone() * y.clone()));
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix {
            rows,
            cols: self.cols * other.cols,
            columns,
        }
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<T> {
        let mut row_map = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_map[old] = new;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: SparseVec<T> = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_map[*r] != usize::MAX)
                    .map(|(r, v)| (row_map[*r], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }

    /// Checks that every column only has entries in `allowed` rows.
    pub fn rows_within(&self, allowed: &[bool]) -> bool {
        self.columns
            .iter()
            .all(|c| c.iter().all(|(r, _)| allowed[*r]))
    }

    /// Assembles a block matrix. `blocks[i][j]` is the block in block-row `i`,
    /// block-column `j`; `None` means zero. Row and column block sizes must be given.
    pub fn block(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&SparseMatrix<T>>>],
    ) -> SparseMatrix<T> {
        let rows: usize = row_sizes.iter().sum();
        let mut columns = Vec::with_capacity(col_sizes.iter().sum());
        for (bj, &w) in col_sizes.iter().enumerate() {
            for j in 0..w {
                let mut col = Vec::new();
                let mut offset = 0;
                for (bi, &h) in row_sizes.iter().enumerate() {
                    if let Some(m) = blocks[bi][bj] {
                        assert_eq!(m.shape(), (h, w), "block ({bi},{bj}) has wrong shape");
                        col.extend(m.columns[j].iter().map(|(r, v)| (r + offset, v.clone())));
                    }
                    offset += h;
                }
                columns.push(col);
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_columns(
            self.rows,
            self.columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, f(v))).collect())
                .collect(),
        )
    }
}

impl<T: fmt::Debug> fmt::Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                write!(f, " ({r},{c})={v:?}")?;
            }
        }
        write!(f, " ]")
    }
}

/// Dense scratch accumulator with a touched-index list.
struct Accumulator<T> {
    values: Vec<T>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl<T: Scalar> Accumulator<T> {
    fn new(len: usize) -> Self {
        Accumulator {
            values: vec![T::zero(); len],
            touched: Vec::new(),
            marked: vec![false; len],
        }
    }

    fn add_mul(&mut self, i: usize, a: &T, b: &T) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
        self.values[i].add_mul_assign(a, b);
    }

    fn drain(&mut self) -> SparseVec<T> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.marked[i] = false;
            let v = std::mem::replace(&mut self.values[i], T::zero());
            if !v.is_negligible() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn normalize_merges_and_drops_zeros() {
        let v = normalize(vec![(3, q(1)), (1, q(2)), (3, q(-1)), (1, q(1))]);
        assert_eq!(v, vec![(1, q(3))]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(2, 2, &[vec![q(1), q(2)], vec![q(0), q(1)]]);
        let b = SparseMatrix::from_dense(2, 2, &[vec![q(0), q(1)], vec![q(1), q(0)]]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), vec![vec![q(2), q(1)], vec![q(1), q(0)]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&SparseMatrix::identity(2)), a);
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = SparseMatrix::from_dense(2, 1, &[vec![q(1)], vec![q(2)]]);
        let b = SparseMatrix::from_dense(2, 1, &[vec![q(3)], vec![q(5)]]);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (4, 1));
        assert_eq!(
            k.to_dense(),
            vec![vec![q(3)], vec![q(5)], vec![q(6)], vec![q(10)]]
        );
    }

    #[test]
    fn empty_shapes_are_fine() {
        let z: SparseMatrix<Rational> = SparseMatrix::zeros(0, 3);
        let w: SparseMatrix<Rational> = SparseMatrix::zeros(3, 0);
        assert_eq!(w.mul(&z).shape(), (3, 3));
        assert_eq!(z.mul(&w).shape(), (0, 0));
        assert!(w.mul(&z).is_zero());
    }

    #[test]
    fn block_assembly() {
        let i = SparseMatrix::<Rational>::identity(1);
        let m = SparseMatrix::block(&[1, 1], &[1, 1], &[vec![Some(&i), None], vec![None, Some(&i)]]);
        assert_eq!(m, SparseMatrix::identity(2));
    }
}
