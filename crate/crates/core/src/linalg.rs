//! Rank, kernel and span computations by incremental sparse elimination.
//!
//! Matrices are first split into the connected components of their row/column
//! incidence graph; each block is then reduced independently (in parallel).
//! Graded objects such as weight spaces of `gl_r` make these blocks small.

use rayon::prelude::*;

use crate::scalar::Scalar;
use crate::sparse::{axpy, SparseMatrix, SparseVec};

const NONE: usize = usize::MAX;

/// A semi-echelon basis of a growing subspace of `T^dim`.
///
/// Each stored vector has its leading entry equal to one, and the leading
/// indices are pairwise distinct. With tracking enabled every stored vector
/// also remembers its expression in terms of the inserted inputs.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    dim: usize,
    pivot_of: Vec<usize>,
    rows: Vec<SparseVec<T>>,
    combos: Option<Vec<SparseVec<T>>>,
    inserted: usize,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<T> {
    Independent,
    /// The input was dependent; with tracking, the relation `input = Σ c_k input_k`
    /// is returned as the kernel vector `e_input − Σ c_k e_k`.
    Dependent(Option<SparseVec<T>>),
}

impl<T: Scalar> Echelon<T> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivot_of: vec![NONE; dim],
            rows: Vec::new(),
            combos: None,
            inserted: 0,
        }
    }

    pub fn with_tracking(dim: usize) -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Self::new(dim)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether coordinate `i` is the leading index of a stored vector. The
    /// non-pivot coordinates index a complement of the span.
    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_of[i] != NONE
    }

    /// The stored (reduced) basis vectors.
    pub fn basis(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    /// Reduces `v` against the stored basis. Returns the residue and, with
    /// tracking, the combination `c` such that `v = residue + Σ c_k input_k`.
    fn reduce_tracked(&self, mut v: SparseVec<T>) -> (SparseVec<T>, SparseVec<T>) {
        let mut combo: SparseVec<T> = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let (lead, coeff) = (v[start].0, v[start].1.clone());
            let p = self.pivot_of[lead];
            if p == NONE {
                start += 1;
                continue;
            }
            let neg = -coeff.clone();
            let (head, tail) = v.split_at(start);
            let mut reduced = head.to_vec();
            reduced.extend(axpy(tail, &neg, &self.rows[p]));
            v = reduced;
            if let Some(combos) = &self.combos {
                combo = axpy(&combo, &coeff, &combos[p]);
            }
        }
        (v, combo)
    }

    /// Residue of `v` modulo the stored span (zero iff `v` lies in the span).
    pub fn reduce(&self, v: SparseVec<T>) -> SparseVec<T> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[(usize, T)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Coefficients of `v` in terms of the inserted vectors, if `v` is in the span.
    /// Requires tracking.
    pub fn express(&self, v: &[(usize, T)]) -> Option<SparseVec<T>> {
        assert!(self.combos.is_some(), "express requires a tracking echelon");
        let (res, combo) = self.reduce_tracked(v.to_vec());
        res.is_empty().then_some(combo)
    }

    pub fn insert(&mut self, v: SparseVec<T>) -> Insert<T> {
        let id = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce_tracked(v);
        // The residue has no entry at an occupied pivot index.
        let Some(lead_pos) = res.iter().position(|(i, _)| self.pivot_of[*i] == NONE) else {
            return Insert::Dependent(self.combos.as_ref().map(|_| {
                let mut k: SparseVec<T> = combo.iter().map(|(j, c)| (*j, -c.clone())).collect();
                k.push((id, T::one()));
                k.sort_by_key(|e| e.0);
                k
            }));
        };
        debug_assert_eq!(lead_pos, 0);
        let inv = T::one() / res[lead_pos].1.clone();
        let lead = res[lead_pos].0;
        let row: SparseVec<T> = res.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        self.pivot_of[lead] = self.rows.len();
        self.rows.push(row);
        if let Some(combos) = &mut self.combos {
            // row = inv * (input − combo·inputs)
            let mut c: SparseVec<T> = combo.iter().map(|(j, x)| (*j, -x.clone() * inv.clone())).collect();
            c.push((id, inv));
            c.sort_by_key(|e| e.0);
            combos.push(c);
        }
        Insert::Independent
    }
}

/// Connected components of the bipartite incidence graph of a matrix.
/// Returns, per component, its (sorted) row and column indices. Zero columns
/// form singleton components with no rows; zero rows are dropped.
pub fn components<T: Scalar>(m: &SparseMatrix<T>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = m.rows() + m.cols();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in 0..m.cols() {
        for (r, _) in m.col(c) {
            let a = find(&mut parent, m.rows() + c);
            let b = find(&mut parent, *r);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut slot = vec![NONE; n];
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for c in 0..m.cols() {
        let root = find(&mut parent, m.rows() + c);
        if slot[root] == NONE {
            slot[root] = comps.len();
            comps.push((Vec::new(), Vec::new()));
        }
        comps[slot[root]].1.push(c);
    }
    for r in 0..m.rows() {
        let root = find(&mut parent, r);
        if slot[root] != NONE {
            comps[slot[root]].0.push(r);
        }
    }
    comps
}

fn block_columns<T: Scalar>(m: &SparseMatrix<T>, rows: &[usize], cols: &[usize]) -> Vec<SparseVec<T>> {
    // Rows are renumbered so that sparse rows come first; this keeps the
    // leading-entry pivots sparse.
    let mut count = vec![0usize; m.rows()];
    for &c in cols {
        for (r, _) in m.col(c) {
            count[*r] += 1;
        }
    }
    let mut order: Vec<usize> = rows.to_vec();
    order.sort_by_key(|&r| (count[r], r));
    let mut local = vec![NONE; m.rows()];
    for (i, &r) in order.iter().enumerate() {
        local[r] = i;
    }
    cols.iter()
        .map(|&c| {
            let mut v: SparseVec<T> = m.col(c).iter().map(|(r, x)| (local[*r], x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

fn block_rank<T: Scalar>(m: &SparseMatrix<T>, rows: &[usize], cols: &[usize]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut vs = block_columns(m, rows, cols);
    vs.sort_by_key(Vec::len);
    let mut ech = Echelon::new(rows.len());
    for v in vs {
        ech.insert(v);
        if ech.rank() == rows.len() {
            break;
        }
    }
    ech.rank()
}

/// Rank of a matrix.
pub fn rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let comps = components(m);
    comps
        .par_iter()
        .map(|(rows, cols)| block_rank(m, rows, cols))
        .sum()
}

/// Rank and a basis of the kernel (as sparse column-index vectors).
///
/// `rank + kernel.len() == m.cols()` and every kernel vector `v` satisfies `m v = 0`.
pub fn rank_kernel<T: Scalar>(m: &SparseMatrix<T>) -> (usize, Vec<SparseVec<T>>) {
    let comps = components(m);
    let per: Vec<(usize, Vec<SparseVec<T>>)> = comps
        .par_iter()
        .map(|(rows, cols)| {
            let vs = block_columns(m, rows, cols);
            let mut ech = Echelon::with_tracking(rows.len());
            let mut kernel = Vec::new();
            for v in vs {
                if let Insert::Dependent(Some(k)) = ech.insert(v) {
                    let mut k: SparseVec<T> = k.into_iter().map(|(j, x)| (cols[j], x)).collect();
                    k.sort_by_key(|e| e.0);
                    kernel.push(k);
                }
            }
            (ech.rank(), kernel)
        })
        .collect();
    let rank = per.iter().map(|p| p.0).sum();
    let kernel = per.into_iter().flat_map(|p| p.1).collect();
    (rank, kernel)
}

pub fn kernel<T: Scalar>(m: &SparseMatrix<T>) -> Vec<SparseVec<T>> {
    rank_kernel(m).1
}

/// Indices of a maximal linearly independent subset of the columns, chosen greedily
/// left to right.
pub fn pivot_columns<T: Scalar>(m: &SparseMatrix<T>) -> Vec<usize> {
    let mut ech = Echelon::new(m.rows());
    (0..m.cols())
        .filter(|&c| ech.insert(m.col(c).to_vec()) == Insert::Independent)
        .collect()
}

/// Rank of a list of vectors of length `dim`.
pub fn rank_of_vectors<T: Scalar>(dim: usize, vs: &[SparseVec<T>]) -> usize {
    rank(&SparseMatrix::from_columns(dim, vs.to_vec()))
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse<T: Scalar>(m: &SparseMatrix<T>) -> Option<SparseMatrix<T>> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let mut ech = Echelon::with_tracking(n);
    for c in 0..n {
        if ech.insert(m.col(c).to_vec()) != Insert::Independent {
            return None;
        }
    }
    let columns = (0..n)
        .map(|i| ech.express(&[(i, T::one())]).expect("full rank"))
        .collect();
    Some(SparseMatrix::from_columns(n, columns))
}
