//! Dense Gaussian elimination over ℚ, written independently of the sparse
//! engine, used as a reference for ranks and Betti numbers.

#![allow(dead_code)]

use hcyc_core::{ChainComplex, DegreeRange, Rational, Scalar, SparseMatrix};

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Rank by plain row reduction on a dense copy.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_negligible()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_negligible() {
                let f = m[r][col].clone() / pivot.clone();
                for c in col..ncols {
                    let delta = f.clone() * m[rank][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn matrix_rank(m: &SparseMatrix<Rational>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    dense_rank(&m.to_dense())
}

/// Betti numbers of `c` on `range` from dense ranks: `dim C_n − rk d_n − rk d_{n+1}`.
pub fn dense_betti(c: &ChainComplex<Rational>, range: DegreeRange) -> Vec<usize> {
    let rank_at = |n: i64| c.diff_at(n).map_or(0, |d| matrix_rank(&d));
    range
        .iter()
        .map(|n| c.dim_at(n).unwrap() - rank_at(n) - rank_at(n + 1))
        .collect()
}

/// Betti numbers on the complex's certified range.
pub fn dense_certified_betti(c: &ChainComplex<Rational>) -> Vec<usize> {
    dense_betti(c, c.certified_range())
}
