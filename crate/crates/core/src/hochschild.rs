//! Bar and Hochschild complexes, the cyclic operators and the bicomplexes
//! computing Hochschild and cyclic homology, plus Connes' λ-complex.
//!
//! Tensor words are indexed lexicographically: `m ⊗ a_1 ⊗ ⋯ ⊗ a_p` lives at
//! `m · d^p + a_1 · d^{p−1} + ⋯ + a_p` with `d = dim A`. All algebras sit in
//! degree zero, so the only signs are the positional ones.
//!
//! The bicomplexes use the columns `(C, b)` and `(C, −b′)` and the horizontal
//! maps `1 − t` and `N` unmodified. Since `b(1 − t) = (1 − t)b′` and
//! `b′N = Nb`, every square anticommutes and the total differential is the
//! plain sum of the horizontal and vertical maps.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraMorphism, Bimodule};
use crate::chain::{split_les_check, ChainComplex, ChainError, ChainMap, DegreeRange, HomologyReport, LesDegree};
use crate::scalar::Scalar;
use crate::sparse::{normalize, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HochError {
    #[error("degree bound {found} is too small (need at least {min})")]
    DegreeBound { found: usize, min: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("{0}")]
    Invalid(String),
}

fn require(d: usize, min: usize) -> Result<(), HochError> {
    if d < min {
        Err(HochError::DegreeBound { found: d, min })
    } else {
        Ok(())
    }
}

fn sign<T: Scalar>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Base-`d` digits of `w`, most significant first, `len` of them.
fn digits(mut w: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = w % d;
        w /= d;
    }
    out
}

fn word_index(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, x| acc * d + x)
}

/// `b′ : M ⊗ A^{⊗p} → M ⊗ A^{⊗p−1}`, `p ≥ 1`:
/// `m a_1 ⊗ a_2 ⊗ ⋯ + Σ_{i=1}^{p−1} (−1)^i m ⊗ ⋯ ⊗ a_i a_{i+1} ⊗ ⋯`.
pub fn bar_prime<T: Scalar>(m: &Bimodule<T>, p: usize) -> SparseMatrix<T> {
    assert!(p >= 1);
    let (dm, da) = (m.dim(), m.algebra().dim());
    let a = m.algebra();
    let src_tail = da.pow(p as u32);
    let dst_tail = da.pow(p as u32 - 1);
    let cols: Vec<SparseVec<T>> = (0..dm * src_tail)
        .into_par_iter()
        .map(|col| {
            let (mi, w) = (col / src_tail, col % src_tail);
            let ws = digits(w, da, p);
            let mut out = Vec::new();
            let rest = w % dst_tail;
            for (m2, c) in m.right_basis(mi, ws[0]) {
                out.push((m2 * dst_tail + rest, c.clone()));
            }
            for i in 1..p {
                let s: T = sign(i);
                for (x, c) in a.basis_product(ws[i - 1], ws[i]) {
                    let mut merged = Vec::with_capacity(p - 1);
                    merged.extend_from_slice(&ws[..i - 1]);
                    merged.push(*x);
                    merged.extend_from_slice(&ws[i + 1..]);
                    out.push((mi * dst_tail + word_index(&merged, da), s.clone() * c.clone()));
                }
            }
            normalize(out)
        })
        .collect();
    SparseMatrix::from_columns(dm * dst_tail, cols)
}

/// The Hochschild boundary `b = b′ + (−1)^p (a_p · m) ⊗ a_1 ⊗ ⋯ ⊗ a_{p−1}`.
pub fn hochschild_b<T: Scalar>(m: &Bimodule<T>, p: usize) -> SparseMatrix<T> {
    let (dm, da) = (m.dim(), m.algebra().dim());
    let src_tail = da.pow(p as u32);
    let dst_tail = da.pow(p as u32 - 1);
    let s: T = sign(p);
    let wrap: Vec<SparseVec<T>> = (0..dm * src_tail)
        .into_par_iter()
        .map(|col| {
            let (mi, w) = (col / src_tail, col % src_tail);
            m.left_basis(w % da, mi)
                .iter()
                .map(|(m2, c)| (m2 * dst_tail + w / da, s.clone() * c.clone()))
                .collect()
        })
        .collect();
    bar_prime(m, p).add(&SparseMatrix::from_columns(dm * dst_tail, wrap))
}

fn check_bound(d: usize) -> Result<(), HochError> {
    require(d, 1)
}

/// `𝓑(A, M)` on degrees `0..=D` with differential `−b′`; certified on `[0, D−1]`.
pub fn bar_complex<T: Scalar>(m: &Bimodule<T>, d: usize) -> Result<ChainComplex<T>, HochError> {
    check_bound(d)?;
    let da = m.algebra().dim();
    let dims = (0..=d).map(|p| m.dim() * da.pow(p as u32)).collect();
    let diffs = (1..=d).into_par_iter().map(|p| bar_prime(m, p).neg()).collect();
    Ok(ChainComplex::new(0, dims, diffs, false)?)
}

/// `𝓗(A, M)` on degrees `0..=D` with differential `b`; certified on `[0, D−1]`.
pub fn hoch_complex<T: Scalar>(m: &Bimodule<T>, d: usize) -> Result<ChainComplex<T>, HochError> {
    check_bound(d)?;
    let da = m.algebra().dim();
    let dims = (0..=d).map(|p| m.dim() * da.pow(p as u32)).collect();
    let diffs = (1..=d).into_par_iter().map(|p| hochschild_b(m, p)).collect();
    Ok(ChainComplex::new(0, dims, diffs, false)?)
}

/// The signed rotation `t(a_0 ⊗ ⋯ ⊗ a_p) = (−1)^p a_p ⊗ a_0 ⊗ ⋯ ⊗ a_{p−1}`.
pub fn cyclic_t<T: Scalar>(a: &Algebra<T>, p: usize) -> SparseMatrix<T> {
    let d = a.dim();
    let n = d.pow(p as u32 + 1);
    let top = d.pow(p as u32);
    let s: T = sign(p);
    let cols = (0..n).map(|w| vec![((w % d) * top + w / d, s.clone())]).collect();
    SparseMatrix::from_columns(n, cols)
}

/// The norm `N = Σ_{i=0}^{p} t^i`.
pub fn cyclic_n<T: Scalar>(a: &Algebra<T>, p: usize) -> SparseMatrix<T> {
    let t = cyclic_t(a, p);
    let n = t.rows();
    let mut power = SparseMatrix::identity(n);
    let mut sum = SparseMatrix::zeros(n, n);
    for _ in 0..=p {
        sum = sum.add(&power);
        power = t.mul(&power);
    }
    sum
}

/// The pieces of the cyclic bicomplex of `A` for `p = 0..=top`.
#[derive(Clone, Debug)]
pub struct CyclicBicomplex<T> {
    algebra: Arc<Algebra<T>>,
    /// `b_p`, `−b′_p` (index 0 holds the zero map into degree −1).
    b: Vec<SparseMatrix<T>>,
    neg_bar: Vec<SparseMatrix<T>>,
    one_minus_t: Vec<SparseMatrix<T>>,
    norm: Vec<SparseMatrix<T>>,
}

/// Where a column block sits inside a total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub column: usize,
    pub row: usize,
    pub offset: usize,
    pub size: usize,
}

impl<T: Scalar> CyclicBicomplex<T> {
    /// Materializes rows `0..=top`.
    pub fn new(algebra: Arc<Algebra<T>>, top: usize) -> Self {
        let m = Bimodule::regular(algebra.clone());
        let d = algebra.dim();
        let zero_bottom = SparseMatrix::zeros(0, d);
        let (b, neg_bar): (Vec<_>, Vec<_>) = (0..=top)
            .into_par_iter()
            .map(|p| {
                if p == 0 {
                    (zero_bottom.clone(), zero_bottom.clone())
                } else {
                    (hochschild_b(&m, p), bar_prime(&m, p).neg())
                }
            })
            .unzip();
        let (one_minus_t, norm): (Vec<_>, Vec<_>) = (0..=top)
            .into_par_iter()
            .map(|p| {
                let t = cyclic_t(&algebra, p);
                (SparseMatrix::identity(t.rows()).sub(&t), cyclic_n(&algebra, p))
            })
            .unzip();
        CyclicBicomplex {
            algebra,
            b,
            neg_bar,
            one_minus_t,
            norm,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn top(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self, p: usize) -> &SparseMatrix<T> {
        &self.b[p]
    }

    pub fn neg_bar(&self, p: usize) -> &SparseMatrix<T> {
        &self.neg_bar[p]
    }

    pub fn one_minus_t(&self, p: usize) -> &SparseMatrix<T> {
        &self.one_minus_t[p]
    }

    pub fn norm(&self, p: usize) -> &SparseMatrix<T> {
        &self.norm[p]
    }

    /// Blocks of total degree `n` when `columns` columns are kept.
    pub fn layout(&self, n: usize, columns: usize) -> Vec<Block> {
        let d = self.algebra.dim();
        let mut offset = 0;
        (0..=n.min(columns.saturating_sub(1)))
            .map(|q| {
                let size = d.pow((n - q) as u32 + 1);
                let blk = Block {
                    column: q,
                    row: n - q,
                    offset,
                    size,
                };
                offset += size;
                blk
            })
            .collect()
    }

    /// Total differential from total degree `n` to `n − 1`.
    pub fn total_differential(&self, n: usize, columns: usize) -> SparseMatrix<T> {
        let src = self.layout(n, columns);
        let dst = if n == 0 { Vec::new() } else { self.layout(n - 1, columns) };
        let mut blocks: Vec<Vec<Option<&SparseMatrix<T>>>> = vec![vec![None; src.len()]; dst.len()];
        for s in &src {
            let q = s.column;
            if s.row >= 1 {
                blocks[q][q] = Some(if q % 2 == 0 { &self.b[s.row] } else { &self.neg_bar[s.row] });
            }
            if q >= 1 {
                blocks[q - 1][q] = Some(if q % 2 == 1 { &self.one_minus_t[s.row] } else { &self.norm[s.row] });
            }
        }
        let rows: Vec<usize> = dst.iter().map(|b| b.size).collect();
        let cols: Vec<usize> = src.iter().map(|b| b.size).collect();
        SparseMatrix::block(&rows, &cols, &blocks)
    }

    /// Total complex on degrees `0..=top` keeping `columns` columns; certified on `[0, top − 1]`.
    pub fn total(&self, columns: usize) -> Result<ChainComplex<T>, ChainError> {
        let top = self.top();
        let dims = (0..=top).map(|n| self.layout(n, columns).iter().map(|b| b.size).sum()).collect();
        let diffs = (1..=top).into_par_iter().map(|n| self.total_differential(n, columns)).collect();
        ChainComplex::new(0, dims, diffs, false)
    }

    /// `(1 − t) N = N (1 − t) = 0` on every row.
    pub fn check_norm_identities(&self) -> bool {
        (0..=self.top()).all(|p| self.one_minus_t[p].mul(&self.norm[p]).is_zero() && self.norm[p].mul(&self.one_minus_t[p]).is_zero())
    }

    /// `b(1 − t) = (1 − t)b′` and `b′N = Nb` on every row.
    pub fn check_chain_identities(&self) -> bool {
        (1..=self.top()).all(|p| {
            let lhs = self.b[p].mul(&self.one_minus_t[p]);
            let rhs = self.one_minus_t[p - 1].mul(&self.neg_bar[p]).neg();
            let l2 = self.neg_bar[p].mul(&self.norm[p]);
            let r2 = self.norm[p - 1].mul(&self.b[p]).neg();
            lhs == rhs && l2 == r2
        })
    }
}

/// Number of columns kept for Hochschild homology.
pub const HH_COLUMNS: usize = 2;

/// The total complex of the two-column bicomplex, on degrees `0..D−1`.
pub fn hh_complex<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<ChainComplex<T>, HochError> {
    require(d, 2)?;
    Ok(CyclicBicomplex::new(a.clone(), d - 1).total(HH_COLUMNS)?)
}

/// The total complex of the full cyclic bicomplex, on degrees `0..D−1`.
pub fn hc_complex<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<ChainComplex<T>, HochError> {
    require(d, 2)?;
    Ok(CyclicBicomplex::new(a.clone(), d - 1).total(usize::MAX)?)
}

/// `HH_n(A)` for `n ∈ [0, D−2]`.
pub fn hh_homology<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<HomologyReport<T>, HochError> {
    Ok(hh_complex(a, d)?.betti())
}

/// `HC_n(A)` for `n ∈ [0, D−2]`.
pub fn hc_homology<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<HomologyReport<T>, HochError> {
    Ok(hc_complex(a, d)?.betti())
}

/// Rank bookkeeping for `⋯ → HH_n → HC_n → HC_{n−2} → HH_{n−1} → ⋯`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnesReport {
    pub range: DegreeRange,
    pub degrees: Vec<LesDegree>,
    pub exact: bool,
    pub failing_degree: Option<i64>,
}

/// Verifies the Connes sequence on `[0, D−2]` using the subcomplex of the
/// first two columns, whose quotient is the bicomplex shifted by two columns.
pub fn connes_check<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<ConnesReport, HochError> {
    require(d, 3)?;
    let bic = CyclicBicomplex::new(a.clone(), d - 1);
    let total = bic.total(usize::MAX)?;
    let range = total.certified_range();
    let in_sub = |n: i64| -> Vec<bool> {
        let mut flags = Vec::new();
        for blk in bic.layout(n as usize, usize::MAX) {
            flags.extend(std::iter::repeat(blk.column < HH_COLUMNS).take(blk.size));
        }
        flags
    };
    let degrees = split_les_check(&total, in_sub, range)?;
    let failing_degree = degrees.iter().find(|r| !r.exact).map(|r| r.degree);
    Ok(ConnesReport {
        range,
        exact: failing_degree.is_none(),
        failing_degree,
        degrees,
    })
}

/// `f^{⊗k}` for a linear map `f`.
pub fn tensor_power<T: Scalar>(f: &SparseMatrix<T>, k: usize) -> SparseMatrix<T> {
    (1..k).fold(f.clone(), |acc, _| acc.kron(f))
}

/// The map of total complexes induced by an algebra morphism, on the
/// degrees materialized by both bicomplexes.
pub fn induced_total_map<T: Scalar>(
    f: &AlgebraMorphism<T>,
    source: &CyclicBicomplex<T>,
    target: &CyclicBicomplex<T>,
    columns: usize,
) -> Result<ChainMap<T>, HochError> {
    let s = Arc::new(source.total(columns)?);
    let t = Arc::new(target.total(columns)?);
    let top = source.top().min(target.top());
    let powers: Vec<SparseMatrix<T>> = (0..=top).map(|p| tensor_power(f.matrix(), p + 1)).collect();
    let components = (0..=top)
        .map(|n| {
            let sl = source.layout(n, columns);
            let tl = target.layout(n, columns);
            let blocks: Vec<Vec<Option<&SparseMatrix<T>>>> = tl
                .iter()
                .map(|tb| sl.iter().map(|sb| (sb.column == tb.column).then(|| &powers[sb.row])).collect())
                .collect();
            let rows: Vec<usize> = tl.iter().map(|b| b.size).collect();
            let cols: Vec<usize> = sl.iter().map(|b| b.size).collect();
            SparseMatrix::block(&rows, &cols, &blocks)
        })
        .collect();
    Ok(ChainMap::new(s, t, 0, components)?)
}

/// The explicit contracting homotopy `s(x) = (−1)^p x ⊗ 1` of the bar
/// complex of a unital algebra, `M ⊗ A^{⊗p} → M ⊗ A^{⊗p+1}`.
pub fn bar_homotopy<T: Scalar>(m: &Bimodule<T>, p: usize) -> Option<SparseMatrix<T>> {
    let unit = m.algebra().unit()?.clone();
    let da = m.algebra().dim();
    let n = m.dim() * da.pow(p as u32);
    let s: T = sign(p);
    let cols = (0..n)
        .map(|x| unit.iter().map(|(u, c)| (x * da + u, s.clone() * c.clone())).collect())
        .collect();
    Some(SparseMatrix::from_columns(n * da, cols))
}

/// Per-degree outcome of `b′s + sb′ = id` on `M ⊗ A^{⊗p}`, for `p = 0..=top`.
pub fn homotopy_check<T: Scalar>(m: &Bimodule<T>, top: usize) -> Result<Vec<bool>, HochError> {
    let s: Vec<SparseMatrix<T>> = (0..=top)
        .map(|p| bar_homotopy(m, p).ok_or_else(|| HochError::Invalid("algebra is not unital".into())))
        .collect::<Result<_, _>>()?;
    let da = m.algebra().dim();
    Ok((0..=top)
        .into_par_iter()
        .map(|p| {
            let n = m.dim() * da.pow(p as u32);
            let mut lhs = bar_prime(m, p + 1).mul(&s[p]);
            if p >= 1 {
                lhs = lhs.add(&s[p - 1].mul(&bar_prime(m, p)));
            }
            lhs == SparseMatrix::identity(n)
        })
        .collect())
}

/// A basis of `A^{⊗n+1}/(1 − t)`: one representative word per rotation
/// orbit that survives the sign.
#[derive(Clone, Debug)]
pub struct LambdaBasis {
    pub n: usize,
    pub dim_a: usize,
    /// Representative word of each basis element.
    pub reps: Vec<usize>,
    /// For every word: its basis slot and whether the class carries a sign flip.
    lookup: HashMap<usize, (usize, bool)>,
}

impl LambdaBasis {
    pub fn new(dim_a: usize, n: usize) -> Self {
        let len = n + 1;
        let total = dim_a.pow(len as u32);
        let mut reps = Vec::new();
        let mut lookup = HashMap::new();
        let rotate = |w: usize| (w % dim_a) * dim_a.pow(n as u32) + w / dim_a;
        let mut seen = vec![false; total];
        for w in 0..total {
            if seen[w] {
                continue;
            }
            // Orbit of w under the unsigned rotation; w is lexicographically least
            // since smaller words were visited first.
            let mut orbit = vec![w];
            let mut x = rotate(w);
            while x != w {
                orbit.push(x);
                x = rotate(x);
            }
            for &x in &orbit {
                seen[x] = true;
            }
            let period = orbit.len();
            // t^period w = (−1)^{n·period} w; the class dies if that sign is −1.
            if (n * period) % 2 == 1 {
                continue;
            }
            let slot = reps.len();
            reps.push(w);
            for (k, &x) in orbit.iter().enumerate() {
                // x = rot^k(w) and t^k w = (−1)^{nk} x, so x ≡ (−1)^{nk} w.
                lookup.entry(x).or_insert((slot, (n * k) % 2 == 1));
            }
        }
        LambdaBasis { n, dim_a, reps, lookup }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// The class of a word: `(slot, coefficient)`, or `None` if it is zero.
    pub fn project<T: Scalar>(&self, word: usize) -> Option<(usize, T)> {
        self.lookup.get(&word).map(|&(slot, flip)| (slot, if flip { -T::one() } else { T::one() }))
    }

    /// Projection of a vector in `A^{⊗n+1}`.
    pub fn project_vec<T: Scalar>(&self, v: &[(usize, T)]) -> SparseVec<T> {
        normalize(
            v.iter()
                .filter_map(|(w, c)| self.project::<T>(*w).map(|(s, e)| (s, e * c.clone())))
                .collect(),
        )
    }

    pub fn projection<T: Scalar>(&self) -> SparseMatrix<T> {
        let total = self.dim_a.pow(self.n as u32 + 1);
        let cols = (0..total).map(|w| self.project_vec(&[(w, T::one())])).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    pub fn section<T: Scalar>(&self) -> SparseMatrix<T> {
        let total = self.dim_a.pow(self.n as u32 + 1);
        SparseMatrix::from_columns(total, self.reps.iter().map(|&w| vec![(w, T::one())]).collect())
    }
}

/// Connes' complex `C^λ_n = A^{⊗n+1}/(1 − t)` with the differential induced
/// by `b`, on degrees `0..=D`; certified on `[0, D−1]`. The induced map is
/// checked to be well defined.
pub fn connes_lambda_complex<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<ChainComplex<T>, HochError> {
    check_bound(d)?;
    let m = Bimodule::regular(a.clone());
    let bases: Vec<LambdaBasis> = (0..=d).map(|n| LambdaBasis::new(a.dim(), n)).collect();
    let diffs = (1..=d)
        .into_par_iter()
        .map(|n| {
            let pb = bases[n - 1].projection().mul(&hochschild_b(&m, n));
            let t = cyclic_t(a, n);
            if pb.mul(&t) != pb {
                return Err(HochError::Invalid(format!("b does not descend to coinvariants in degree {n}")));
            }
            Ok(pb.mul(&bases[n].section()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dims = bases.iter().map(LambdaBasis::dim).collect();
    Ok(ChainComplex::new(0, dims, diffs, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::algebra::matrix_algebra;
    use crate::Rational;

    fn arc(a: Algebra<Rational>) -> Arc<Algebra<Rational>> {
        Arc::new(a)
    }

    #[test]
    fn ground_field_homology() {
        let q = arc(ground());
        assert_eq!(hh_homology(&q, 6).unwrap().betti_vec(), vec![1, 0, 0, 0, 0]);
        assert_eq!(hc_homology(&q, 7).unwrap().betti_vec(), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn bar_of_ground_is_acyclic() {
        let q = arc(ground());
        let c = bar_complex(&Bimodule::regular(q), 6).unwrap();
        assert!(c.betti().betti_vec().iter().all(|&b| b == 0));
    }

    #[test]
    fn bar_of_null_algebra_has_zero_differentials() {
        let v = arc(null_algebra(1));
        let c = bar_complex(&Bimodule::regular(v), 5).unwrap();
        assert_eq!(c.betti().betti_vec(), vec![1; 5]);
    }

    #[test]
    fn cyclic_operators() {
        let q = ground::<Rational>();
        assert_eq!(cyclic_t(&q, 1), SparseMatrix::scalar(1, -Rational::from_int(1)));
        assert!(cyclic_n(&q, 1).is_zero());
        let dual = dual_numbers::<Rational>();
        for p in 0..=5 {
            let t = cyclic_t(&dual, p);
            let mut pow = SparseMatrix::identity(t.rows());
            for _ in 0..=p {
                pow = t.mul(&pow);
            }
            assert_eq!(pow, SparseMatrix::identity(t.rows()));
        }
    }

    #[test]
    fn bicomplex_identities_hold() {
        for a in catalog::<Rational>() {
            let bic = CyclicBicomplex::new(a.clone(), 4);
            assert!(bic.check_norm_identities(), "{a}");
            assert!(bic.check_chain_identities(), "{a}");
        }
    }

    #[test]
    fn hh0_is_abelianization() {
        let m2 = arc(matrix_algebra(&ground(), 2));
        assert_eq!(hh_homology(&m2, 3).unwrap().get(0), Some(1));
        let dual = arc(dual_numbers());
        assert_eq!(hh_homology(&dual, 3).unwrap().get(0), Some(2));
    }

    #[test]
    fn connes_sequence_is_exact() {
        for a in [arc(ground()), arc(dual_numbers()), arc(Algebra::zero())] {
            let r = connes_check(&a, 5).unwrap();
            assert!(r.exact, "{a}: {r:?}");
        }
    }

    #[test]
    fn lambda_basis_of_ground() {
        let dims: Vec<usize> = (0..5).map(|n| LambdaBasis::new(1, n).dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn lambda_agrees_with_bicomplex() {
        let dual = arc(dual_numbers());
        let lam = connes_lambda_complex(&dual, 4).unwrap().homology(DegreeRange::new(0, 3), false).unwrap();
        let hc = hc_homology(&dual, 5).unwrap();
        assert_eq!(lam.betti, hc.betti);
    }

    #[test]
    fn unital_homotopy() {
        let t3 = arc(truncated_poly(3));
        assert!(homotopy_check(&Bimodule::regular(t3), 4).unwrap().iter().all(|&ok| ok));
        let v = arc(null_algebra(1));
        assert!(homotopy_check(&Bimodule::regular(v), 2).is_err());
    }

    #[test]
    fn rejects_small_bounds() {
        let q = arc(ground::<Rational>());
        assert_eq!(hh_homology(&q, 1).unwrap_err(), HochError::DegreeBound { found: 1, min: 2 });
    }
}
