//! Chain complexes over a field, chain maps, homology, mapping cones and
//! quasi-isomorphism checks.
//!
//! Indexing is homological: `d_n` maps degree `n` to degree `n − 1`. A complex
//! stores the degrees `lo..=hi` it has materialized. Complexes that are known
//! to vanish above `hi` are *bounded*; for all others the top degree is a
//! truncation and homology there is not reported.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kernel, rank, Echelon, Insert};
use crate::scalar::Scalar;
use crate::sparse::{SparseMatrix, SparseVec};

/// An inclusive interval of degrees; empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        DegreeRange { lo, hi }
    }

    pub fn empty() -> Self {
        DegreeRange { lo: 0, hi: -1 }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn covers(&self, other: &DegreeRange) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn intersect(&self, other: &DegreeRange) -> DegreeRange {
        DegreeRange::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn shift(&self, k: i64) -> DegreeRange {
        DegreeRange::new(self.lo + k, self.hi + k)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("degrees {requested} are not certified (certified range {certified})")]
    RangeNotCertified {
        requested: DegreeRange,
        certified: DegreeRange,
    },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("differential d_{degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: i64,
        found: (usize, usize),
        expected: (usize, usize),
    },
    #[error("d_{0} ∘ d_{1} is not zero", .degree - 1, .degree)]
    NotAComplex { degree: i64 },
    #[error("map does not commute with differentials in degree {degree}")]
    NotAChainMap { degree: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<T> {
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k}`; `diffs[0]` maps into the zero space.
    diffs: Vec<SparseMatrix<T>>,
    bounded_above: bool,
}

impl<T: Scalar> ChainComplex<T> {
    /// Builds a complex on degrees `lo..lo+dims.len()`. `diffs[k]` is
    /// `d_{lo+k}`; the entry for the bottom degree may be omitted by passing
    /// one fewer differential. Shapes and `d ∘ d = 0` are verified.
    pub fn new(
        lo: i64,
        dims: Vec<usize>,
        mut diffs: Vec<SparseMatrix<T>>,
        bounded_above: bool,
    ) -> Result<Self, ChainError> {
        if diffs.len() + 1 == dims.len() {
            diffs.insert(0, SparseMatrix::zeros(0, dims[0]));
        }
        if diffs.len() != dims.len() {
            return Err(ChainError::DegreeMismatch(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                dims.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let expected = (if k == 0 { 0 } else { dims[k - 1] }, dims[k]);
            if d.shape() != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: lo + k as i64,
                    found: d.shape(),
                    expected,
                });
            }
        }
        let c = ChainComplex {
            lo,
            dims,
            diffs,
            bounded_above,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    /// A complex with all differentials zero.
    pub fn zero_differentials(lo: i64, dims: Vec<usize>, bounded_above: bool) -> Self {
        let diffs = (0..dims.len())
            .map(|k| SparseMatrix::zeros(if k == 0 { 0 } else { dims[k - 1] }, dims[k]))
            .collect();
        ChainComplex {
            lo,
            dims,
            diffs,
            bounded_above,
        }
    }

    fn check_square_zero(&self) -> Result<(), ChainError> {
        (1..self.diffs.len()).into_par_iter().try_for_each(|k| {
            if self.diffs[k - 1].mul(&self.diffs[k]).is_zero() {
                Ok(())
            } else {
                Err(ChainError::NotAComplex {
                    degree: self.lo + k as i64,
                })
            }
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top materialized degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_bounded_above(&self) -> bool {
        self.bounded_above
    }

    pub fn materialized_range(&self) -> DegreeRange {
        DegreeRange::new(self.lo, self.hi())
    }

    /// Degrees where homology is determined by the stored data.
    pub fn certified_range(&self) -> DegreeRange {
        if self.bounded_above {
            self.materialized_range()
        } else {
            DegreeRange::new(self.lo, self.hi() - 1)
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension in degree `n` if it is known: stored, below `lo`, or above a bounded top.
    pub fn dim_at(&self, n: i64) -> Option<usize> {
        if n < self.lo {
            Some(0)
        } else if n <= self.hi() {
            Some(self.dims[(n - self.lo) as usize])
        } else if self.bounded_above {
            Some(0)
        } else {
            None
        }
    }

    /// `d_n`, if known.
    pub fn diff_at(&self, n: i64) -> Option<Cow<'_, SparseMatrix<T>>> {
        if self.materialized_range().contains(n) {
            Some(Cow::Borrowed(&self.diffs[(n - self.lo) as usize]))
        } else {
            let (src, dst) = (self.dim_at(n)?, self.dim_at(n - 1)?);
            Some(Cow::Owned(SparseMatrix::zeros(dst, src)))
        }
    }

    pub fn diffs(&self) -> &[SparseMatrix<T>] {
        &self.diffs
    }

    /// Reindexes so that new degree `n` is old degree `n + k`; the differential
    /// picks up the sign `(−1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex<T> {
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(SparseMatrix::neg).collect()
        } else {
            self.diffs.clone()
        };
        ChainComplex {
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs,
            bounded_above: self.bounded_above,
        }
    }

    /// Restricts to degrees `lo..=hi` of the materialized range. The result is
    /// unbounded unless nothing was cut off from a bounded complex.
    pub fn truncate(&self, hi: i64) -> ChainComplex<T> {
        let hi = hi.min(self.hi());
        let keep = (hi - self.lo + 1).max(0) as usize;
        ChainComplex {
            lo: self.lo,
            dims: self.dims[..keep].to_vec(),
            diffs: self.diffs[..keep].to_vec(),
            bounded_above: self.bounded_above && hi == self.hi(),
        }
    }

    /// Ranks of `d_n` for `n` in `degrees` (computed in parallel).
    fn ranks(&self, degrees: &[i64]) -> BTreeMap<i64, usize> {
        degrees
            .par_iter()
            .map(|&n| (n, self.diff_at(n).map(|d| rank(&d)).unwrap_or(0)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    fn check_certified(&self, range: DegreeRange) -> Result<(), ChainError> {
        if self.certified_range().covers(&range) || range.is_empty() {
            Ok(())
        } else {
            Err(ChainError::RangeNotCertified {
                requested: range,
                certified: self.certified_range(),
            })
        }
    }

    /// Betti numbers on `range`, optionally with cycle representatives.
    pub fn homology(&self, range: DegreeRange, with_reps: bool) -> Result<HomologyReport<T>, ChainError> {
        self.check_certified(range)?;
        let degrees: Vec<i64> = if range.is_empty() {
            Vec::new()
        } else {
            (range.lo..=range.hi + 1).collect()
        };
        let ranks = self.ranks(&degrees);
        let betti = range
            .iter()
            .map(|n| {
                let dim = self.dim_at(n).expect("certified degree");
                (n, dim - ranks[&n] - ranks[&(n + 1)])
            })
            .collect();
        let representatives = with_reps.then(|| {
            range
                .iter()
                .map(|n| (n, self.representatives(n)))
                .collect()
        });
        Ok(HomologyReport {
            betti,
            certified_range: range,
            representatives,
        })
    }

    /// Betti numbers on the whole certified range.
    pub fn betti(&self) -> HomologyReport<T> {
        self.homology(self.certified_range(), false)
            .expect("certified range is always certified")
    }

    /// Cycles in degree `n` that are independent modulo boundaries.
    pub fn representatives(&self, n: i64) -> Vec<SparseVec<T>> {
        let dim = self.dim_at(n).unwrap_or(0);
        let cycles = self.diff_at(n).map(|d| kernel(&d)).unwrap_or_default();
        let mut ech = Echelon::new(dim);
        if let Some(d) = self.diff_at(n + 1) {
            for c in d.columns() {
                ech.insert(c.clone());
            }
        }
        cycles
            .into_iter()
            .filter(|z| ech.insert(z.clone()) == Insert::Independent)
            .collect()
    }

    /// `Σ (−1)^n dim_n` over a range.
    pub fn euler_characteristic_dims(&self, range: DegreeRange) -> i64 {
        range
            .iter()
            .map(|n| sign(n) * self.dim_at(n).unwrap_or(0) as i64)
            .sum()
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Betti numbers with the degrees in which they are exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologyReport<T> {
    pub betti: BTreeMap<i64, usize>,
    pub certified_range: DegreeRange,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<BTreeMap<i64, Vec<SparseVec<T>>>>,
}

impl<T> HomologyReport<T> {
    pub fn betti_vec(&self) -> Vec<usize> {
        self.betti.values().copied().collect()
    }

    pub fn get(&self, n: i64) -> Option<usize> {
        self.betti.get(&n).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().map(|(n, b)| sign(*n) * *b as i64).sum()
    }
}

/// A chain map given by its components on the degrees where both ends are materialized.
#[derive(Clone, Debug)]
pub struct ChainMap<T> {
    source: Arc<ChainComplex<T>>,
    target: Arc<ChainComplex<T>>,
    lo: i64,
    components: Vec<SparseMatrix<T>>,
}

impl<T: Scalar> ChainMap<T> {
    /// `components[k]` is the component in degree `lo + k`. Shapes and
    /// commutation with the differentials are verified.
    pub fn new(
        source: Arc<ChainComplex<T>>,
        target: Arc<ChainComplex<T>>,
        lo: i64,
        components: Vec<SparseMatrix<T>>,
    ) -> Result<Self, ChainError> {
        for (k, f) in components.iter().enumerate() {
            let n = lo + k as i64;
            let expected = (
                target.dim_at(n).ok_or_else(|| mismatch(n, "target"))?,
                source.dim_at(n).ok_or_else(|| mismatch(n, "source"))?,
            );
            if f.shape() != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    found: f.shape(),
                    expected,
                });
            }
        }
        let map = ChainMap {
            source,
            target,
            lo,
            components,
        };
        map.check_commutes()?;
        Ok(map)
    }

    /// Builds the map degree by degree from a closure, on the degrees where
    /// both complexes are materialized.
    pub fn from_fn(
        source: Arc<ChainComplex<T>>,
        target: Arc<ChainComplex<T>>,
        f: impl Fn(i64) -> SparseMatrix<T> + Sync,
    ) -> Result<Self, ChainError> {
        let range = source.materialized_range().intersect(&target.materialized_range());
        let components = range.iter().collect::<Vec<_>>().into_par_iter().map(&f).collect();
        Self::new(source, target, range.lo, components)
    }

    fn check_commutes(&self) -> Result<(), ChainError> {
        let degrees: Vec<i64> = (self.lo..=self.hi() + 1).collect();
        degrees.par_iter().try_for_each(|&n| {
            let (Some(f_n), Some(f_prev), Some(ds), Some(dt)) = (
                self.component(n),
                self.component(n - 1),
                self.source.diff_at(n),
                self.target.diff_at(n),
            ) else {
                return Ok(());
            };
            if dt.mul(&f_n) == f_prev.mul(&ds) {
                Ok(())
            } else {
                Err(ChainError::NotAChainMap { degree: n })
            }
        })
    }

    pub fn source(&self) -> &Arc<ChainComplex<T>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex<T>> {
        &self.target
    }

    fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    /// Component in degree `n`, if known (zero where either side is known to vanish).
    pub fn component(&self, n: i64) -> Option<Cow<'_, SparseMatrix<T>>> {
        if self.lo <= n && n <= self.hi() {
            return Some(Cow::Borrowed(&self.components[(n - self.lo) as usize]));
        }
        let (s, t) = (self.source.dim_at(n), self.target.dim_at(n));
        match (s, t) {
            (Some(0), Some(t)) => Some(Cow::Owned(SparseMatrix::zeros(t, 0))),
            (Some(s), Some(0)) => Some(Cow::Owned(SparseMatrix::zeros(0, s))),
            _ => None,
        }
    }
}

fn mismatch(n: i64, side: &str) -> ChainError {
    ChainError::DegreeMismatch(format!("{side} has no data in degree {n}"))
}

/// Mapping cone: `cone_n = target_n ⊕ source_{n−1}` with differential
/// `[[d_target, f], [0, −d_source]]`.
pub fn cone<T: Scalar>(f: &ChainMap<T>) -> Result<ChainComplex<T>, ChainError> {
    let (s, t) = (&f.source, &f.target);
    let lo = t.lo().min(s.lo() + 1);
    let bounded = s.is_bounded_above() && t.is_bounded_above();
    let known = |n: i64| {
        t.dim_at(n).is_some()
            && s.dim_at(n - 1).is_some()
            && f.component(n - 1).is_some()
            && t.diff_at(n).is_some()
            && s.diff_at(n - 1).is_some()
    };
    let top = if bounded {
        t.hi().max(s.hi() + 1)
    } else {
        let mut n = lo;
        while known(n + 1) {
            n += 1;
        }
        n
    };
    if top < lo || !known(lo) {
        return Err(ChainError::DegreeMismatch(
            "cone has no materialized degrees".into(),
        ));
    }
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=top {
        if !known(n) {
            return Err(ChainError::DegreeMismatch(format!(
                "missing data for cone degree {n}"
            )));
        }
        let (tn, sn1) = (t.dim_at(n).unwrap(), s.dim_at(n - 1).unwrap());
        let (tn1, sn2) = (t.dim_at(n - 1).unwrap(), s.dim_at(n - 2).unwrap());
        dims.push(tn + sn1);
        let dt = t.diff_at(n).unwrap();
        let ds = s.diff_at(n - 1).unwrap().neg();
        let fc = f.component(n - 1).unwrap();
        let d = if n == lo {
            SparseMatrix::zeros(0, tn + sn1)
        } else {
            SparseMatrix::block(
                &[tn1, sn2],
                &[tn, sn1],
                &[vec![Some(&*dt), Some(&*fc)], vec![None, Some(&ds)]],
            )
        };
        diffs.push(d);
    }
    ChainComplex::new(lo, dims, diffs, bounded)
}

/// Homotopy fiber of a chain map: the cone shifted down by one, so that
/// `hofib_n = target_{n+1} ⊕ source_n` with differential `−d_cone`.
pub fn homotopy_fiber<T: Scalar>(f: &ChainMap<T>) -> Result<ChainComplex<T>, ChainError> {
    Ok(cone(f)?.shift(1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiIsoVerdict {
    pub quasi_iso: bool,
    pub range: DegreeRange,
    /// Least degree where the cone has homology.
    pub failing_degree: Option<i64>,
    /// Cone Betti number in the failing degree.
    pub defect: usize,
    pub cone_betti: BTreeMap<i64, usize>,
}

/// `f` is a quasi-isomorphism on `range` iff its cone is acyclic there.
pub fn is_quasi_iso<T: Scalar>(f: &ChainMap<T>, range: DegreeRange) -> Result<QuasiIsoVerdict, ChainError> {
    let c = cone(f)?;
    let available = c.certified_range();
    if !available.covers(&range) {
        return Err(ChainError::DegreeMismatch(format!(
            "cone is certified on {available}, requested {range}"
        )));
    }
    let rep = c.homology(range, false)?;
    let failing = rep.betti.iter().find(|(_, b)| **b > 0).map(|(n, b)| (*n, *b));
    Ok(QuasiIsoVerdict {
        quasi_iso: failing.is_none(),
        range,
        failing_degree: failing.map(|x| x.0),
        defect: failing.map(|x| x.1).unwrap_or(0),
        cone_betti: rep.betti,
    })
}

/// Rank of the map induced on homology by `f_n : X_n → Y_n`, given a spanning set
/// of the cycles `Z_n(X)` and the boundary map `d^Y_{n+1}`.
pub fn induced_rank<T: Scalar>(
    f_n: &SparseMatrix<T>,
    cycles: &[SparseVec<T>],
    d_next: &SparseMatrix<T>,
) -> usize {
    let mut ech = Echelon::new(f_n.rows());
    for c in d_next.columns() {
        ech.insert(c.clone());
    }
    let base = ech.rank();
    for z in cycles {
        ech.insert(f_n.mul_vec(z));
    }
    ech.rank() - base
}

/// Rank bookkeeping for the long exact sequence of a degreewise split short
/// exact sequence `0 → K → C → Q → 0`, where `K_n` is spanned by the
/// coordinates flagged in `in_sub[n]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LesDegree {
    pub degree: i64,
    pub h_sub: usize,
    pub h_total: usize,
    pub h_quot: usize,
    /// `H_n(K) → H_n(C)`
    pub rank_incl: usize,
    /// `H_n(C) → H_n(Q)`
    pub rank_proj: usize,
    /// `H_n(Q) → H_{n−1}(K)`
    pub rank_connecting: usize,
    pub exact: bool,
}

struct Split<T> {
    sub: Vec<usize>,
    quot: Vec<usize>,
    d: SparseMatrix<T>,
}

/// Checks exactness of the long exact sequence in every degree of `range`.
///
/// `in_sub(n)` lists, for degree `n`, which coordinates span the subcomplex.
pub fn split_les_check<T: Scalar>(
    c: &ChainComplex<T>,
    in_sub: impl Fn(i64) -> Vec<bool>,
    range: DegreeRange,
) -> Result<Vec<LesDegree>, ChainError> {
    c.check_certified(range)?;
    if range.is_empty() {
        return Ok(Vec::new());
    }
    let split = |n: i64| -> Split<T> {
        let flags = if c.dim_at(n).unwrap_or(0) == 0 { Vec::new() } else { in_sub(n) };
        let sub = (0..flags.len()).filter(|&i| flags[i]).collect();
        let quot = (0..flags.len()).filter(|&i| !flags[i]).collect();
        Split {
            sub,
            quot,
            d: c.diff_at(n).map(|d| d.into_owned()).expect("certified degrees have differentials"),
        }
    };
    let lo = range.lo - 2;
    let splits: BTreeMap<i64, Split<T>> = (lo..=range.hi + 1).map(|n| (n, split(n))).collect();
    let empty_split = Split { sub: vec![], quot: vec![], d: SparseMatrix::zeros(0, 0) };
    let at = |n: i64| splits.get(&n).unwrap_or(&empty_split);
    let prev_sub = |n: i64| at(n - 1).sub.clone();
    let prev_quot = |n: i64| at(n - 1).quot.clone();
    let d_sub = |n: i64| -> SparseMatrix<T> {
        let s = at(n);
        s.d.select(&prev_sub(n), &s.sub)
    };
    let d_quot = |n: i64| -> SparseMatrix<T> {
        let s = at(n);
        s.d.select(&prev_quot(n), &s.quot)
    };
    let connecting = |n: i64| -> SparseMatrix<T> {
        let s = at(n);
        s.d.select(&prev_sub(n), &s.quot)
    };
    // The subcomplex must be closed under d.
    for n in lo + 1..=range.hi + 1 {
        if !d_quot_into_sub_ok(&at(n).d, &prev_quot(n), &at(n).sub) {
            return Err(ChainError::DegreeMismatch(format!(
                "coordinates flagged in degree {n} do not span a subcomplex"
            )));
        }
    }
    let betti = |m: &SparseMatrix<T>, next: &SparseMatrix<T>, dim: usize| dim - rank(m) - rank(next);
    let rows: Vec<LesDegree> = range
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let s = at(n);
            let d_n = c.diff_at(n).unwrap().into_owned();
            let d_next = c.diff_at(n + 1).unwrap().into_owned();
            let h_total = betti(&d_n, &d_next, c.dim_at(n).unwrap());
            let h_sub = betti(&d_sub(n), &d_sub(n + 1), s.sub.len());
            let h_quot = betti(&d_quot(n), &d_quot(n + 1), s.quot.len());
            let dim = c.dim_at(n).unwrap();
            let emb = SparseMatrix::identity(dim).select(&(0..dim).collect::<Vec<_>>(), &s.sub);
            let proj = SparseMatrix::identity(dim).select(&s.quot, &(0..dim).collect::<Vec<_>>());
            let rank_incl = induced_rank(&emb, &kernel(&d_sub(n)), &d_next);
            let rank_proj = induced_rank(&proj, &kernel(&d_n), &d_quot(n + 1));
            let rank_connecting = induced_rank(&connecting(n), &kernel(&d_quot(n)), &d_sub(n));
            let h_sub_prev = betti(&d_sub(n - 1), &d_sub(n), at(n - 1).sub.len());
            let rank_incl_prev = {
                let dim_prev = c.dim_at(n - 1).unwrap_or(0);
                let emb_prev =
                    SparseMatrix::identity(dim_prev).select(&(0..dim_prev).collect::<Vec<_>>(), &at(n - 1).sub);
                induced_rank(&emb_prev, &kernel(&d_sub(n - 1)), &d_n)
            };
            let exact = h_total == rank_incl + rank_proj
                && h_quot == rank_proj + rank_connecting
                && h_sub_prev == rank_connecting + rank_incl_prev;
            LesDegree {
                degree: n,
                h_sub,
                h_total,
                h_quot,
                rank_incl,
                rank_proj,
                rank_connecting,
                exact,
            }
        })
        .collect();
    Ok(rows)
}

fn d_quot_into_sub_ok<T: Scalar>(d: &SparseMatrix<T>, prev_quot: &[usize], sub: &[usize]) -> bool {
    if d.rows() == 0 {
        return true;
    }
    d.select(prev_quot, sub).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn arc<T>(c: ChainComplex<T>) -> Arc<ChainComplex<T>> {
        Arc::new(c)
    }

    #[test]
    fn acyclic_two_term() {
        let c = ChainComplex::<Rational>::new(0, vec![1, 1], vec![SparseMatrix::identity(1)], true).unwrap();
        let h = c.homology(DegreeRange::new(0, 1), false).unwrap();
        assert_eq!(h.betti_vec(), vec![0, 0]);
    }

    #[test]
    fn zero_differentials_give_dims() {
        let c = ChainComplex::<Rational>::zero_differentials(0, vec![2, 3, 1], true);
        assert_eq!(c.betti().betti_vec(), vec![2, 3, 1]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = SparseMatrix::from_dense(1, 1, &[vec![q(1)]]);
        let d2 = SparseMatrix::from_dense(1, 1, &[vec![q(1)]]);
        let err = ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2], true).unwrap_err();
        assert_eq!(err, ChainError::NotAComplex { degree: 2 });
    }

    #[test]
    fn truncated_top_is_not_certified() {
        let c = ChainComplex::<Rational>::zero_differentials(0, vec![1, 1, 1], false);
        assert_eq!(c.certified_range(), DegreeRange::new(0, 1));
        let err = c.homology(DegreeRange::new(0, 2), false).unwrap_err();
        assert!(matches!(err, ChainError::RangeNotCertified { .. }));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = arc(ChainComplex::<Rational>::zero_differentials(0, vec![2, 3, 1], true));
        let id = ChainMap::from_fn(c.clone(), c.clone(), |n| {
            SparseMatrix::identity(c.dim_at(n).unwrap())
        })
        .unwrap();
        let v = is_quasi_iso(&id, DegreeRange::new(0, 3)).unwrap();
        assert!(v.quasi_iso);
    }

    #[test]
    fn zero_map_fails_in_degree_zero() {
        let c = arc(ChainComplex::<Rational>::zero_differentials(0, vec![1], true));
        let zero = ChainMap::from_fn(c.clone(), c.clone(), |_| SparseMatrix::zeros(1, 1)).unwrap();
        let v = is_quasi_iso(&zero, DegreeRange::new(0, 1)).unwrap();
        assert!(!v.quasi_iso);
        assert_eq!(v.failing_degree, Some(0));
        assert_eq!(v.defect, 1);
    }

    #[test]
    fn cone_of_inclusion_into_plane() {
        let s = arc(ChainComplex::<Rational>::zero_differentials(0, vec![1], true));
        let t = arc(ChainComplex::<Rational>::zero_differentials(0, vec![2], true));
        let inc = ChainMap::new(s, t, 0, vec![SparseMatrix::from_dense(2, 1, &[vec![q(1)], vec![q(0)]])]).unwrap();
        let c = cone(&inc).unwrap();
        assert_eq!(c.betti().betti_vec(), vec![1, 0]);
    }

    #[test]
    fn rejects_non_chain_map() {
        let s = arc(ChainComplex::<Rational>::new(0, vec![1, 1], vec![SparseMatrix::identity(1)], true).unwrap());
        let t = arc(ChainComplex::<Rational>::zero_differentials(0, vec![1, 1], true));
        let err = ChainMap::from_fn(s, t, |_| SparseMatrix::identity(1)).unwrap_err();
        assert_eq!(err, ChainError::NotAChainMap { degree: 1 });
    }

    #[test]
    fn les_of_split_pair() {
        // C: Q^2 -> Q^2 identity in degree 1 -> 0; sub = first coordinate in both degrees.
        let c = ChainComplex::<Rational>::new(0, vec![2, 2], vec![SparseMatrix::identity(2)], true).unwrap();
        let rows = split_les_check(&c, |_| vec![true, false], DegreeRange::new(0, 1)).unwrap();
        assert!(rows.iter().all(|r| r.exact));
    }
}
