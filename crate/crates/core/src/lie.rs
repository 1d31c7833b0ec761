//! Lie algebras given by structure constants, their Chevalley–Eilenberg
//! complexes, and the generalized trace into Connes' complex.
//!
//! Exterior powers use sorted index tuples in lexicographic order. The CE
//! differential is
//! `d(x_1∧⋯∧x_p) = Σ_{i<j} (−1)^{i+j} [x_i, x_j] ∧ x_1∧⋯x̂_i⋯x̂_j⋯∧x_p`,
//! so `d(x∧y) = −[x, y]`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{matrix_algebra, Algebra, AlgebraError, Ideal};
use crate::chain::{ChainComplex, ChainError, DegreeRange, HomologyReport};
use crate::hochschild::{connes_lambda_complex, hc_homology, HochError, LambdaBasis};
use crate::linalg::{Echelon, Insert};
use crate::scalar::Scalar;
use crate::sparse::{axpy, normalize, SparseMatrix, SparseVec};

/// Default bound on the dimension of a single exterior power.
pub const DEFAULT_SIZE_LIMIT: usize = 250_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("bracket is not antisymmetric on basis pair ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("exterior power Λ^{degree} has dimension {size}, above the limit {limit}")]
    SizeLimit { degree: usize, size: usize, limit: usize },
    #[error("Lie algebra is not nilpotent (lower central series stalls at dimension {0})")]
    NotNilpotent(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hoch(#[from] HochError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Where a Lie algebra came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LieKind {
    /// `gl_r(A)`.
    General { r: usize, base: String },
    /// `t^σ_n(A, I)`.
    Triangular { n: usize },
    /// The commutator bracket of an associative algebra.
    FromAssoc,
    /// A subalgebra cut out of another Lie algebra.
    Subalgebra,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    name: String,
    dim: usize,
    /// `bracket[i * dim + j] = [e_i, e_j]`.
    bracket: Vec<SparseVec<T>>,
    kind: LieKind,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Validates antisymmetry and the Jacobi identity on all basis triples.
    pub fn new(name: impl Into<String>, dim: usize, bracket: Vec<SparseVec<T>>, kind: LieKind) -> Result<Self, LieError> {
        if bracket.len() != dim * dim {
            return Err(LieError::Invalid(format!("{} bracket entries for dimension {dim}", bracket.len())));
        }
        let bracket: Vec<SparseVec<T>> = bracket.into_iter().map(normalize).collect();
        for i in 0..dim {
            for j in i..dim {
                let sum = axpy(&bracket[i * dim + j], &T::one(), &bracket[j * dim + i]);
                if !sum.is_empty() {
                    return Err(LieError::Antisymmetry(i + 1, j + 1));
                }
            }
        }
        let g = LieAlgebra {
            name: name.into(),
            dim,
            bracket,
            kind,
        };
        let triples: Vec<(usize, usize, usize)> = (0..dim)
            .flat_map(|i| (i + 1..dim).flat_map(move |j| (j + 1..dim).map(move |k| (i, j, k))))
            .collect();
        if let Some(&(i, j, k)) = triples.par_iter().find_first(|&&(i, j, k)| !g.jacobi_holds(i, j, k)) {
            return Err(LieError::Jacobi(i + 1, j + 1, k + 1));
        }
        Ok(g)
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let e = |x: usize| vec![(x, T::one())];
        let a = self.bracket_vec(&self.bracket_basis(i, j).clone(), &e(k));
        let b = self.bracket_vec(&self.bracket_basis(j, k).clone(), &e(i));
        let c = self.bracket_vec(&self.bracket_basis(k, i).clone(), &e(j));
        axpy(&axpy(&a, &T::one(), &b), &T::one(), &c).is_empty()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &LieKind {
        &self.kind
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<T> {
        &self.bracket[i * self.dim + j]
    }

    pub fn bracket_vec(&self, x: &[(usize, T)], y: &[(usize, T)]) -> SparseVec<T> {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                acc = axpy(&acc, &(a.clone() * b.clone()), self.bracket_basis(*i, *j));
            }
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(Vec::is_empty)
    }

    /// The Lie subalgebra spanned by `basis`, in the coordinates of that basis.
    /// Fails if the vectors are dependent or the span is not closed.
    pub fn subalgebra(&self, name: impl Into<String>, basis: &[SparseVec<T>], kind: LieKind) -> Result<Self, LieError> {
        let mut ech = Echelon::with_tracking(self.dim);
        for v in basis {
            if ech.insert(v.clone()) != Insert::Independent {
                return Err(LieError::Invalid("subalgebra basis is linearly dependent".into()));
            }
        }
        let k = basis.len();
        let mut bracket = vec![Vec::new(); k * k];
        for i in 0..k {
            for j in 0..k {
                let v = self.bracket_vec(&basis[i], &basis[j]);
                bracket[i * k + j] = ech
                    .express(&v)
                    .ok_or_else(|| LieError::Invalid("span is not closed under the bracket".into()))?;
            }
        }
        LieAlgebra::new(name, k, bracket, kind)
    }

    /// A basis of `[g, g]`.
    pub fn derived_span(&self) -> Vec<SparseVec<T>> {
        crate::algebra::span_basis(self.dim, self.bracket.iter().cloned())
    }

    /// Dimensions of `g = g¹ ⊇ g² = [g, g¹] ⊇ ⋯`, stopping at zero or at the
    /// first repeated dimension.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let mut term: Vec<SparseVec<T>> = (0..self.dim).map(|i| vec![(i, T::one())]).collect();
        let mut dims = vec![self.dim];
        while !term.is_empty() {
            let next = crate::algebra::span_basis(
                self.dim,
                (0..self.dim).flat_map(|i| {
                    let e = vec![(i, T::one())];
                    term.iter().map(move |v| self.bracket_vec(&e, v)).collect::<Vec<_>>()
                }),
            );
            if next.len() == term.len() {
                break;
            }
            dims.push(next.len());
            term = next;
        }
        dims
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0)
    }
}

/// `A` with the bracket `[x, y] = xy − yx`.
pub fn lie_from_assoc<T: Scalar>(a: &Algebra<T>) -> LieAlgebra<T> {
    let d = a.dim();
    let bracket = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| axpy(a.basis_product(i, j), &-T::one(), a.basis_product(j, i)))
        .collect();
    LieAlgebra::new(format!("Lie({})", a.name()), d, bracket, LieKind::FromAssoc)
        .expect("commutator bracket of an associative algebra is a Lie bracket")
}

/// `gl_r(A)`, with basis `E_{ij} ⊗ a` at index `(i * r + j) * dim A + a`.
pub fn gl<T: Scalar>(a: &Algebra<T>, r: usize) -> LieAlgebra<T> {
    let mut g = lie_from_assoc(&matrix_algebra(a, r));
    g.name = format!("gl{r}({})", a.name());
    g.kind = LieKind::General { r, base: a.name().to_string() };
    g
}

/// `sl_r(A) = [gl_r(A), gl_r(A)]`: matrices whose trace lies in `[A, A]`.
pub fn sl<T: Scalar>(a: &Algebra<T>, r: usize) -> Result<LieAlgebra<T>, LieError> {
    let g = gl(a, r);
    let basis = g.derived_span();
    g.subalgebra(format!("sl{r}({})", a.name()), &basis, LieKind::Subalgebra)
}

/// Transitive closure of a strict order on `1..=n` given as pairs `i < j`.
fn strict_order(n: usize, relations: &[(usize, usize)]) -> Result<Vec<Vec<bool>>, LieError> {
    let mut less = vec![vec![false; n]; n];
    for &(i, j) in relations {
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(LieError::Invalid(format!("relation {i} < {j} outside 1..={n}")));
        }
        less[i - 1][j - 1] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if less[i][k] {
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    if (0..n).any(|i| less[i][i]) {
        return Err(LieError::Invalid("relations contain a cycle".into()));
    }
    Ok(less)
}

/// `t^σ_n(A, I) ⊂ gl_n(A)`: entry `(i, j)` ranges over `A` when `i < j` in σ
/// and over `I` otherwise. `relations` lists pairs `(i, j)` meaning `i < j`
/// (1-based), closed transitively. The result is checked to be nilpotent.
pub fn triangular_lie<T: Scalar>(ideal: &Ideal<T>, n: usize, relations: &[(usize, usize)]) -> Result<LieAlgebra<T>, LieError> {
    let a = ideal.ambient();
    let d = a.dim();
    let less = strict_order(n, relations)?;
    let g = gl(a, n);
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let at = |x: usize| (i * n + j) * d + x;
            if less[i][j] {
                basis.extend((0..d).map(|x| vec![(at(x), T::one())]));
            } else {
                basis.extend(
                    ideal
                        .basis()
                        .iter()
                        .map(|v| v.iter().map(|(x, c)| (at(*x), c.clone())).collect::<SparseVec<T>>()),
                );
            }
        }
    }
    let t = g.subalgebra(format!("t{n}({})", a.name()), &basis, LieKind::Triangular { n })?;
    let series = t.lower_central_series();
    match series.last() {
        Some(0) => Ok(t),
        Some(&k) => Err(LieError::NotNilpotent(k)),
        None => unreachable!("series starts at the dimension"),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Λ^p` of an `n`-dimensional space.
pub fn exterior_dim(n: usize, p: usize) -> usize {
    binomial(n, p)
}

/// Sorted `p`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..p).rev().find(|&i| cur[i] < n - p + i) else {
            return out;
        };
        cur[i] += 1;
        for k in i + 1..p {
            cur[k] = cur[k - 1] + 1;
        }
    }
}

/// Lexicographic rank of a sorted subset of `0..n`.
fn subset_rank(n: usize, s: &[usize]) -> usize {
    let p = s.len();
    let mut rank = 0;
    let mut start = 0;
    for (i, &c) in s.iter().enumerate() {
        for v in start..c {
            rank += binomial(n - 1 - v, p - 1 - i);
        }
        start = c + 1;
    }
    rank
}

/// `e_k ∧ (sorted rest)` as a sign and a sorted tuple, or `None` if `k` repeats.
fn wedge_front(k: usize, rest: &[usize]) -> Option<(bool, Vec<usize>)> {
    let pos = rest.partition_point(|&x| x < k);
    if rest.get(pos) == Some(&k) {
        return None;
    }
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(k);
    out.extend_from_slice(&rest[pos..]);
    Some((pos % 2 == 1, out))
}

fn check_size(n: usize, p: usize, limit: usize) -> Result<(), LieError> {
    let size = binomial(n, p);
    if size > limit {
        Err(LieError::SizeLimit { degree: p, size, limit })
    } else {
        Ok(())
    }
}

/// The CE differential `Λ^p g → Λ^{p−1} g`, `p ≥ 1`.
pub fn ce_differential<T: Scalar>(g: &LieAlgebra<T>, p: usize) -> SparseMatrix<T> {
    let n = g.dim;
    let rows = binomial(n, p - 1);
    let cols: Vec<SparseVec<T>> = subsets(n, p)
        .into_par_iter()
        .map(|s| {
            let mut acc: SparseVec<T> = Vec::new();
            for i in 0..p {
                for j in i + 1..p {
                    let br = g.bracket_basis(s[i], s[j]);
                    if br.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
                    let outer = (i + j) % 2 == 1;
                    for (k, c) in br {
                        if let Some((flip, t)) = wedge_front(*k, &rest) {
                            let c = if outer ^ flip { -c.clone() } else { c.clone() };
                            acc.push((subset_rank(n, &t), c));
                        }
                    }
                }
            }
            normalize(acc)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

/// `Λ^• g` on degrees `0..=D`. Certified on `[0, D−1]`, or everywhere once
/// `D ≥ dim g`. Fails if some `Λ^p` exceeds `size_limit`.
pub fn ce_complex<T: Scalar>(g: &LieAlgebra<T>, d: usize, size_limit: usize) -> Result<ChainComplex<T>, LieError> {
    if d < 1 {
        return Err(LieError::Invalid("CE degree bound must be at least 1".into()));
    }
    for p in 0..=d {
        check_size(g.dim, p, size_limit)?;
    }
    let dims = (0..=d).map(|p| binomial(g.dim, p)).collect();
    let diffs = (1..=d).map(|p| ce_differential(g, p)).collect();
    Ok(ChainComplex::new(0, dims, diffs, d >= g.dim)?)
}

/// The reduced complex: `Λ^0` dropped, degrees `1..=D`.
pub fn reduced_ce_complex<T: Scalar>(g: &LieAlgebra<T>, d: usize, size_limit: usize) -> Result<ChainComplex<T>, LieError> {
    let full = ce_complex(g, d, size_limit)?;
    let dims = full.dims()[1..].to_vec();
    let diffs = (2..=d).map(|p| ce_differential(g, p)).collect();
    Ok(ChainComplex::new(1, dims, diffs, d >= g.dim)?)
}

/// CE homology on the certified range of [`ce_complex`].
pub fn ce_homology<T: Scalar>(g: &LieAlgebra<T>, d: usize, size_limit: usize) -> Result<HomologyReport<T>, LieError> {
    Ok(ce_complex(g, d, size_limit)?.betti())
}

/// All permutations of `0..n` with their parity.
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), odd));
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            // Placing v after the prefix creates one inversion per larger earlier entry.
            let inv = prefix.iter().filter(|&&x| x > v).count();
            used[v] = true;
            prefix.push(v);
            go(prefix, used, odd ^ (inv % 2 == 1), out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], false, &mut out);
    out
}

/// The generalized trace `Λ^{n+1} gl_r(A) → C^λ_n`:
/// `(a_0 M_0)∧⋯∧(a_n M_n) ↦ Σ_{σ ∈ S_n} sgn σ · tr(M_0 M_{σ1}⋯M_{σn}) [a_0 ⊗ a_{σ1} ⊗ ⋯ ⊗ a_{σn}]`.
/// Columns follow the exterior basis of [`gl`], rows the basis of [`LambdaBasis`].
pub fn generalized_trace<T: Scalar>(a: &Algebra<T>, r: usize, n: usize) -> SparseMatrix<T> {
    let d = a.dim();
    let dim_g = r * r * d;
    let lambda = LambdaBasis::new(d, n);
    let perms = permutations(n);
    let decode = |g: usize| (g / d / r, (g / d) % r, g % d);
    let cols = subsets(dim_g, n + 1)
        .into_par_iter()
        .map(|s| {
            let parts: Vec<(usize, usize, usize)> = s.iter().map(|&g| decode(g)).collect();
            let mut acc = Vec::new();
            for (perm, odd) in &perms {
                let order: Vec<usize> = std::iter::once(0).chain(perm.iter().map(|&k| k + 1)).collect();
                // tr(E_{i0 j0} E_{i1 j1} ⋯) is 1 exactly when the indices chain around.
                let closes = (0..=n).all(|k| parts[order[k]].1 == parts[order[(k + 1) % (n + 1)]].0);
                if !closes {
                    continue;
                }
                let word = order.iter().fold(0, |acc, &k| acc * d + parts[k].2);
                if let Some((slot, c)) = lambda.project::<T>(word) {
                    acc.push((slot, if *odd { -c } else { c }));
                }
            }
            normalize(acc)
        })
        .collect();
    SparseMatrix::from_columns(lambda.dim(), cols)
}

/// Outcome of `Tr_n ∘ d_CE = ε · b_λ ∘ Tr_{n+1}` in one degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceDegree {
    pub n: usize,
    /// The sign ε that makes the identity hold; `None` when both sides vanish
    /// or neither sign works.
    pub sign: Option<i64>,
    pub holds: bool,
}

/// Checks the chain-map identity for `n = 0..=max_n`.
pub fn trace_chain_check<T: Scalar>(
    a: &Arc<Algebra<T>>,
    r: usize,
    max_n: usize,
    size_limit: usize,
) -> Result<Vec<TraceDegree>, LieError> {
    let g = gl(a, r);
    let ce = ce_complex(&g, max_n + 2, size_limit)?;
    let lam = connes_lambda_complex(a, (max_n + 1).max(2))?;
    let traces: Vec<SparseMatrix<T>> = (0..=max_n + 1).map(|n| generalized_trace(a, r, n)).collect();
    Ok((0..=max_n)
        .map(|n| {
            let lhs = traces[n].mul(&ce.diff_at(n as i64 + 2).expect("materialized"));
            let rhs = lam.diff_at(n as i64 + 1).expect("materialized").mul(&traces[n + 1]);
            let (sign, holds) = if lhs.is_zero() && rhs.is_zero() {
                (None, true)
            } else if lhs == rhs {
                (Some(1), true)
            } else if lhs == rhs.neg() {
                (Some(-1), true)
            } else {
                (None, false)
            };
            TraceDegree { n, sign, holds }
        })
        .collect())
}

/// Graded dimensions of the free graded-commutative algebra with `hc[k−1]`
/// generators in degree `k`, through degree `d`.
pub fn sym_model_betti(hc: &[usize], d: usize) -> Vec<usize> {
    let mut series = vec![0usize; d + 1];
    series[0] = 1;
    for k in 1..=d {
        let g = hc.get(k - 1).copied().unwrap_or(0);
        if g == 0 {
            continue;
        }
        // Odd generators contribute (1 + x^k)^g, even ones (1 − x^k)^{−g}.
        let factor: Vec<usize> = (0..=d / k)
            .map(|m| if k % 2 == 1 { binomial(g, m) } else { binomial(g + m - 1, m) })
            .collect();
        let mut next = vec![0usize; d + 1];
        for (i, &s) in series.iter().enumerate() {
            for (m, &f) in factor.iter().enumerate() {
                if i + k * m <= d {
                    next[i + k * m] += s * f;
                }
            }
        }
        series = next;
    }
    series
}

/// CE homology of `gl_r(A)` against the free model on `HC_{•−1}(A)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LqtReport {
    pub algebra: String,
    pub r: usize,
    pub range: DegreeRange,
    pub ce_betti: Vec<usize>,
    pub hc_betti: Vec<usize>,
    pub sym_betti: Vec<usize>,
    /// Whether `r ≥ D`, the range in which agreement is expected.
    pub stable: bool,
    pub agree: bool,
    pub first_mismatch: Option<i64>,
}

pub fn lqt_verify<T: Scalar>(a: &Arc<Algebra<T>>, r: usize, d: usize, size_limit: usize) -> Result<LqtReport, LieError> {
    if !a.is_unital() {
        return Err(LieError::Invalid(format!("{} is not unital", a.name())));
    }
    if d < 1 {
        return Err(LieError::Invalid("degree bound must be at least 1".into()));
    }
    let g = gl(a, r);
    let ce = ce_complex(&g, d + 1, size_limit)?;
    let range = DegreeRange::new(0, d as i64);
    let ce_betti = ce.homology(range, false)?.betti_vec();
    let hc_betti = hc_homology(a, d + 1)?.betti_vec();
    let sym_betti = sym_model_betti(&hc_betti, d);
    let first_mismatch = (0..=d).find(|&k| ce_betti[k] != sym_betti[k]).map(|k| k as i64);
    Ok(LqtReport {
        algebra: a.name().to_string(),
        r,
        range,
        ce_betti,
        hc_betti,
        sym_betti,
        stable: r >= d,
        agree: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// `H_2` of `gl_r(A)` and of `sl_r(A)` against `HC_1(A)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct H2Report {
    pub algebra: String,
    pub r: usize,
    pub h2_gl: usize,
    pub h2_sl: usize,
    pub hc0: usize,
    pub hc1: usize,
    pub gl_equal: bool,
    pub sl_equal: bool,
}

pub fn h2_vs_hc1<T: Scalar>(a: &Arc<Algebra<T>>, r: usize, size_limit: usize) -> Result<H2Report, LieError> {
    let h2 = |g: &LieAlgebra<T>| -> Result<usize, LieError> {
        Ok(ce_complex(g, 3, size_limit)?.homology(DegreeRange::new(2, 2), false)?.betti_vec()[0])
    };
    let h2_gl = h2(&gl(a, r))?;
    let h2_sl = h2(&sl(a, r)?)?;
    let hc = hc_homology(a, 3)?.betti_vec();
    Ok(H2Report {
        algebra: a.name().to_string(),
        r,
        h2_gl,
        h2_sl,
        hc0: hc[0],
        hc1: hc[1],
        gl_equal: h2_gl == hc[1],
        sl_equal: h2_sl == hc[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::Rational;

    #[test]
    fn subset_rank_matches_enumeration() {
        for (n, p) in [(5, 2), (6, 3), (7, 0), (4, 4)] {
            for (k, s) in subsets(n, p).iter().enumerate() {
                assert_eq!(subset_rank(n, s), k);
            }
        }
    }

    #[test]
    fn permutation_parity() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|(_, odd)| *odd).count(), 3);
        assert!(perms.contains(&(vec![1, 0, 2], true)));
        assert!(perms.contains(&(vec![1, 2, 0], false)));
    }

    #[test]
    fn gl2_bracket() {
        let g = gl(&ground::<Rational>(), 2);
        // basis E11, E12, E21, E22
        assert_eq!(g.bracket_basis(1, 2), &vec![(0, Rational::from_int(1)), (3, Rational::from_int(-1))]);
    }

    #[test]
    fn abelian_binomials() {
        let g = lie_from_assoc(&truncated_poly::<Rational>(3));
        assert!(g.is_abelian());
        assert_eq!(ce_homology(&g, 3, DEFAULT_SIZE_LIMIT).unwrap().betti_vec(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn sl2_homology() {
        let g = sl(&ground::<Rational>(), 2).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(ce_homology(&g, 3, DEFAULT_SIZE_LIMIT).unwrap().betti_vec(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn size_limit_is_enforced() {
        let g = gl(&ground::<Rational>(), 3);
        assert!(matches!(ce_complex(&g, 4, 100), Err(LieError::SizeLimit { degree: 4, size: 126, .. })));
    }

    #[test]
    fn triangular_examples() {
        let a = Arc::new(ground::<Rational>());
        let zero = Ideal::new(a.clone(), vec![]).unwrap();
        let t = triangular_lie(&zero, 2, &[(1, 2)]).unwrap();
        assert_eq!(t.dim(), 1);
        let dual = Arc::new(dual_numbers::<Rational>());
        let eps = Ideal::new(dual.clone(), vec![vec![(1, Rational::from_int(1))]]).unwrap();
        let t = triangular_lie(&eps, 1, &[]).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.is_abelian());
        let t = triangular_lie(&eps, 3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(t.dim(), 3 * 2 + 6);
        assert!(t.is_nilpotent());
        let whole = Ideal::generated_by(dual.clone(), vec![vec![(0, Rational::from_int(1))]]);
        assert!(matches!(triangular_lie(&whole, 2, &[(1, 2)]), Err(LieError::NotNilpotent(_))));
        assert!(matches!(triangular_lie(&eps, 2, &[(1, 2), (2, 1)]), Err(LieError::Invalid(_))));
    }

    #[test]
    fn sym_model_for_ground_field() {
        assert_eq!(sym_model_betti(&[1, 0, 1, 0, 1], 4), vec![1, 1, 0, 1, 1]);
        assert_eq!(sym_model_betti(&[0, 2], 4), vec![1, 0, 2, 0, 3]);
    }

    #[test]
    fn trace_in_degree_zero() {
        let a = ground::<Rational>();
        let t = generalized_trace(&a, 2, 0);
        assert_eq!(t.to_dense(), vec![vec![1, 0, 0, 1].into_iter().map(Rational::from_int).collect::<Vec<_>>()]);
    }

    #[test]
    fn trace_is_chain_map_for_dual_numbers() {
        let a = Arc::new(dual_numbers::<Rational>());
        let checks = trace_chain_check(&a, 2, 2, DEFAULT_SIZE_LIMIT).unwrap();
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }
}
