//! H-unitality, the two filtrations relating the bar and Hochschild
//! complexes of an extension `I → A → B`, relative homology, and the
//! excision verifier.
//!
//! An [`Extension`] stores `A` in an adapted basis: the first `dim I` basis
//! vectors span the ideal and the remaining ones are standard vectors
//! spanning a complement mapped isomorphically onto `B`. In this basis every
//! stage of both filtrations is a coordinate subcomplex (or quotient) of the
//! full bar or Hochschild complex, so stages, graded pieces and kernels are
//! plain row/column selections.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::presets::{dual_numbers, ground, matrix, preset, product, square_zero, truncated_poly, upper_triangular};
use crate::algebra::{augmentation_ideal, quotient, Algebra, AlgebraError, AlgebraMorphism, Bimodule, Ideal};
use crate::chain::{homotopy_fiber, induced_rank, is_quasi_iso, ChainComplex, ChainError, ChainMap, DegreeRange, HomologyReport, QuasiIsoVerdict};
use crate::hochschild::{bar_complex, hoch_complex, induced_total_map, tensor_power, CyclicBicomplex, HochError, HH_COLUMNS};
use crate::linalg::{kernel, rank_of_vectors, Echelon};
use crate::scalar::Scalar;
use crate::sparse::{SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExcisionError {
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("unknown extension `{0}`")]
    UnknownExtension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hoch(#[from] HochError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// An extension `I → A → B` with `A` in an adapted basis.
#[derive(Clone, Debug)]
pub struct Extension<T> {
    name: String,
    algebra: Arc<Algebra<T>>,
    ideal: Arc<Algebra<T>>,
    quotient: Arc<Algebra<T>>,
    inclusion: AlgebraMorphism<T>,
    projection: AlgebraMorphism<T>,
}

/// Columns: the ideal basis, then the standard vectors off the ideal's pivots.
fn adapted_basis<T: Scalar>(a: &Algebra<T>, ideal: &Ideal<T>) -> SparseMatrix<T> {
    let mut ech = Echelon::new(a.dim());
    for v in ideal.basis() {
        ech.insert(v.clone());
    }
    let mut cols: Vec<SparseVec<T>> = ideal.basis().to_vec();
    cols.extend((0..a.dim()).filter(|&j| !ech.is_pivot(j)).map(|j| vec![(j, T::one())]));
    SparseMatrix::from_columns(a.dim(), cols)
}

impl<T: Scalar> Extension<T> {
    /// The extension `ker f → A → B` of a surjective morphism. The stored
    /// quotient is checked to be isomorphic to `B` via `f`.
    pub fn from_morphism(name: impl Into<String>, f: &AlgebraMorphism<T>) -> Result<Self, ExcisionError> {
        if !f.is_surjective() {
            return Err(ExcisionError::NotSurjective);
        }
        let ext = Self::from_ideal(name, &f.kernel())?;
        // f restricted to the complement is an isomorphism onto B.
        let a = f.source();
        let k = ext.ideal_dim();
        let basis = adapted_basis(a, &f.kernel());
        let comp = basis.select(&(0..a.dim()).collect::<Vec<_>>(), &(k..a.dim()).collect::<Vec<_>>());
        let iso = f.matrix().mul(&comp);
        AlgebraMorphism::new(ext.quotient.clone(), f.target().clone(), iso, false)?;
        Ok(ext)
    }

    /// The extension `I → A → A/I`.
    pub fn from_ideal(name: impl Into<String>, ideal: &Ideal<T>) -> Result<Self, ExcisionError> {
        let a = ideal.ambient();
        let k = ideal.dim();
        let basis = adapted_basis(a, ideal);
        let mut labels: Vec<String> = (1..=k).map(|i| format!("i{i}")).collect();
        let mut ech = Echelon::new(a.dim());
        for v in ideal.basis() {
            ech.insert(v.clone());
        }
        labels.extend((0..a.dim()).filter(|&j| !ech.is_pivot(j)).map(|j| a.labels()[j].clone()));
        let adapted = Arc::new(a.rebase(&basis, labels)?);
        let coords: Vec<SparseVec<T>> = (0..k).map(|i| vec![(i, T::one())]).collect();
        let adapted_ideal = Ideal::new(adapted.clone(), coords)?;
        let (ideal_alg, inclusion) = adapted_ideal.as_algebra();
        let ideal_alg = Arc::new(ideal_alg);
        let inclusion = AlgebraMorphism::new(ideal_alg.clone(), adapted.clone(), inclusion.matrix().clone(), false)?;
        let (quot, projection) = quotient(&adapted, &adapted_ideal)?;
        let quot = Arc::new(quot);
        let projection = AlgebraMorphism::new(adapted.clone(), quot.clone(), projection.matrix().clone(), projection.is_unital())?;
        Ok(Extension {
            name: name.into(),
            algebra: adapted,
            ideal: ideal_alg,
            quotient: quot,
            inclusion,
            projection,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `A` in the adapted basis.
    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn ideal(&self) -> &Arc<Algebra<T>> {
        &self.ideal
    }

    pub fn quotient(&self) -> &Arc<Algebra<T>> {
        &self.quotient
    }

    pub fn inclusion(&self) -> &AlgebraMorphism<T> {
        &self.inclusion
    }

    pub fn projection(&self) -> &AlgebraMorphism<T> {
        &self.projection
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.dim()
    }

    fn is_ideal_letter(&self, a: usize) -> bool {
        a < self.ideal_dim()
    }
}

/// The named extensions understood by [`named_extension`].
pub const EXTENSIONS: &[&str] = &[
    "dual_to_ground",
    "trunc3_to_ground",
    "upper_triangular_to_diagonal",
    "split_product",
    "square_zero",
    "matrix_dual",
];

/// Builds an extension by name. Besides the fixed names, `aug:<preset>`
/// takes the augmentation ideal, `identity:<preset>` the zero ideal and
/// `total:<preset>` the whole algebra.
pub fn named_extension<T: Scalar>(name: &str) -> Result<Extension<T>, ExcisionError> {
    let aug = |a: Algebra<T>| -> Result<Extension<T>, ExcisionError> {
        let a = Arc::new(a);
        Extension::from_ideal(name, &augmentation_ideal(&a)?)
    };
    match name {
        "dual_to_ground" => aug(dual_numbers()),
        "trunc3_to_ground" => aug(truncated_poly(3)),
        "square_zero" => aug(square_zero(1)),
        "upper_triangular_to_diagonal" => {
            let u = Arc::new(upper_triangular(2, &ground()));
            // Basis E11, E12, E22; the ideal is spanned by E12.
            Ok(Extension::from_ideal(name, &Ideal::new(u, vec![vec![(1, T::one())]])?)?)
        }
        "split_product" => {
            let p = Arc::new(product());
            Ok(Extension::from_ideal(name, &Ideal::new(p, vec![vec![(0, T::one())]])?)?)
        }
        "matrix_dual" => {
            let m = Arc::new(matrix(2, &dual_numbers()));
            let gens = (0..4).map(|e| vec![(e * 2 + 1, T::one())]).collect();
            Ok(Extension::from_ideal(name, &Ideal::new(m, gens)?)?)
        }
        _ => {
            let (kind, expr) = name.split_once(':').ok_or_else(|| ExcisionError::UnknownExtension(name.into()))?;
            let a = Arc::new(preset::<T>(expr)?);
            match kind {
                "aug" => Ok(Extension::from_ideal(name, &augmentation_ideal(&a)?)?),
                "identity" => Ok(Extension::from_ideal(name, &Ideal::new(a, Vec::new())?)?),
                "total" => {
                    let all = (0..a.dim()).map(|i| vec![(i, T::one())]).collect();
                    Ok(Extension::from_ideal(name, &Ideal::new(a, all)?)?)
                }
                _ => Err(ExcisionError::UnknownExtension(name.into())),
            }
        }
    }
}

/// Outcome of a bounded acyclicity test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AcyclicityVerdict {
    pub pass: bool,
    /// The verdict only covers these degrees.
    pub certified_range: DegreeRange,
    pub betti: Vec<usize>,
    pub failing_degree: Option<i64>,
}

fn acyclicity(c: &ChainComplex<impl Scalar>) -> AcyclicityVerdict {
    let rep = c.betti();
    let failing_degree = rep.betti.iter().find(|(_, b)| **b > 0).map(|(n, _)| *n);
    AcyclicityVerdict {
        pass: failing_degree.is_none(),
        certified_range: rep.certified_range,
        betti: rep.betti_vec(),
        failing_degree,
    }
}

/// `𝓑(A)` acyclic on `[0, D−1]`.
pub fn h_unitality_check<T: Scalar>(a: &Arc<Algebra<T>>, d: usize) -> Result<AcyclicityVerdict, HochError> {
    if d < 2 {
        return Err(HochError::DegreeBound { found: d, min: 2 });
    }
    Ok(acyclicity(&bar_complex(&Bimodule::regular(a.clone()), d)?))
}

/// `𝓑(A, M)` acyclic on `[0, D−1]`.
pub fn h_unitary_check<T: Scalar>(m: &Bimodule<T>, d: usize) -> Result<AcyclicityVerdict, HochError> {
    if d < 2 {
        return Err(HochError::DegreeBound { found: d, min: 2 });
    }
    Ok(acyclicity(&bar_complex(m, d)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiltrationKind {
    Bar,
    Hoch,
}

/// One stage of a filtration: a coordinate subcomplex (F) or quotient (Q)
/// of the full complex, on degrees `0..=D`.
#[derive(Clone, Debug)]
pub struct FiltrationStage<T> {
    pub n: usize,
    pub kind: FiltrationKind,
    pub complex: ChainComplex<T>,
    /// Per degree, the retained coordinates of the full complex.
    pub coords: Vec<Vec<usize>>,
}

fn full_complex<T: Scalar>(m: &Bimodule<T>, kind: FiltrationKind, d: usize) -> Result<ChainComplex<T>, HochError> {
    match kind {
        FiltrationKind::Bar => bar_complex(m, d),
        FiltrationKind::Hoch => hoch_complex(m, d),
    }
}

/// Letters of `M ⊗ A^{⊗p}` word `w`: the module index and the algebra letters.
fn letters(w: usize, da: usize, p: usize) -> (usize, Vec<usize>) {
    let tail = da.pow(p as u32);
    let mut rest = w % tail;
    let mut out = vec![0; p];
    for k in (0..p).rev() {
        out[k] = rest % da;
        rest /= da;
    }
    (w / tail, out)
}

/// Restricts `full` to the given coordinates, checking that they span a
/// subcomplex (`sub = true`) or that the complement does (`sub = false`,
/// quotient).
fn restrict<T: Scalar>(full: &ChainComplex<T>, coords: &[Vec<usize>], sub: bool) -> Result<ChainComplex<T>, HochError> {
    let dims: Vec<usize> = coords.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for p in 1..coords.len() {
        let d = full.diff_at(p as i64).expect("materialized");
        let keep: Vec<bool> = {
            let mut k = vec![false; d.rows()];
            for &i in &coords[p - 1] {
                k[i] = true;
            }
            k
        };
        if sub {
            if !d.select(&(0..d.rows()).collect::<Vec<_>>(), &coords[p]).rows_within(&keep) {
                return Err(HochError::Invalid(format!("stage is not closed under d in degree {p}")));
            }
        } else {
            let others: Vec<usize> = (0..d.cols()).filter(|c| coords[p].binary_search(c).is_err()).collect();
            let mut k2 = vec![true; d.rows()];
            for &i in &coords[p - 1] {
                k2[i] = false;
            }
            if !d.select(&(0..d.rows()).collect::<Vec<_>>(), &others).rows_within(&k2) {
                return Err(HochError::Invalid(format!("kernel is not closed under d in degree {p}")));
            }
        }
        diffs.push(d.select(&coords[p - 1], &coords[p]));
    }
    Ok(ChainComplex::new(0, dims, diffs, false)?)
}

fn f_coords<T: Scalar>(ext: &Extension<T>, dm: usize, n: usize, p: usize) -> Vec<usize> {
    let da = ext.algebra.dim();
    let total = dm * da.pow(p as u32);
    if p <= n {
        return (0..total).collect();
    }
    (0..total)
        .filter(|&w| letters(w, da, p).1[..p - n].iter().all(|&a| ext.is_ideal_letter(a)))
        .collect()
}

/// `F^n` of `𝓑(A, M)` or `𝓗(A, M)`: in degree `p > n` the span of
/// `M ⊗ I^{⊗p−n} ⊗ A^{⊗n}`, everything in degrees `p ≤ n`.
pub fn filtration_f<T: Scalar>(
    ext: &Extension<T>,
    m: &Bimodule<T>,
    kind: FiltrationKind,
    n: usize,
    d: usize,
) -> Result<FiltrationStage<T>, HochError> {
    let full = full_complex(m, kind, d)?;
    let coords: Vec<Vec<usize>> = (0..=d).map(|p| f_coords(ext, m.dim(), n, p)).collect();
    let complex = restrict(&full, &coords, true)?;
    Ok(FiltrationStage { n, kind, complex, coords })
}

/// `Q^n` of `𝓑(A, A)` or `𝓗(A, A)`: the quotient by words with an ideal
/// letter among the first `n + 1` tensor factors. In degree `p` it is
/// `B^{⊗p+1}` for `p ≤ n` and `B^{⊗n+1} ⊗ A^{⊗p−n}` otherwise.
pub fn filtration_q<T: Scalar>(ext: &Extension<T>, kind: FiltrationKind, n: usize, d: usize) -> Result<FiltrationStage<T>, HochError> {
    let m = Bimodule::regular(ext.algebra.clone());
    let full = full_complex(&m, kind, d)?;
    let coords: Vec<Vec<usize>> = (0..=d).map(|p| q_coords(ext, n, p)).collect();
    let complex = restrict(&full, &coords, false)?;
    Ok(FiltrationStage { n, kind, complex, coords })
}

fn q_coords<T: Scalar>(ext: &Extension<T>, n: usize, p: usize) -> Vec<usize> {
    let da = ext.algebra.dim();
    (0..da.pow(p as u32 + 1))
        .filter(|&w| {
            let (m, ls) = letters(w, da, p);
            !ext.is_ideal_letter(m) && ls.iter().take(n).all(|&a| !ext.is_ideal_letter(a))
        })
        .collect()
}

/// Dimensions of `ker(Q^n → Q^{n+1})`, degree by degree.
pub fn q_kernel_dims<T: Scalar>(ext: &Extension<T>, n: usize, d: usize) -> Vec<usize> {
    (0..=d).map(|p| q_coords(ext, n, p).len() - q_coords(ext, n + 1, p).len()).collect()
}

/// Result of comparing `F^{n+1}/F^n` with `A^{⊗n} ⊗ B ⊗ 𝓑(I, M)[n+1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedPieceReport {
    pub n: usize,
    pub kind: FiltrationKind,
    pub degrees: DegreeRange,
    pub dims: Vec<usize>,
    pub pass: bool,
    /// First degree where the candidate isomorphism fails.
    pub failing_degree: Option<i64>,
}

/// Builds the quotient `F^{n+1}/F^n`, the model complex and the explicit
/// factor permutation `m ⊗ i ⊗ β ⊗ a ↦ a ⊗ β ⊗ m ⊗ i` (with a sign depending
/// on the degree), and checks that the latter is a chain isomorphism.
pub fn graded_piece_f_check<T: Scalar>(
    ext: &Extension<T>,
    m: &Bimodule<T>,
    kind: FiltrationKind,
    n: usize,
    d: usize,
) -> Result<GradedPieceReport, HochError> {
    let full = full_complex(m, kind, d)?;
    let (da, k, dm) = (ext.algebra.dim(), ext.ideal_dim(), m.dim());
    let db = da - k;
    let lo = n + 1;
    if lo > d {
        return Ok(GradedPieceReport {
            n,
            kind,
            degrees: DegreeRange::empty(),
            dims: Vec::new(),
            pass: true,
            failing_degree: None,
        });
    }
    let quot: Vec<Vec<usize>> = (0..=d)
        .map(|p| {
            let upper = f_coords(ext, dm, n + 1, p);
            let lower = f_coords(ext, dm, n, p);
            upper.into_iter().filter(|c| lower.binary_search(c).is_err()).collect()
        })
        .collect();
    // Bar complex of I with coefficients in M restricted to I.
    let mi = m.pullback(&ext.inclusion).map_err(|e| HochError::Invalid(e.to_string()))?;
    let bar_i = bar_complex(&mi, (d - n - 1).max(1))?;
    let outer = da.pow(n as u32) * db;
    let model_sign: T = if (n + 1) % 2 == 0 { T::one() } else { -T::one() };
    let iso = |p: usize| -> SparseMatrix<T> {
        let q = p - n - 1;
        let inner = dm * k.pow(q as u32);
        let eps = match kind {
            FiltrationKind::Bar => (n + 1) * p,
            FiltrationKind::Hoch => n * p,
        };
        let s: T = if eps % 2 == 0 { T::one() } else { -T::one() };
        let cols = quot[p]
            .iter()
            .map(|&w| {
                let (mm, ls) = letters(w, da, p);
                let ideal_word = ls[..q].iter().fold(0, |acc, &x| acc * k + x);
                let beta = ls[q] - k;
                let a_word = ls[q + 1..].iter().fold(0, |acc, &x| acc * da + x);
                let row = (a_word * db + beta) * inner + mm * k.pow(q as u32) + ideal_word;
                vec![(row, s.clone())]
            })
            .collect();
        SparseMatrix::from_columns(outer * inner, cols)
    };
    let mut failing = None;
    let mut dims = Vec::new();
    for p in lo..=d {
        dims.push(quot[p].len());
        let phi = iso(p);
        // Bijectivity: a signed permutation matrix onto the model space.
        let mut hit = vec![false; phi.rows()];
        let bijective = phi.cols() == phi.rows()
            && phi.columns().iter().all(|c| c.len() == 1 && !std::mem::replace(&mut hit[c[0].0], true));
        let commutes = p == lo || {
            let dq = full.diff_at(p as i64).unwrap().select(&quot[p - 1], &quot[p]);
            let dmod = SparseMatrix::identity(outer)
                .kron(&bar_i.diff_at((p - n - 1) as i64).unwrap())
                .scale(&model_sign);
            iso(p - 1).mul(&dq) == dmod.mul(&phi)
        };
        if (!bijective || !commutes) && failing.is_none() {
            failing = Some(p as i64);
        }
    }
    Ok(GradedPieceReport {
        n,
        kind,
        degrees: DegreeRange::new(lo as i64, d as i64),
        dims,
        pass: failing.is_none(),
        failing_degree: failing,
    })
}

/// The relative complex `hofib(C(A) → C(B))` with the induced map, built from
/// bicomplexes materialized to row `top`.
struct Relative<T> {
    hofib: Arc<ChainComplex<T>>,
    source: CyclicBicomplex<T>,
}

fn relative<T: Scalar>(ext: &Extension<T>, columns: usize, top: usize) -> Result<Relative<T>, HochError> {
    let sa = CyclicBicomplex::new(ext.algebra.clone(), top);
    let sb = CyclicBicomplex::new(ext.quotient.clone(), top);
    let map = induced_total_map(&ext.projection, &sa, &sb, columns)?;
    let hofib = Arc::new(homotopy_fiber(&map)?);
    Ok(Relative { hofib, source: sa })
}

fn relative_report<T: Scalar>(ext: &Extension<T>, columns: usize, d: usize) -> Result<HomologyReport<T>, HochError> {
    if d < 2 {
        return Err(HochError::DegreeBound { found: d, min: 2 });
    }
    let rel = relative(ext, columns, d)?;
    Ok(rel.hofib.homology(DegreeRange::new(0, d as i64 - 2), false)?)
}

/// Relative Hochschild homology on `[0, D−2]`.
pub fn relative_hh<T: Scalar>(ext: &Extension<T>, d: usize) -> Result<HomologyReport<T>, HochError> {
    relative_report(ext, HH_COLUMNS, d)
}

/// Relative cyclic homology on `[0, D−2]`.
pub fn relative_hc<T: Scalar>(ext: &Extension<T>, d: usize) -> Result<HomologyReport<T>, HochError> {
    relative_report(ext, usize::MAX, d)
}

/// Relative `HC_0` and the span of chosen ideal elements in it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelativeZeroSpan {
    pub relative_dim: usize,
    /// Rank of the classes `[(0, x)]` in `H_0(hofib)`.
    pub span_dim: usize,
}

/// Each `x` (adapted coordinates of `A`, inside `I`) is a degree-0 cycle
/// `(0, x)` of `hofib(CC(A) → CC(B))`; returns the dimension of the span of
/// their classes next to `dim rel HC_0`.
pub fn relative_hc0_span<T: Scalar>(ext: &Extension<T>, xs: &[SparseVec<T>]) -> Result<RelativeZeroSpan, HochError> {
    if let Some(x) = xs.iter().find(|x| x.iter().any(|(i, _)| !ext.is_ideal_letter(*i))) {
        return Err(HochError::Invalid(format!("element {x:?} is not in the ideal")));
    }
    let rel = relative(ext, usize::MAX, 3)?;
    let h = &rel.hofib;
    let dim0 = h.dim_at(0).expect("degree 0 is materialized");
    let offset = dim0 - ext.algebra.dim();
    let lifted: Vec<SparseVec<T>> = xs.iter().map(|x| x.iter().map(|(i, c)| (i + offset, c.clone())).collect()).collect();
    let d0 = h.diff_at(0).expect("degree 0 is materialized");
    if lifted.iter().any(|v| !d0.mul_vec(v).is_empty()) {
        return Err(HochError::Invalid("ideal element is not a relative cycle".into()));
    }
    let boundaries = h.diff_at(1).expect("degree 1 is materialized").into_owned().into_columns();
    let base = rank_of_vectors(dim0, &boundaries);
    let mut all = boundaries;
    all.extend(lifted);
    Ok(RelativeZeroSpan {
        relative_dim: h.homology(DegreeRange::new(0, 0), false)?.get(0).unwrap_or(0),
        span_dim: rank_of_vectors(dim0, &all) - base,
    })
}

/// Excision verdict for one theory.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcisionTheory {
    pub theory: &'static str,
    /// `η` is an isomorphism on homology in these degrees.
    pub range: DegreeRange,
    pub ideal_betti: Vec<usize>,
    pub relative_betti: Vec<usize>,
    pub eta_rank: Vec<usize>,
    pub pass: bool,
    /// Least degree where `η` is not an isomorphism.
    pub failing_degree: Option<i64>,
    pub cone: QuasiIsoVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WodzickiReport {
    pub extension: String,
    pub ideal_h_unital: AcyclicityVerdict,
    pub hh: ExcisionTheory,
    pub hc: ExcisionTheory,
    pub pass: bool,
}

fn excision_theory<T: Scalar>(ext: &Extension<T>, columns: usize, d: usize, theory: &'static str) -> Result<ExcisionTheory, HochError> {
    // One row beyond the report so that the cone of η is certified one degree higher.
    let top = d + 1;
    let rel = relative(ext, columns, top)?;
    let si = CyclicBicomplex::new(ext.ideal.clone(), top);
    let ci = Arc::new(si.total(columns)?);
    let hofib = rel.hofib.clone();
    let incl = ext.inclusion.matrix();
    let powers: Vec<SparseMatrix<T>> = (0..=top).map(|p| tensor_power(incl, p + 1)).collect();
    let eta_component = |n: i64| -> SparseMatrix<T> {
        let n = n as usize;
        let src = si.layout(n, columns);
        let tgt_a = rel.source.layout(n, columns);
        let b_part = hofib.dim_at(n as i64).unwrap() - tgt_a.iter().map(|b| b.size).sum::<usize>();
        let mut row_sizes = vec![b_part];
        row_sizes.extend(tgt_a.iter().map(|b| b.size));
        let blocks: Vec<Vec<Option<&SparseMatrix<T>>>> = std::iter::once(vec![None; src.len()])
            .chain(tgt_a.iter().map(|tb| src.iter().map(|sb| (sb.column == tb.column).then(|| &powers[sb.row])).collect()))
            .collect();
        let cols: Vec<usize> = src.iter().map(|b| b.size).collect();
        SparseMatrix::block(&row_sizes, &cols, &blocks)
    };
    let eta = ChainMap::from_fn(ci.clone(), hofib.clone(), eta_component)?;
    let range = DegreeRange::new(0, d as i64 - 2);
    let cone = is_quasi_iso(&eta, DegreeRange::new(0, d as i64 - 1))?;
    let (mut ib, mut rb, mut ranks) = (Vec::new(), Vec::new(), Vec::new());
    let mut failing = None;
    for n in range.iter() {
        let b_i = ci.homology(DegreeRange::new(n, n), false)?.get(n).unwrap();
        let b_r = hofib.homology(DegreeRange::new(n, n), false)?.get(n).unwrap();
        let cycles = kernel(&ci.diff_at(n).unwrap());
        let r = induced_rank(&eta.component(n).unwrap(), &cycles, &hofib.diff_at(n + 1).unwrap());
        if (r != b_i || r != b_r) && failing.is_none() {
            failing = Some(n);
        }
        ib.push(b_i);
        rb.push(b_r);
        ranks.push(r);
    }
    Ok(ExcisionTheory {
        theory,
        range,
        ideal_betti: ib,
        relative_betti: rb,
        eta_rank: ranks,
        pass: failing.is_none(),
        failing_degree: failing,
        cone,
    })
}

/// Checks whether `η_HH` and `η_HC` are isomorphisms on `[0, D−2]`.
pub fn wodzicki_verify<T: Scalar>(ext: &Extension<T>, d: usize) -> Result<WodzickiReport, HochError> {
    if d < 2 {
        return Err(HochError::DegreeBound { found: d, min: 2 });
    }
    let ideal_h_unital = h_unitality_check(&ext.ideal, d)?;
    let hh = excision_theory(ext, HH_COLUMNS, d, "HH")?;
    let hc = excision_theory(ext, usize::MAX, d, "HC")?;
    Ok(WodzickiReport {
        extension: ext.name.clone(),
        ideal_h_unital,
        pass: hh.pass && hc.pass,
        hh,
        hc,
    })
}

/// An implication checked on one instance: whenever the hypothesis holds, so
/// must the conclusion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub holds: bool,
}

impl CorollaryReport {
    fn new(hypothesis: bool, conclusion: bool) -> Self {
        CorollaryReport {
            hypothesis,
            conclusion,
            holds: !hypothesis || conclusion,
        }
    }
}

fn coordinate_inclusion<T: Scalar>(
    small: Arc<ChainComplex<T>>,
    big: Arc<ChainComplex<T>>,
    coords: &[Vec<usize>],
) -> Result<ChainMap<T>, ChainError> {
    ChainMap::from_fn(small, big.clone(), |n| {
        let rows = big.dim_at(n).unwrap();
        SparseMatrix::from_columns(rows, coords[n as usize].iter().map(|&c| vec![(c, T::one())]).collect())
    })
}

/// If `M` is H-unitary over `I`, then `𝓑(A, M)` is acyclic and
/// `𝓗(I, M) → 𝓗(A, M)` is a quasi-isomorphism (checked on `[0, D−2]`).
pub fn corollary_h_unitary<T: Scalar>(ext: &Extension<T>, m: &Bimodule<T>, d: usize) -> Result<CorollaryReport, HochError> {
    let mi = m.pullback(&ext.inclusion).map_err(|e| HochError::Invalid(e.to_string()))?;
    let hypothesis = h_unitary_check(&mi, d)?.pass;
    let bar_a = acyclicity(&bar_complex(m, d)?).pass;
    let f0 = filtration_f(ext, m, FiltrationKind::Hoch, 0, d)?;
    let big = Arc::new(hoch_complex(m, d)?);
    let map = coordinate_inclusion(Arc::new(f0.complex), big, &f0.coords)?;
    let qi = is_quasi_iso(&map, DegreeRange::new(0, d as i64 - 2))?.quasi_iso;
    Ok(CorollaryReport::new(hypothesis, bar_a && qi))
}

/// `N ⊗ I` for the left `B`-module `N = B`: `a · (x ⊗ i) = f(a)x ⊗ i`,
/// `(x ⊗ i) · a = x ⊗ ia`.
pub fn module_tensor_ideal<T: Scalar>(ext: &Extension<T>) -> Result<Bimodule<T>, AlgebraError> {
    let (a, b) = (&ext.algebra, &ext.quotient);
    let (da, db, k) = (a.dim(), b.dim(), ext.ideal_dim());
    let dim = db * k;
    let f = ext.projection.matrix();
    let mut left = Vec::with_capacity(da * dim);
    for x in 0..da {
        for w in 0..dim {
            let (y, i) = (w / k, w % k);
            let fy = b.mul_vec(f.col(x), &[(y, T::one())]);
            left.push(fy.into_iter().map(|(z, c)| (z * k + i, c)).collect());
        }
    }
    let mut right = Vec::with_capacity(da * dim);
    for w in 0..dim {
        let (y, i) = (w / k, w % k);
        for x in 0..da {
            // i · x lies in the ideal coordinates 0..k.
            let ix = a.basis_product(i, x);
            right.push(ix.iter().map(|(z, c)| (y * k + z, c.clone())).collect());
        }
    }
    Bimodule::new(a.clone(), dim, left, right)
}

/// If `I` is H-unital then `𝓗(A, N ⊗ I)` is acyclic (checked on `[0, D−1]`).
pub fn corollary_module_tensor_ideal<T: Scalar>(ext: &Extension<T>, d: usize) -> Result<CorollaryReport, HochError> {
    let hypothesis = h_unitality_check(&ext.ideal, d)?.pass;
    let m = module_tensor_ideal(ext).map_err(|e| HochError::Invalid(e.to_string()))?;
    let conclusion = acyclicity(&hoch_complex(&m, d)?).pass;
    Ok(CorollaryReport::new(hypothesis, conclusion))
}

/// If `I` is H-unital then `𝓑(A, B) → 𝓑(B)` and `𝓗(A, B) → 𝓗(B)` are
/// quasi-isomorphisms (checked on `[0, D−2]`).
pub fn corollary_quotient<T: Scalar>(ext: &Extension<T>, d: usize) -> Result<CorollaryReport, HochError> {
    let hypothesis = h_unitality_check(&ext.ideal, d)?.pass;
    let bb = Bimodule::regular(ext.quotient.clone());
    let ab = bb.pullback(&ext.projection).map_err(|e| HochError::Invalid(e.to_string()))?;
    let f = ext.projection.matrix();
    let db = ext.quotient.dim();
    let range = DegreeRange::new(0, d as i64 - 2);
    let mut conclusion = true;
    for kind in [FiltrationKind::Bar, FiltrationKind::Hoch] {
        let src = Arc::new(full_complex(&ab, kind, d)?);
        let tgt = Arc::new(full_complex(&bb, kind, d)?);
        let map = ChainMap::from_fn(src, tgt, |p| {
            let tail = if p == 0 { SparseMatrix::identity(1) } else { tensor_power(f, p as usize) };
            SparseMatrix::identity(db).kron(&tail)
        })?;
        conclusion &= is_quasi_iso(&map, range)?.quasi_iso;
    }
    Ok(CorollaryReport::new(hypothesis, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::null_algebra;
    use crate::Rational;

    fn ext(name: &str) -> Extension<Rational> {
        named_extension(name).unwrap()
    }

    #[test]
    fn named_extensions_have_consistent_dims() {
        for name in EXTENSIONS {
            let e = ext(name);
            assert_eq!(e.algebra().dim(), e.ideal_dim() + e.quotient().dim(), "{name}");
        }
        let ut = ext("upper_triangular_to_diagonal");
        assert!(ut.quotient().is_commutative());
        assert_eq!(ut.quotient().dim(), 2);
    }

    #[test]
    fn h_unitality() {
        let q = Arc::new(crate::algebra::presets::ground::<Rational>());
        assert!(h_unitality_check(&q, 6).unwrap().pass);
        let v = Arc::new(null_algebra::<Rational>(1));
        assert_eq!(h_unitality_check(&v, 4).unwrap().failing_degree, Some(0));
        let t3 = ext("trunc3_to_ground");
        assert!(!h_unitality_check(t3.ideal(), 4).unwrap().pass);
    }

    #[test]
    fn filtration_endpoints() {
        let e = ext("dual_to_ground");
        let m = Bimodule::regular(e.algebra().clone());
        let f0 = filtration_f(&e, &m, FiltrationKind::Bar, 0, 4).unwrap();
        let mi = m.pullback(e.inclusion()).unwrap();
        assert_eq!(f0.complex, bar_complex(&mi, 4).unwrap());
        let top = filtration_f(&e, &m, FiltrationKind::Hoch, 4, 4).unwrap();
        assert_eq!(top.complex, hoch_complex(&m, 4).unwrap());
        let f1 = filtration_f(&e, &m, FiltrationKind::Bar, 1, 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|p| if p <= 1 { 2usize.pow(p + 1) } else { 2 * 2 }).collect();
        assert_eq!(f1.complex.dims(), dims.as_slice());
    }

    #[test]
    fn graded_pieces() {
        for name in ["dual_to_ground", "trunc3_to_ground", "upper_triangular_to_diagonal", "identity:dual_numbers"] {
            let e = ext(name);
            let m = Bimodule::regular(e.algebra().clone());
            for kind in [FiltrationKind::Bar, FiltrationKind::Hoch] {
                for n in 0..=2 {
                    let r = graded_piece_f_check(&e, &m, kind, n, 4).unwrap();
                    assert!(r.pass, "{name} {kind:?} n={n}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn quotient_filtration_endpoints() {
        let e = ext("dual_to_ground");
        let q0 = filtration_q(&e, FiltrationKind::Bar, 0, 4).unwrap();
        let ab = Bimodule::regular(e.quotient().clone()).pullback(e.projection()).unwrap();
        assert_eq!(q0.complex, bar_complex(&ab, 4).unwrap());
        let qn = filtration_q(&e, FiltrationKind::Hoch, 5, 4).unwrap();
        assert_eq!(qn.complex, hoch_complex(&Bimodule::regular(e.quotient().clone()), 4).unwrap());
        let t3 = ext("trunc3_to_ground");
        // B^{⊗2} ⊗ I ⊗ A^{⊗p−2} with dim B = 1, dim I = 2, dim A = 3.
        assert_eq!(q_kernel_dims(&t3, 1, 4), vec![0, 0, 2, 6, 18]);
    }

    #[test]
    fn relative_homology() {
        let e = ext("dual_to_ground");
        assert_eq!(relative_hc(&e, 3).unwrap().get(0), Some(1));
        let id = ext("identity:truncated_poly(3)");
        assert!(relative_hc(&id, 4).unwrap().betti_vec().iter().all(|&b| b == 0));
        let md = ext("matrix_dual");
        assert_eq!(relative_hc(&md, 2).unwrap().get(0), Some(1));
    }

    #[test]
    fn excision_on_split_and_square_zero() {
        let split = wodzicki_verify(&ext("split_product"), 5).unwrap();
        assert!(split.pass, "{split:?}");
        assert!(split.ideal_h_unital.pass);
        // k ⋉ V is the unitalization of V, for which excision always holds.
        let sq = wodzicki_verify(&ext("square_zero"), 5).unwrap();
        assert!(sq.pass && !sq.ideal_h_unital.pass);
        let ut = wodzicki_verify(&ext("upper_triangular_to_diagonal"), 5).unwrap();
        assert_eq!((ut.hh.failing_degree, ut.hc.failing_degree), (Some(0), Some(0)));
        let total = wodzicki_verify(&ext("total:dual_numbers"), 4).unwrap();
        assert!(total.pass);
    }

    #[test]
    fn corollaries() {
        for name in ["split_product", "dual_to_ground", "upper_triangular_to_diagonal"] {
            let e = ext(name);
            let m = Bimodule::regular(e.algebra().clone());
            assert!(corollary_h_unitary(&e, &m, 4).unwrap().holds, "{name}");
            assert!(corollary_module_tensor_ideal(&e, 4).unwrap().holds, "{name}");
            assert!(corollary_quotient(&e, 4).unwrap().holds, "{name}");
        }
        let split = ext("split_product");
        assert!(corollary_quotient(&split, 4).unwrap().hypothesis);
    }
}
