//! Degree-one tangent computations over Artinian bases: logarithms of
//! unipotent matrices, the log-trace map `(1 + M_r(I))^× → rel HC_0`, and
//! tables of relative cyclic homology over a catalog of bases.
//!
//! Randomized checks draw from a ChaCha stream per sample, so results do not
//! depend on the number of worker threads.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::presets::preset;
use crate::algebra::{augmentation_ideal, commutator_subspace, span_basis, matrix_algebra, tensor, Algebra, AlgebraError, Ideal};
use crate::chain::DegreeRange;
use crate::excision::{relative_hc, relative_hc0_span, wodzicki_verify, ExcisionError, Extension};
use crate::hochschild::{hc_homology, HochError};
use crate::linalg::{inverse, Echelon};
use crate::scalar::Scalar;
use crate::sparse::{axpy, SparseVec};

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Samples per extension in [`chern1`].
pub const DEFAULT_SAMPLES: usize = 100;

/// Bases used by [`tangent_table`] when none are given.
pub const ARTINIAN_CATALOG: &[&str] = &["ground", "dual_numbers", "truncated_poly(3)", "fat_point", "square_zero(2)"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TangentError {
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hoch(#[from] HochError),
    #[error(transparent)]
    Excision(#[from] ExcisionError),
}

/// A finite-dimensional local algebra with residue field `ℚ`.
#[derive(Clone, Debug)]
pub struct ArtinianBase<T> {
    name: String,
    algebra: Arc<Algebra<T>>,
    aug_ideal: Ideal<T>,
    order: usize,
}

impl<T: Scalar> ArtinianBase<T> {
    pub fn new(name: impl Into<String>, algebra: Arc<Algebra<T>>) -> Result<Self, TangentError> {
        if !algebra.is_unital() {
            return Err(TangentError::Invalid(format!("{} is not unital", algebra.name())));
        }
        let aug_ideal = augmentation_ideal(&algebra)?;
        let order = aug_ideal.nilpotency_order().ok_or(TangentError::NotNilpotent)?;
        Ok(ArtinianBase {
            name: name.into(),
            algebra,
            aug_ideal,
            order,
        })
    }

    pub fn from_preset(expr: &str) -> Result<Self, TangentError> {
        Self::new(expr, Arc::new(preset(expr)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn aug_ideal(&self) -> &Ideal<T> {
        &self.aug_ideal
    }

    /// Least `N` with `m^N = 0`.
    pub fn nilpotency_order(&self) -> usize {
        self.order
    }
}

/// Powers `x, x², …` up to the last nonzero one.
fn powers<T: Scalar>(a: &Algebra<T>, x: &[(usize, T)]) -> Result<Vec<SparseVec<T>>, TangentError> {
    let mut out = Vec::new();
    let mut p = x.to_vec();
    while !p.is_empty() {
        if out.len() > a.dim() {
            return Err(TangentError::NotNilpotent);
        }
        let next = a.mul_vec(&p, x);
        out.push(p);
        p = next;
    }
    Ok(out)
}

/// `log(1 + x) = Σ_{m≥1} (−1)^{m+1} x^m / m` for nilpotent `x`.
pub fn log_nilpotent<T: Scalar>(a: &Algebra<T>, x: &[(usize, T)]) -> Result<SparseVec<T>, TangentError> {
    let mut acc = Vec::new();
    for (k, p) in powers(a, x)?.iter().enumerate() {
        let m = k as i64 + 1;
        acc = axpy(&acc, &T::ratio(if m % 2 == 1 { 1 } else { -1 }, m), p);
    }
    Ok(acc)
}

/// The nilpotent part of `exp(y)`: `Σ_{m≥1} y^m / m!`.
pub fn exp_nilpotent<T: Scalar>(a: &Algebra<T>, y: &[(usize, T)]) -> Result<SparseVec<T>, TangentError> {
    let mut acc = Vec::new();
    let mut fact = T::one();
    for (k, p) in powers(a, y)?.iter().enumerate() {
        fact = fact * T::from_int(k as i64 + 1);
        acc = axpy(&acc, &(T::one() / fact.clone()), p);
    }
    Ok(acc)
}

/// `1 + x` with `x` nilpotent. The unit is formal, so `ambient` need not be
/// unital.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentElement<T> {
    ambient: Arc<Algebra<T>>,
    nil: SparseVec<T>,
}

impl<T: Scalar> UnipotentElement<T> {
    /// Checks that `nil` lies in `ideal` and is nilpotent.
    pub fn new(ideal: &Ideal<T>, nil: SparseVec<T>) -> Result<Self, TangentError> {
        if !ideal.contains(&nil) {
            return Err(TangentError::Invalid("nilpotent part is not in the ideal".into()));
        }
        powers(ideal.ambient(), &nil)?;
        Ok(UnipotentElement {
            ambient: ideal.ambient().clone(),
            nil,
        })
    }

    fn raw(ambient: &Arc<Algebra<T>>, nil: SparseVec<T>) -> Self {
        UnipotentElement {
            ambient: ambient.clone(),
            nil,
        }
    }

    pub fn nilpart(&self) -> &SparseVec<T> {
        &self.nil
    }

    /// `(1 + x)(1 + y) = 1 + x + y + xy`.
    pub fn mul(&self, other: &Self) -> Self {
        let xy = self.ambient.mul_vec(&self.nil, &other.nil);
        Self::raw(&self.ambient, axpy(&axpy(&self.nil, &T::one(), &other.nil), &T::one(), &xy))
    }

    /// `(1 + x)^{−1} = 1 − x + x² − ⋯`.
    pub fn inverse(&self) -> Self {
        let mut acc = Vec::new();
        let pw = powers(&self.ambient, &self.nil).expect("nilpotent by construction");
        for (k, p) in pw.iter().enumerate() {
            acc = axpy(&acc, &if k % 2 == 0 { -T::one() } else { T::one() }, p);
        }
        Self::raw(&self.ambient, acc)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn log(&self) -> SparseVec<T> {
        log_nilpotent(&self.ambient, &self.nil).expect("nilpotent by construction")
    }

    /// `exp(y)` for `y` in a nilpotent ideal.
    pub fn exp(ambient: &Arc<Algebra<T>>, y: &[(usize, T)]) -> Result<Self, TangentError> {
        Ok(Self::raw(ambient, exp_nilpotent(ambient, y)?))
    }

    /// `g(1 + x)g^{−1} = 1 + g x g^{−1}`.
    pub fn conjugate(&self, g: &[(usize, T)], g_inv: &[(usize, T)]) -> Self {
        let a = &self.ambient;
        Self::raw(a, a.mul_vec(&a.mul_vec(g, &self.nil), g_inv))
    }
}

/// `M_r(A)` over an extension, with the trace back to `A` and the ideal `M_r(I)`.
struct MatrixContext<T> {
    r: usize,
    d: usize,
    k: usize,
    mr: Arc<Algebra<T>>,
    /// `[A, A]` in adapted coordinates.
    commutators: Echelon<T>,
}

impl<T: Scalar> MatrixContext<T> {
    fn new(ext: &Extension<T>, r: usize) -> Result<Self, TangentError> {
        let a = ext.algebra();
        if ext.ideal().nilpotency_order().is_none() {
            return Err(TangentError::NotNilpotent);
        }
        if r == 0 {
            return Err(TangentError::Invalid("matrix size must be positive".into()));
        }
        let mut commutators = Echelon::new(a.dim());
        for v in commutator_subspace(a) {
            commutators.insert(v);
        }
        Ok(MatrixContext {
            r,
            d: a.dim(),
            k: ext.ideal_dim(),
            mr: Arc::new(matrix_algebra(a, r)),
            commutators,
        })
    }

    fn at(&self, i: usize, j: usize, x: usize) -> usize {
        (i * self.r + j) * self.d + x
    }

    fn trace(&self, m: &[(usize, T)]) -> SparseVec<T> {
        let mut acc: SparseVec<T> = Vec::new();
        for (idx, c) in m {
            let (ij, x) = (idx / self.d, idx % self.d);
            if ij / self.r == ij % self.r {
                acc = axpy(&acc, c, &[(x, T::one())]);
            }
        }
        acc
    }

    /// `c(u) = tr log u`, a vector of `I` in adapted coordinates of `A`.
    fn chern(&self, u: &UnipotentElement<T>) -> SparseVec<T> {
        self.trace(&u.log())
    }

    fn in_commutators(&self, v: &[(usize, T)]) -> bool {
        self.commutators.contains(v)
    }

    fn random_nil(&self, rng: &mut ChaCha8Rng) -> UnipotentElement<T> {
        let mut v = Vec::new();
        for i in 0..self.r {
            for j in 0..self.r {
                for x in 0..self.k {
                    if rng.gen_bool(0.5) {
                        let c: i64 = rng.gen_range(-3..=3);
                        if c != 0 {
                            v.push((self.at(i, j, x), T::from_int(c)));
                        }
                    }
                }
            }
        }
        UnipotentElement::raw(&self.mr, v)
    }

    /// A random invertible matrix and its inverse.
    fn random_invertible(&self, rng: &mut ChaCha8Rng) -> (SparseVec<T>, SparseVec<T>) {
        let unit = self.mr.unit().expect("checked unital").clone();
        loop {
            let g: SparseVec<T> = (0..self.mr.dim())
                .filter_map(|i| {
                    let c: i64 = rng.gen_range(-2..=2);
                    (c != 0).then(|| (i, T::from_int(c)))
                })
                .collect();
            if let Some(inv) = inverse(&self.mr.left_matrix(&g)) {
                return (g.clone(), inv.mul_vec(&unit));
            }
        }
    }

    /// `1 + i E_{jk}` for every ideal basis vector and matrix position.
    fn generators(&self) -> Vec<UnipotentElement<T>> {
        let mut out = Vec::new();
        for j in 0..self.r {
            for l in 0..self.r {
                for x in 0..self.k {
                    out.push(UnipotentElement::raw(&self.mr, vec![(self.at(j, l, x), T::one())]));
                }
            }
        }
        out
    }
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Properties of `c(u) = [tr log u]` on one extension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chern1Report {
    pub extension: String,
    pub r: usize,
    pub samples: usize,
    pub seed: u64,
    /// `exp(log u) = u` on every sample.
    pub roundtrip: bool,
    /// `c(uv) − c(u) − c(v) ∈ [A, A]` on every sampled pair.
    pub homomorphism: bool,
    /// `c(uvu^{−1}v^{−1}) ∈ [A, A]` on every sampled pair.
    pub commutators: bool,
    /// `c(gug^{−1}) − c(u) ∈ [A, A]` for sampled invertible `g`.
    pub conjugation: bool,
    /// Rank of the classes of `c` over generators and samples in rel `HC_0`.
    pub image_dim: usize,
    pub relative_hc0: usize,
    pub surjective: bool,
    pub pass: bool,
}

struct SampleOutcome<T> {
    roundtrip: bool,
    homomorphism: bool,
    commutator: bool,
    conjugation: bool,
    image: Vec<SparseVec<T>>,
}

pub fn chern1<T: Scalar>(ext: &Extension<T>, r: usize, samples: usize, seed: u64) -> Result<Chern1Report, TangentError> {
    if !ext.algebra().is_unital() {
        return Err(TangentError::Invalid(format!("{} is not unital", ext.algebra().name())));
    }
    let ctx = MatrixContext::new(ext, r)?;
    let outcomes: Vec<SampleOutcome<T>> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = sample_rng(seed, s as u64);
            let u = ctx.random_nil(&mut rng);
            let v = ctx.random_nil(&mut rng);
            let (g, g_inv) = ctx.random_invertible(&mut rng);
            let (cu, cv) = (ctx.chern(&u), ctx.chern(&v));
            let roundtrip = UnipotentElement::exp(&ctx.mr, &u.log()).map(|w| w == u).unwrap_or(false);
            let defect = axpy(&axpy(&ctx.chern(&u.mul(&v)), &-T::one(), &cu), &-T::one(), &cv);
            let conj = axpy(&ctx.chern(&u.conjugate(&g, &g_inv)), &-T::one(), &cu);
            SampleOutcome {
                roundtrip,
                homomorphism: ctx.in_commutators(&defect),
                commutator: ctx.in_commutators(&ctx.chern(&u.commutator(&v))),
                conjugation: ctx.in_commutators(&conj),
                image: vec![cu, cv],
            }
        })
        .collect();
    let mut image: Vec<SparseVec<T>> = ctx.generators().iter().map(|u| ctx.chern(u)).collect();
    image.extend(outcomes.iter().flat_map(|o| o.image.iter().cloned()));
    let span = relative_hc0_span(ext, &image)?;
    let all = |f: fn(&SampleOutcome<T>) -> bool| outcomes.iter().all(f);
    let (roundtrip, homomorphism, commutators, conjugation) =
        (all(|o| o.roundtrip), all(|o| o.homomorphism), all(|o| o.commutator), all(|o| o.conjugation));
    let surjective = span.span_dim == span.relative_dim;
    Ok(Chern1Report {
        extension: ext.name().to_string(),
        r,
        samples,
        seed,
        roundtrip,
        homomorphism,
        commutators,
        conjugation,
        image_dim: span.span_dim,
        relative_hc0: span.relative_dim,
        surjective,
        pass: roundtrip && homomorphism && commutators && conjugation && surjective,
    })
}

/// The log-trace span in `I/(I ∩ [A, A])` against `dim rel HC_0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct K1Probe {
    pub extension: String,
    pub r: usize,
    pub generators: usize,
    /// Dimension of the span of `tr log u` modulo `[A, A]`.
    pub span_dim: usize,
    /// Rank of the same elements as classes in rel `HC_0`; equal to
    /// `span_dim` exactly when the span embeds.
    pub relative_rank: usize,
    pub relative_hc0: usize,
    pub embeds: bool,
    pub equal: bool,
}

pub fn k1_rel_probe<T: Scalar>(ext: &Extension<T>, r: usize, samples: usize, seed: u64) -> Result<K1Probe, TangentError> {
    let ctx = MatrixContext::new(ext, r)?;
    let mut units = ctx.generators();
    units.extend((0..samples).map(|s| ctx.random_nil(&mut sample_rng(seed, s as u64))));
    let traces: Vec<SparseVec<T>> = units.par_iter().map(|u| ctx.chern(u)).collect();
    let mut ech = ctx.commutators.clone();
    let base = ech.rank();
    for t in &traces {
        ech.insert(t.clone());
    }
    let span_dim = ech.rank() - base;
    let rel = relative_hc0_span(ext, &traces)?;
    Ok(K1Probe {
        extension: ext.name().to_string(),
        r,
        generators: units.len(),
        span_dim,
        relative_rank: rel.span_dim,
        relative_hc0: rel.relative_dim,
        embeds: rel.span_dim == span_dim,
        equal: span_dim == rel.relative_dim,
    })
}

/// One row of [`tangent_table`]: the extension `C ⊗ B → C`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentRow {
    pub base: String,
    pub range: DegreeRange,
    pub relative_hc: Vec<usize>,
    /// `HC` of the non-unital ideal `C ⊗ m_B`.
    pub ideal_hc: Vec<usize>,
    /// `dim I/[A, I]`, the relative `HC_0` predicted for a nilpotent ideal.
    pub ideal_coinvariants: usize,
    /// Degrees in which the inclusion-induced comparison is an isomorphism.
    pub comparison_iso: bool,
    pub comparison_failing_degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentTable {
    pub algebra: String,
    pub rows: Vec<TangentRow>,
}

/// The extension `C ⊗ m_B → C ⊗ B → C`.
pub fn base_change_extension<T: Scalar>(c: &Algebra<T>, base: &ArtinianBase<T>) -> Result<Extension<T>, TangentError> {
    let cb = Arc::new(tensor(c, base.algebra()));
    let db = base.algebra().dim();
    let gens = (0..c.dim())
        .flat_map(|x| base.aug_ideal().basis().iter().map(move |m| m.iter().map(|(b, v)| (x * db + b, v.clone())).collect()))
        .collect();
    let ideal = Ideal::new(cb, gens)?;
    Ok(Extension::from_ideal(format!("{}⊗{}", c.name(), base.name()), &ideal)?)
}

/// `dim I/[A, I]` in the adapted basis, where `I` is spanned by the first coordinates.
pub fn coinvariants_dim<T: Scalar>(ext: &Extension<T>) -> usize {
    let a = ext.algebra();
    let k = ext.ideal_dim();
    let comms = (0..a.dim()).flat_map(|x| (0..k).map(move |i| axpy(a.basis_product(x, i), &-T::one(), a.basis_product(i, x))));
    k - span_basis(a.dim(), comms).len()
}

pub fn tangent_table<T: Scalar>(c: &Arc<Algebra<T>>, bases: &[ArtinianBase<T>], d: usize) -> Result<TangentTable, TangentError> {
    if !c.is_unital() {
        return Err(TangentError::Invalid(format!("{} is not unital", c.name())));
    }
    let rows = bases
        .iter()
        .map(|b| {
            let ext = base_change_extension(c, b)?;
            let rel = relative_hc(&ext, d)?;
            let ideal = hc_homology(ext.ideal(), d)?;
            let w = wodzicki_verify(&ext, d)?;
            Ok(TangentRow {
                base: b.name().to_string(),
                range: rel.certified_range,
                relative_hc: rel.betti_vec(),
                ideal_hc: ideal.betti_vec(),
                ideal_coinvariants: coinvariants_dim(&ext),
                comparison_iso: w.hc.pass,
                comparison_failing_degree: w.hc.failing_degree,
            })
        })
        .collect::<Result<Vec<_>, TangentError>>()?;
    Ok(TangentTable {
        algebra: c.name().to_string(),
        rows,
    })
}
