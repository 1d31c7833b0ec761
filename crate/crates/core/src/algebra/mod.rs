//! Finite-dimensional associative algebras given by structure constants,
//! together with bimodules, morphisms, ideals and the standard constructions
//! on them. Every constructor validates its axioms exhaustively, so a value
//! of any of these types is always well formed.

pub mod dsl;
pub mod presets;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{Echelon, Insert};
use crate::scalar::Scalar;
use crate::sparse::{axpy, normalize, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Indices are 1-based, as in the file format.
    #[error("associativity fails for basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("unit axiom fails: {0}")]
    Unit(String),
    #[error("algebra has no augmentation")]
    NotAugmented,
    #[error("augmentation ideal is not nilpotent")]
    IdealNotNilpotent,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("map is not multiplicative on basis pair ({0}, {1})")]
    NotAMorphism(usize, usize),
    #[error("augmentation is not multiplicative")]
    BadAugmentation,
    #[error("bimodule axiom fails: {0}")]
    Bimodule(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

/// A finite-dimensional associative algebra, possibly non-unital.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<T> {
    name: String,
    labels: Vec<String>,
    /// `mul[i * dim + j]` is the product `e_i e_j`.
    mul: Vec<SparseVec<T>>,
    unit: Option<SparseVec<T>>,
    /// A multiplicative functional `A → k`, stored as a sparse row.
    augmentation: Option<SparseVec<T>>,
    commutative: bool,
    nilpotency_order: Option<usize>,
}

fn check_index(v: &[(usize, impl Sized)], dim: usize, what: &str) -> Result<(), AlgebraError> {
    match v.iter().find(|(i, _)| *i >= dim) {
        Some((i, _)) => Err(AlgebraError::Shape(format!("{what}: index {} exceeds dimension {dim}", i + 1))),
        None => Ok(()),
    }
}

impl<T: Scalar> Algebra<T> {
    /// Validates associativity, the unit and the augmentation, and computes the
    /// commutativity flag and the nilpotency order.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        mul: Vec<SparseVec<T>>,
        unit: Option<SparseVec<T>>,
        augmentation: Option<SparseVec<T>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if mul.len() != dim * dim {
            return Err(AlgebraError::Shape(format!(
                "{} products for dimension {dim}",
                mul.len()
            )));
        }
        let mul: Vec<SparseVec<T>> = mul.into_iter().map(normalize).collect();
        for v in &mul {
            check_index(v, dim, "product")?;
        }
        let unit = unit.map(normalize);
        let augmentation = augmentation.map(normalize);
        let mut a = Algebra {
            name: name.into(),
            labels,
            mul,
            unit,
            augmentation,
            commutative: false,
            nilpotency_order: None,
        };
        a.check_associative()?;
        a.check_unit()?;
        a.check_augmentation()?;
        a.commutative = (0..dim).all(|i| (i + 1..dim).all(|j| a.mul[i * dim + j] == a.mul[j * dim + i]));
        a.nilpotency_order = a.compute_nilpotency();
        Ok(a)
    }

    /// The zero algebra.
    pub fn zero() -> Self {
        Algebra::new("0", Vec::new(), Vec::new(), None, None).expect("zero algebra")
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        let bad = (0..d * d * d).into_par_iter().find_first(|&t| {
            let (i, j, k) = (t / (d * d), (t / d) % d, t % d);
            self.mul_vec(self.basis_product(i, j), &[(k, T::one())])
                != self.mul_vec(&[(i, T::one())], self.basis_product(j, k))
        });
        match bad {
            Some(t) => Err(AlgebraError::Associativity(t / (d * d) + 1, (t / d) % d + 1, t % d + 1)),
            None => Ok(()),
        }
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let Some(u) = &self.unit else { return Ok(()) };
        check_index(u, self.dim(), "unit").map_err(|e| AlgebraError::Unit(e.to_string()))?;
        for i in 0..self.dim() {
            let e = vec![(i, T::one())];
            if self.mul_vec(u, &e) != e || self.mul_vec(&e, u) != e {
                return Err(AlgebraError::Unit(format!(
                    "u·x = x·u = x fails for basis element {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn check_augmentation(&self) -> Result<(), AlgebraError> {
        let Some(eps) = &self.augmentation else { return Ok(()) };
        check_index(eps, self.dim(), "augmentation")?;
        let d = self.dim();
        let ok = (0..d).all(|i| {
            (0..d).all(|j| self.augment(self.basis_product(i, j)) == self.augment(&[(i, T::one())]) * self.augment(&[(j, T::one())]))
        });
        let unit_ok = self.unit.as_ref().map_or(true, |u| self.augment(u).is_one());
        if ok && unit_ok {
            Ok(())
        } else {
            Err(AlgebraError::BadAugmentation)
        }
    }

    fn compute_nilpotency(&self) -> Option<usize> {
        let all: Vec<SparseVec<T>> = (0..self.dim()).map(|i| vec![(i, T::one())]).collect();
        power_chain_length(self, &all)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&SparseVec<T>> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn augmentation(&self) -> Option<&SparseVec<T>> {
        self.augmentation.as_ref()
    }

    /// Replaces the augmentation, re-validating multiplicativity.
    pub fn with_augmentation(mut self, eps: Option<SparseVec<T>>) -> Result<Self, AlgebraError> {
        self.augmentation = eps.map(normalize);
        self.check_augmentation()?;
        Ok(self)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Least `N` with `A^N = 0`, if the algebra is nilpotent.
    pub fn nilpotency_order(&self) -> Option<usize> {
        self.nilpotency_order
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<T> {
        &self.mul[i * self.dim() + j]
    }

    /// Product of two arbitrary elements.
    pub fn mul_vec(&self, x: &[(usize, T)], y: &[(usize, T)]) -> SparseVec<T> {
        let mut out: SparseVec<T> = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a.clone() * b.clone();
                out = axpy(&out, &c, self.basis_product(*i, *j));
            }
        }
        out
    }

    pub fn augment(&self, x: &[(usize, T)]) -> T {
        let Some(eps) = &self.augmentation else { return T::zero() };
        let mut acc = T::zero();
        let (mut p, mut q) = (0, 0);
        while p < x.len() && q < eps.len() {
            match x[p].0.cmp(&eps[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul_assign(&x[p].1, &eps[q].1);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// The multiplication map `A ⊗ A → A`; column `i * dim + j` is `e_i e_j`.
    pub fn structure_matrix(&self) -> SparseMatrix<T> {
        SparseMatrix::from_columns(self.dim(), self.mul.clone())
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_matrix(&self, x: &[(usize, T)]) -> SparseMatrix<T> {
        let cols = (0..self.dim()).map(|j| self.mul_vec(x, &[(j, T::one())])).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_matrix(&self, x: &[(usize, T)]) -> SparseMatrix<T> {
        let cols = (0..self.dim()).map(|j| self.mul_vec(&[(j, T::one())], x)).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// The same algebra expressed in a new basis: column `k` of `basis` is the
    /// `k`-th new basis vector in old coordinates. `basis` must be invertible.
    pub fn rebase(&self, basis: &SparseMatrix<T>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let inv = crate::linalg::inverse(basis)
            .ok_or_else(|| AlgebraError::Shape("change of basis is singular".into()))?;
        let d = self.dim();
        let mut mul = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                mul.push(inv.mul_vec(&self.mul_vec(basis.col(i), basis.col(j))));
            }
        }
        let unit = self.unit.as_ref().map(|u| inv.mul_vec(u));
        let augmentation = self.augmentation.as_ref().map(|_| {
            (0..d)
                .map(|k| (k, self.augment(basis.col(k))))
                .filter(|(_, x)| !x.is_negligible())
                .collect()
        });
        Algebra::new(self.name.clone(), labels, mul, unit, augmentation)
    }
}

/// Length of the descending chain `S, A·S, A·A·S, …` inside `a` until it
/// vanishes; `None` if it stabilizes at a nonzero subspace.
fn power_chain_length<T: Scalar>(a: &Algebra<T>, start: &[SparseVec<T>]) -> Option<usize> {
    let mut current = span_basis(a.dim(), start.iter().cloned());
    let mut order = 1;
    loop {
        if current.is_empty() {
            return Some(order);
        }
        let next = span_basis(
            a.dim(),
            start.iter().flat_map(|x| current.iter().map(move |y| a.mul_vec(x, y))),
        );
        if next.len() == current.len() {
            return None;
        }
        current = next;
        order += 1;
    }
}

/// A basis of the span of the given vectors (a subset of them).
pub fn span_basis<T: Scalar>(dim: usize, vs: impl IntoIterator<Item = SparseVec<T>>) -> Vec<SparseVec<T>> {
    let mut ech = Echelon::new(dim);
    vs.into_iter()
        .filter(|v| !v.is_empty() && ech.insert(v.clone()) == Insert::Independent)
        .collect()
}

impl<T: Scalar> fmt::Display for Algebra<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}", self.name, self.dim())?;
        if self.is_unital() {
            write!(f, ", unital")?;
        }
        if self.commutative {
            write!(f, ", commutative")?;
        }
        write!(f, ")")
    }
}

/// A bimodule over an algebra, given by left and right action constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<T> {
    algebra: Arc<Algebra<T>>,
    dim: usize,
    /// `left[a * dim + m]` is `e_a · m_m`.
    left: Vec<SparseVec<T>>,
    /// `right[m * dim_a + a]` is `m_m · e_a`.
    right: Vec<SparseVec<T>>,
}

impl<T: Scalar> Bimodule<T> {
    pub fn new(
        algebra: Arc<Algebra<T>>,
        dim: usize,
        left: Vec<SparseVec<T>>,
        right: Vec<SparseVec<T>>,
    ) -> Result<Self, AlgebraError> {
        let da = algebra.dim();
        if left.len() != da * dim || right.len() != da * dim {
            return Err(AlgebraError::Shape("action tables have the wrong size".into()));
        }
        let left: Vec<_> = left.into_iter().map(normalize).collect();
        let right: Vec<_> = right.into_iter().map(normalize).collect();
        for v in left.iter().chain(&right) {
            check_index(v, dim, "action")?;
        }
        let m = Bimodule {
            algebra,
            dim,
            left,
            right,
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// `A` as a bimodule over itself.
    pub fn regular(algebra: Arc<Algebra<T>>) -> Self {
        let d = algebra.dim();
        let table: Vec<SparseVec<T>> = (0..d * d).map(|t| algebra.basis_product(t / d, t % d).clone()).collect();
        Bimodule {
            dim: d,
            left: table.clone(),
            right: table,
            algebra,
        }
    }

    /// Restriction of scalars along `f : C → A`, where `A` is this module's algebra.
    pub fn pullback(&self, f: &AlgebraMorphism<T>) -> Result<Self, AlgebraError> {
        if **f.target() != *self.algebra {
            return Err(AlgebraError::Shape("morphism does not land in the acting algebra".into()));
        }
        let dc = f.source().dim();
        let mut left = Vec::with_capacity(dc * self.dim);
        for c in 0..dc {
            for m in 0..self.dim {
                left.push(self.act_left(f.matrix().col(c), &[(m, T::one())]));
            }
        }
        let mut right = Vec::with_capacity(dc * self.dim);
        for m in 0..self.dim {
            for c in 0..dc {
                right.push(self.act_right(&[(m, T::one())], f.matrix().col(c)));
            }
        }
        Bimodule::new(f.source().clone(), self.dim, left, right)
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let (da, dm) = (self.algebra.dim(), self.dim);
        let one = |i: usize| vec![(i, T::one())];
        for a in 0..da {
            for b in 0..da {
                let ab = self.algebra.basis_product(a, b);
                for m in 0..dm {
                    let em = one(m);
                    if self.act_left(ab, &em) != self.act_left(&one(a), &self.act_left(&one(b), &em)) {
                        return Err(AlgebraError::Bimodule(format!("(ab)m ≠ a(bm) at ({}, {}, {})", a + 1, b + 1, m + 1)));
                    }
                    if self.act_right(&em, ab) != self.act_right(&self.act_right(&em, &one(a)), &one(b)) {
                        return Err(AlgebraError::Bimodule(format!("m(ab) ≠ (ma)b at ({}, {}, {})", m + 1, a + 1, b + 1)));
                    }
                    let lhs = self.act_right(&self.act_left(&one(a), &em), &one(b));
                    let rhs = self.act_left(&one(a), &self.act_right(&em, &one(b)));
                    if lhs != rhs {
                        return Err(AlgebraError::Bimodule(format!("(am)b ≠ a(mb) at ({}, {}, {})", a + 1, m + 1, b + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, a: usize, m: usize) -> &SparseVec<T> {
        &self.left[a * self.dim + m]
    }

    pub fn right_basis(&self, m: usize, a: usize) -> &SparseVec<T> {
        &self.right[m * self.algebra.dim() + a]
    }

    pub fn act_left(&self, a: &[(usize, T)], m: &[(usize, T)]) -> SparseVec<T> {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in m {
                out = axpy(&out, &(x.clone() * y.clone()), self.left_basis(*i, *j));
            }
        }
        out
    }

    pub fn act_right(&self, m: &[(usize, T)], a: &[(usize, T)]) -> SparseVec<T> {
        let mut out = Vec::new();
        for (j, y) in m {
            for (i, x) in a {
                out = axpy(&out, &(x.clone() * y.clone()), self.right_basis(*j, *i));
            }
        }
        out
    }
}

/// An algebra homomorphism given by its matrix in the two bases.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism<T> {
    source: Arc<Algebra<T>>,
    target: Arc<Algebra<T>>,
    matrix: SparseMatrix<T>,
    unital: bool,
}

impl<T: Scalar> AlgebraMorphism<T> {
    /// Checks `f(xy) = f(x) f(y)` on basis pairs and, if `unital` is set, that
    /// the unit is preserved.
    pub fn new(
        source: Arc<Algebra<T>>,
        target: Arc<Algebra<T>>,
        matrix: SparseMatrix<T>,
        unital: bool,
    ) -> Result<Self, AlgebraError> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(AlgebraError::Shape(format!(
                "morphism matrix is {:?}, expected {:?}",
                matrix.shape(),
                (target.dim(), source.dim())
            )));
        }
        let d = source.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = matrix.mul_vec(source.basis_product(i, j));
                let rhs = target.mul_vec(matrix.col(i), matrix.col(j));
                if lhs != rhs {
                    return Err(AlgebraError::NotAMorphism(i + 1, j + 1));
                }
            }
        }
        if unital {
            match (source.unit(), target.unit()) {
                (Some(u), Some(v)) if &matrix.mul_vec(u) == v => {}
                _ => return Err(AlgebraError::Unit("morphism does not preserve the unit".into())),
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
            unital,
        })
    }

    pub fn source(&self) -> &Arc<Algebra<T>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra<T>> {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix<T> {
        &self.matrix
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn is_surjective(&self) -> bool {
        crate::linalg::rank(&self.matrix) == self.target.dim()
    }

    /// A basis of the kernel, as an ideal of the source.
    pub fn kernel(&self) -> Ideal<T> {
        Ideal::new(self.source.clone(), crate::linalg::kernel(&self.matrix)).expect("kernels are ideals")
    }
}

/// A two-sided ideal, stored as a basis of the subspace it spans.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<T> {
    ambient: Arc<Algebra<T>>,
    basis: Vec<SparseVec<T>>,
}

impl<T: Scalar> Ideal<T> {
    /// The subspace spanned by `generators`, which must already be closed
    /// under multiplication by the ambient algebra on both sides.
    pub fn new(ambient: Arc<Algebra<T>>, generators: Vec<SparseVec<T>>) -> Result<Self, AlgebraError> {
        let d = ambient.dim();
        for g in &generators {
            check_index(g, d, "ideal generator")?;
        }
        let basis = span_basis(d, generators.into_iter().map(normalize));
        let mut ech = Echelon::new(d);
        for b in &basis {
            ech.insert(b.clone());
        }
        for x in &basis {
            for i in 0..d {
                let e = [(i, T::one())];
                if !ech.contains(&ambient.mul_vec(&e, x)) || !ech.contains(&ambient.mul_vec(x, &e)) {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        Ok(Ideal { ambient, basis })
    }

    /// The two-sided ideal generated by the given elements.
    pub fn generated_by(ambient: Arc<Algebra<T>>, generators: Vec<SparseVec<T>>) -> Self {
        let d = ambient.dim();
        let mut ech = Echelon::new(d);
        let mut basis: Vec<SparseVec<T>> = Vec::new();
        let mut queue: Vec<SparseVec<T>> = generators.into_iter().map(normalize).collect();
        while let Some(x) = queue.pop() {
            if x.is_empty() || ech.insert(x.clone()) != Insert::Independent {
                continue;
            }
            for i in 0..d {
                let e = [(i, T::one())];
                queue.push(ambient.mul_vec(&e, &x));
                queue.push(ambient.mul_vec(&x, &e));
            }
            basis.push(x);
        }
        Ideal { ambient, basis }
    }

    pub fn ambient(&self) -> &Arc<Algebra<T>> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<T>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient.dim() × dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix<T> {
        SparseMatrix::from_columns(self.ambient.dim(), self.basis.clone())
    }

    pub fn contains(&self, x: &[(usize, T)]) -> bool {
        let mut ech = Echelon::new(self.ambient.dim());
        for b in &self.basis {
            ech.insert(b.clone());
        }
        ech.contains(x)
    }

    /// Least `N` with `I^N = 0`, if any.
    pub fn nilpotency_order(&self) -> Option<usize> {
        power_chain_length(&self.ambient, &self.basis)
    }

    /// The ideal as an algebra in its own right, in the stored basis, together
    /// with its inclusion into the ambient algebra.
    pub fn as_algebra(&self) -> (Algebra<T>, AlgebraMorphism<T>) {
        let k = self.dim();
        let mut ech = Echelon::with_tracking(self.ambient.dim());
        for b in &self.basis {
            ech.insert(b.clone());
        }
        let mut mul = Vec::with_capacity(k * k);
        for x in &self.basis {
            for y in &self.basis {
                let p = self.ambient.mul_vec(x, y);
                mul.push(ech.express(&p).expect("ideal is closed under products"));
            }
        }
        let labels = (1..=k).map(|i| format!("i{i}")).collect();
        let alg = Arc::new(
            Algebra::new(format!("ideal of {}", self.ambient.name()), labels, mul, None, None)
                .expect("restriction of an associative product"),
        );
        let incl = AlgebraMorphism::new(alg.clone(), self.ambient.clone(), self.basis_matrix(), false)
            .expect("inclusion is multiplicative");
        (Arc::try_unwrap(alg).unwrap_or_else(|a| (*a).clone()), incl)
    }
}

/// `M_r(A)`, with basis `E_{ij} ⊗ a` at index `(i * r + j) * dim A + a`.
pub fn matrix_algebra<T: Scalar>(a: &Algebra<T>, r: usize) -> Algebra<T> {
    assert!(r >= 1, "matrix size must be positive");
    let d = a.dim();
    let idx = |i: usize, j: usize, x: usize| (i * r + j) * d + x;
    let n = r * r * d;
    let mut mul = vec![Vec::new(); n * n];
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                for x in 0..d {
                    for y in 0..d {
                        let prod = a.basis_product(x, y).iter().map(|(z, c)| (idx(i, l, *z), c.clone())).collect();
                        mul[idx(i, j, x) * n + idx(j, l, y)] = prod;
                    }
                }
            }
        }
    }
    let unit = a.unit().map(|u| {
        let mut v: SparseVec<T> = (0..r).flat_map(|i| u.iter().map(move |(x, c)| (idx(i, i, *x), c.clone()))).collect();
        v.sort_by_key(|e| e.0);
        v
    });
    let mut labels = Vec::with_capacity(n);
    for i in 0..r {
        for j in 0..r {
            for x in a.labels() {
                labels.push(format!("E{}{}⊗{x}", i + 1, j + 1));
            }
        }
    }
    Algebra::new(format!("M{r}({})", a.name()), labels, mul, unit, None).expect("matrix algebra is associative")
}

/// `A ⊕ k` with a formally adjoined unit at index 0, and the inclusion of `A`.
pub fn unitalization<T: Scalar>(a: &Arc<Algebra<T>>) -> (Algebra<T>, AlgebraMorphism<T>) {
    let d = a.dim();
    let n = d + 1;
    let mut mul = vec![Vec::new(); n * n];
    mul[0] = vec![(0, T::one())];
    for i in 1..n {
        mul[i] = vec![(i, T::one())];
        mul[i * n] = vec![(i, T::one())];
        for j in 1..n {
            mul[i * n + j] = a.basis_product(i - 1, j - 1).iter().map(|(k, c)| (k + 1, c.clone())).collect();
        }
    }
    let mut labels = vec!["1".to_string()];
    labels.extend(a.labels().iter().cloned());
    let plus = Arc::new(
        Algebra::new(format!("{}+", a.name()), labels, mul, Some(vec![(0, T::one())]), Some(vec![(0, T::one())]))
            .expect("unitalization is associative"),
    );
    let incl = SparseMatrix::from_columns(n, (0..d).map(|i| vec![(i + 1, T::one())]).collect());
    let map = AlgebraMorphism::new(a.clone(), plus.clone(), incl, false).expect("inclusion is multiplicative");
    ((*plus).clone(), map)
}

/// `A ⊗ B` with basis `a ⊗ b` at index `a * dim B + b`.
pub fn tensor<T: Scalar>(a: &Algebra<T>, b: &Algebra<T>) -> Algebra<T> {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (x1, x2, y1, y2) = (x / db, x % db, y / db, y % db);
            let mut v = Vec::new();
            for (p, c) in a.basis_product(x1, y1) {
                for (q, e) in b.basis_product(x2, y2) {
                    v.push((p * db + q, c.clone() * e.clone()));
                }
            }
            mul.push(v);
        }
    }
    let outer = |u: &SparseVec<T>, v: &SparseVec<T>| -> SparseVec<T> {
        u.iter()
            .flat_map(|(p, c)| v.iter().map(move |(q, e)| (p * db + q, c.clone() * e.clone())))
            .collect()
    };
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(outer(u, v)),
        _ => None,
    };
    let augmentation = match (a.augmentation(), b.augmentation()) {
        (Some(u), Some(v)) => Some(outer(u, v)),
        _ => None,
    };
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    Algebra::new(format!("{}⊗{}", a.name(), b.name()), labels, mul, unit, augmentation)
        .expect("tensor product is associative")
}

/// The kernel of the augmentation of a local Artinian algebra.
pub fn augmentation_ideal<T: Scalar>(b: &Arc<Algebra<T>>) -> Result<Ideal<T>, AlgebraError> {
    let eps = b.augmentation().ok_or(AlgebraError::NotAugmented)?;
    let (k, ck) = eps.first().cloned().ok_or(AlgebraError::NotAugmented)?;
    let gens: Vec<SparseVec<T>> = (0..b.dim())
        .filter(|&j| j != k)
        .map(|j| {
            let cj = b.augment(&[(j, T::one())]);
            normalize(vec![(j, T::one()), (k, -(cj / ck.clone()))])
        })
        .collect();
    let ideal = Ideal::new(b.clone(), gens)?;
    if ideal.nilpotency_order().is_none() {
        return Err(AlgebraError::IdealNotNilpotent);
    }
    Ok(ideal)
}

/// `A / I` in the basis given by the coordinates complementary to the echelon
/// pivots of `I`, with the projection.
pub fn quotient<T: Scalar>(a: &Arc<Algebra<T>>, ideal: &Ideal<T>) -> Result<(Algebra<T>, AlgebraMorphism<T>), AlgebraError> {
    if !Arc::ptr_eq(a, ideal.ambient()) && **a != **ideal.ambient() {
        return Err(AlgebraError::NotAnIdeal);
    }
    let d = a.dim();
    let mut ech = Echelon::new(d);
    for v in ideal.basis() {
        ech.insert(v.clone());
    }
    let keep: Vec<usize> = (0..d).filter(|&i| !ech.is_pivot(i)).collect();
    let mut slot = vec![usize::MAX; d];
    for (k, &i) in keep.iter().enumerate() {
        slot[i] = k;
    }
    let project = |v: &[(usize, T)]| -> SparseVec<T> {
        ech.reduce(v.to_vec()).into_iter().map(|(i, c)| (slot[i], c)).collect()
    };
    let m = keep.len();
    let mut mul = Vec::with_capacity(m * m);
    for &i in &keep {
        for &j in &keep {
            mul.push(project(a.basis_product(i, j)));
        }
    }
    let unit = a.unit().map(|u| project(u)).filter(|u| !u.is_empty() || m == 0);
    let augmentation = a.augmentation().and_then(|_| {
        let ok = ideal.basis().iter().all(|v| a.augment(v).is_negligible());
        ok.then(|| {
            keep.iter()
                .enumerate()
                .map(|(k, &i)| (k, a.augment(&[(i, T::one())])))
                .filter(|(_, x)| !x.is_negligible())
                .collect()
        })
    });
    let labels = keep.iter().map(|&i| format!("[{}]", a.labels()[i])).collect();
    let quot = Arc::new(Algebra::new(format!("{}/I", a.name()), labels, mul, unit, augmentation)?);
    let proj = SparseMatrix::from_columns(m, (0..d).map(|i| project(&[(i, T::one())])).collect());
    let unital = a.is_unital() && quot.is_unital();
    let map = AlgebraMorphism::new(a.clone(), quot.clone(), proj, unital)?;
    Ok(((*quot).clone(), map))
}

/// A basis of `[A, A]`, the span of all `e_i e_j − e_j e_i`.
pub fn commutator_subspace<T: Scalar>(a: &Algebra<T>) -> Vec<SparseVec<T>> {
    let d = a.dim();
    let comms = (0..d).flat_map(|i| {
        (i + 1..d).map(move |j| axpy(a.basis_product(i, j), &-T::one(), a.basis_product(j, i)))
    });
    span_basis(d, comms)
}
