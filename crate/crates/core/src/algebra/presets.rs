//! The catalog of small Artinian algebras used throughout the test suite and
//! by the command-line tool.
//!
//! Presets are addressed by expressions such as `dual_numbers`,
//! `truncated_poly(3)`, `truncated_poly:3` or `matrix(2, dual_numbers)`.

use std::sync::Arc;

use super::{matrix_algebra, Algebra, AlgebraError};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Expressions for the default catalog. Every entry has dimension at most
/// four, which keeps degree-5 complexes small.
pub const CATALOG: &[&str] = &[
    "ground",
    "dual_numbers",
    "truncated_poly(3)",
    "square_zero(2)",
    "fat_point",
    "product",
    "matrix(2, ground)",
    "upper_triangular(2, ground)",
    "null(1)",
];

fn one<T: Scalar>(i: usize) -> SparseVec<T> {
    vec![(i, T::one())]
}

/// The ground field.
pub fn ground<T: Scalar>() -> Algebra<T> {
    Algebra::new("ground", vec!["1".into()], vec![one(0)], Some(one(0)), Some(one(0))).expect("ground field")
}

/// `k[ε]/ε²`.
pub fn dual_numbers<T: Scalar>() -> Algebra<T> {
    let mut a = truncated_poly(2).with_name("dual_numbers");
    a.labels = vec!["1".into(), "ε".into()];
    a
}

/// `k[t]/t^k` with basis `1, t, …, t^{k−1}`.
pub fn truncated_poly<T: Scalar>(k: usize) -> Algebra<T> {
    assert!(k >= 1, "truncation degree must be positive");
    let mut mul = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            mul.push(if i + j < k { one(i + j) } else { Vec::new() });
        }
    }
    let labels = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    Algebra::new(format!("truncated_poly({k})"), labels, mul, Some(one(0)), Some(one(0))).expect("truncated polynomials")
}

/// The trivial square-zero extension `k ⋉ V` with `dim V = v`.
pub fn square_zero<T: Scalar>(v: usize) -> Algebra<T> {
    let n = v + 1;
    let mut mul = vec![Vec::new(); n * n];
    for i in 0..n {
        mul[i] = one(i);
        mul[i * n] = one(i);
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=v).map(|i| format!("v{i}")));
    Algebra::new(format!("square_zero({v})"), labels, mul, Some(one(0)), Some(one(0))).expect("square-zero extension")
}

/// `V` with the zero product; non-unital and nilpotent of order 2.
pub fn null_algebra<T: Scalar>(v: usize) -> Algebra<T> {
    let labels = (1..=v).map(|i| format!("v{i}")).collect();
    Algebra::new(format!("null({v})"), labels, vec![Vec::new(); v * v], None, None).expect("zero product")
}

/// `k[x, y]/(x, y)²`.
pub fn fat_point<T: Scalar>() -> Algebra<T> {
    let mut a = square_zero(2).with_name("fat_point");
    a.labels = vec!["1".into(), "x".into(), "y".into()];
    a
}

/// `k × k` with augmentation given by the first factor.
pub fn product<T: Scalar>() -> Algebra<T> {
    let mul = vec![one(0), Vec::new(), Vec::new(), one(1)];
    Algebra::new(
        "product",
        vec!["e1".into(), "e2".into()],
        mul,
        Some(vec![(0, T::one()), (1, T::one())]),
        Some(one(0)),
    )
    .expect("product algebra")
}

/// `M_r(B)`.
pub fn matrix<T: Scalar>(r: usize, base: &Algebra<T>) -> Algebra<T> {
    matrix_algebra(base, r)
}

/// Upper-triangular `n × n` matrices over `base`, with basis `E_{ij} ⊗ b`
/// for `i ≤ j` in lexicographic order of `(i, j)`, then by `b`.
pub fn upper_triangular<T: Scalar>(n: usize, base: &Algebra<T>) -> Algebra<T> {
    assert!(n >= 1, "matrix size must be positive");
    let d = base.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("upper entry");
    let dim = pairs.len() * d;
    let mut mul = vec![Vec::new(); dim * dim];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for (q, &(k, l)) in pairs.iter().enumerate() {
            if j != k {
                continue;
            }
            let target = pos(i, l);
            for x in 0..d {
                for y in 0..d {
                    mul[(p * d + x) * dim + q * d + y] =
                        base.basis_product(x, y).iter().map(|(z, c)| (target * d + z, c.clone())).collect();
                }
            }
        }
    }
    let unit = base.unit().map(|u| {
        let mut v: SparseVec<T> = (0..n).flat_map(|i| u.iter().map(move |(z, c)| (pos(i, i) * d + z, c.clone()))).collect();
        v.sort_by_key(|e| e.0);
        v
    });
    let labels = pairs
        .iter()
        .flat_map(|(i, j)| base.labels().iter().map(move |b| format!("E{}{}⊗{b}", i + 1, j + 1)))
        .collect();
    Algebra::new(format!("upper_triangular({n}, {})", base.name()), labels, mul, unit, None)
        .expect("upper-triangular matrices are associative")
}

/// A parsed preset expression: a name with integer or nested arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetArg {
    Int(usize),
    Expr(PresetExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetExpr {
    pub name: String,
    pub args: Vec<PresetArg>,
}

fn bad(text: &str, why: &str) -> AlgebraError {
    AlgebraError::Parse {
        line: 0,
        message: format!("preset `{text}`: {why}"),
    }
}

/// Splits at commas outside parentheses.
fn split_top(text: &str) -> Result<Vec<&str>, AlgebraError> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(text, "unbalanced parentheses"));
                }
            }
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(text, "unbalanced parentheses"));
    }
    out.push(&text[start..]);
    Ok(out)
}

impl PresetExpr {
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let text = text.trim();
        let (name, args) = if let Some(open) = text.find('(') {
            if !text.ends_with(')') {
                return Err(bad(text, "expected closing parenthesis"));
            }
            (&text[..open], Some(&text[open + 1..text.len() - 1]))
        } else if let Some((name, rest)) = text.split_once(':') {
            (name, Some(rest))
        } else {
            (text, None)
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad(text, "invalid preset name"));
        }
        let args = match args {
            None => Vec::new(),
            Some(a) if a.trim().is_empty() => Vec::new(),
            Some(a) => split_top(a)?
                .into_iter()
                .map(|arg| {
                    let arg = arg.trim();
                    match arg.parse::<usize>() {
                        Ok(n) => Ok(PresetArg::Int(n)),
                        Err(_) => PresetExpr::parse(arg).map(PresetArg::Expr),
                    }
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(PresetExpr {
            name: name.to_string(),
            args,
        })
    }

    fn int(&self, k: usize, default: Option<usize>) -> Result<usize, AlgebraError> {
        match (self.args.get(k), default) {
            (Some(PresetArg::Int(n)), _) if *n >= 1 => Ok(*n),
            (None, Some(d)) => Ok(d),
            _ => Err(bad(&self.name, &format!("argument {} must be a positive integer", k + 1))),
        }
    }

    fn algebra<T: Scalar>(&self, k: usize) -> Result<Algebra<T>, AlgebraError> {
        match self.args.get(k) {
            Some(PresetArg::Expr(e)) => e.build(),
            None => Ok(ground()),
            _ => Err(bad(&self.name, &format!("argument {} must be a preset", k + 1))),
        }
    }

    fn arity(&self, max: usize) -> Result<(), AlgebraError> {
        if self.args.len() > max {
            Err(bad(&self.name, &format!("takes at most {max} arguments")))
        } else {
            Ok(())
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<Algebra<T>, AlgebraError> {
        match self.name.as_str() {
            "ground" | "Q" => self.arity(0).map(|_| ground()),
            "dual_numbers" => self.arity(0).map(|_| dual_numbers()),
            "fat_point" => self.arity(0).map(|_| fat_point()),
            "product" => self.arity(0).map(|_| product()),
            "truncated_poly" => {
                self.arity(1)?;
                Ok(truncated_poly(self.int(0, None)?))
            }
            "square_zero" => {
                self.arity(1)?;
                Ok(square_zero(self.int(0, Some(1))?))
            }
            "null" => {
                self.arity(1)?;
                Ok(null_algebra(self.int(0, Some(1))?))
            }
            "matrix" => {
                self.arity(2)?;
                Ok(matrix(self.int(0, None)?, &self.algebra(1)?))
            }
            "upper_triangular" => {
                self.arity(2)?;
                Ok(upper_triangular(self.int(0, None)?, &self.algebra(1)?))
            }
            other => Err(AlgebraError::UnknownPreset(other.to_string())),
        }
    }
}

/// Builds the algebra named by a preset expression.
pub fn preset<T: Scalar>(text: &str) -> Result<Algebra<T>, AlgebraError> {
    PresetExpr::parse(text)?.build()
}

/// The default catalog, built.
pub fn catalog<T: Scalar>() -> Vec<Arc<Algebra<T>>> {
    CATALOG.iter().map(|e| Arc::new(preset(e).expect("catalog entries are valid"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parses_nested_expressions() {
        let e = PresetExpr::parse("matrix(2, truncated_poly:3)").unwrap();
        assert_eq!(e.name, "matrix");
        assert_eq!(e.args[0], PresetArg::Int(2));
        let a: Algebra<Rational> = e.build().unwrap();
        assert_eq!(a.dim(), 12);
        assert_eq!(preset::<Rational>("truncated_poly:4").unwrap().dim(), 4);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(preset::<Rational>("nope"), Err(AlgebraError::UnknownPreset(_))));
        assert!(preset::<Rational>("matrix(2").is_err());
        assert!(preset::<Rational>("truncated_poly(0)").is_err());
    }

    #[test]
    fn catalog_is_small() {
        for a in catalog::<Rational>() {
            assert!(a.dim() <= 4, "{a}");
        }
    }

    #[test]
    fn upper_triangular_is_three_dimensional() {
        let u = upper_triangular(2, &ground::<Rational>());
        assert_eq!(u.dim(), 3);
        assert!(u.is_unital());
        assert!(!u.is_commutative());
    }
}
