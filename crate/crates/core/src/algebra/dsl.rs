//! A line-oriented text format for structure constants.
//!
//! ```text
//! # k × k
//! algebra product dim 2
//! basis e1 e2
//! mul 1 1 = 1*1
//! mul 2 2 = 1*2
//! unit = 1*1 + 1*2
//! augmentation = 1
//! ```
//!
//! Indices are 1-based and may be replaced by basis labels. Omitted products
//! are zero; coefficients are integers or `p/q`, and `c*` may be dropped when
//! `c = 1`. A file may instead consist of a single `preset <name> [args]`
//! line. `augmentation = k` declares the coordinate functional dual to basis
//! vector `k` as the augmentation.

use super::presets::preset;
use super::{Algebra, AlgebraError};
use crate::scalar::Scalar;
use crate::sparse::{normalize, SparseVec};

struct Draft<T> {
    name: String,
    dim: usize,
    labels: Option<Vec<String>>,
    mul: Vec<SparseVec<T>>,
    unit: Option<SparseVec<T>>,
    augmentation: Option<usize>,
}

fn err(line: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_coeff<T: Scalar>(text: &str, line: usize) -> Result<T, AlgebraError> {
    let bad = || err(line, format!("invalid coefficient `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(err(line, "zero denominator"));
            }
            Ok(T::ratio(n, d))
        }
        None => text.trim().parse::<i64>().map(T::from_int).map_err(|_| bad()),
    }
}

impl<T: Scalar> Draft<T> {
    fn index(&self, token: &str, line: usize) -> Result<usize, AlgebraError> {
        let token = token.trim();
        if let Ok(k) = token.parse::<usize>() {
            if (1..=self.dim).contains(&k) {
                return Ok(k - 1);
            }
            return Err(err(line, format!("index {k} out of range 1..={}", self.dim)));
        }
        self.labels
            .as_ref()
            .and_then(|ls| ls.iter().position(|l| l == token))
            .ok_or_else(|| err(line, format!("unknown basis element `{token}`")))
    }

    /// Parses `c1*k1 + c2*k2 - k3 ...`; a lone `0` is the zero vector.
    fn combination(&self, text: &str, line: usize) -> Result<SparseVec<T>, AlgebraError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Vec::new());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for c in text.chars() {
            match c {
                '+' | '-' if !current.trim().is_empty() && !current.trim_end().ends_with('/') => {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = c == '-';
                }
                '-' if current.trim().is_empty() => negative = !negative,
                '+' if current.trim().is_empty() => {}
                _ => current.push(c),
            }
        }
        if current.trim().is_empty() {
            return Err(err(line, "dangling sign in linear combination"));
        }
        terms.push((negative, current));
        let mut out = Vec::new();
        for (neg, term) in terms {
            let (coeff, idx) = match term.split_once('*') {
                Some((c, k)) => (parse_coeff::<T>(c, line)?, self.index(k, line)?),
                None => (T::one(), self.index(&term, line)?),
            };
            out.push((idx, if neg { -coeff } else { coeff }));
        }
        Ok(normalize(out))
    }
}

/// Parses one algebra from the text format.
pub fn parse_algebra<T: Scalar>(text: &str) -> Result<Algebra<T>, AlgebraError> {
    let mut draft: Option<Draft<T>> = None;
    let mut from_preset: Option<Algebra<T>> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if from_preset.is_some() {
            return Err(err(line, "nothing may follow a preset line"));
        }
        match keyword {
            "preset" => {
                if draft.is_some() {
                    return Err(err(line, "preset cannot be combined with an explicit table"));
                }
                let mut words = rest.split_whitespace();
                let name = words.next().ok_or_else(|| err(line, "missing preset name"))?;
                let params: Vec<&str> = words.collect();
                let expr = if params.is_empty() { name.to_string() } else { format!("{name}({})", params.join(",")) };
                let alg = preset(&expr).map_err(|e| match e {
                    AlgebraError::Parse { message, .. } => err(line, message),
                    other => other,
                })?;
                from_preset = Some(alg);
            }
            "algebra" => {
                if draft.is_some() {
                    return Err(err(line, "only one algebra per file"));
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [name, "dim", d] = words.as_slice() else {
                    return Err(err(line, "expected `algebra <name> dim <d>`"));
                };
                let dim: usize = d.parse().map_err(|_| err(line, format!("invalid dimension `{d}`")))?;
                draft = Some(Draft {
                    name: name.to_string(),
                    dim,
                    labels: None,
                    mul: vec![Vec::new(); dim * dim],
                    unit: None,
                    augmentation: None,
                });
            }
            _ => {
                let d = draft.as_mut().ok_or_else(|| err(line, format!("`{keyword}` before `algebra` header")))?;
                match keyword {
                    "basis" => {
                        let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                        if labels.len() != d.dim {
                            return Err(err(line, format!("{} labels for dimension {}", labels.len(), d.dim)));
                        }
                        d.labels = Some(labels);
                    }
                    "mul" => {
                        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(line, "expected `mul <i> <j> = ...`"))?;
                        let idx: Vec<&str> = lhs.split_whitespace().collect();
                        let [i, j] = idx.as_slice() else {
                            return Err(err(line, "expected two indices"));
                        };
                        let (i, j) = (d.index(i, line)?, d.index(j, line)?);
                        let v = d.combination(rhs, line)?;
                        let dim = d.dim;
                        d.mul[i * dim + j] = v;
                    }
                    "unit" => {
                        let rhs = rest.strip_prefix('=').ok_or_else(|| err(line, "expected `unit = ...`"))?;
                        d.unit = Some(d.combination(rhs, line)?);
                    }
                    "augmentation" => {
                        let rhs = rest.strip_prefix('=').ok_or_else(|| err(line, "expected `augmentation = <k>`"))?;
                        d.augmentation = Some(d.index(rhs, line)?);
                    }
                    other => return Err(err(line, format!("unknown keyword `{other}`"))),
                }
            }
        }
    }
    if let Some(a) = from_preset {
        return Ok(a);
    }
    let d = draft.ok_or_else(|| err(0, "empty input"))?;
    let labels = d.labels.unwrap_or_else(|| (1..=d.dim).map(|i| format!("e{i}")).collect());
    let aug = d.augmentation.map(|k| vec![(k, T::one())]);
    Algebra::new(d.name, labels, d.mul, d.unit, aug)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn explicit_product_table() {
        let src = "algebra QxQ dim 2\nbasis e1 e2\nmul 1 1 = 1*1\nmul e2 e2 = e2\nunit = 1*1 + 1*2\n";
        let a: Algebra<Rational> = parse_algebra(src).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_unital());
    }

    #[test]
    fn preset_line() {
        let a: Algebra<Rational> = parse_algebra("preset dual_numbers\n").unwrap();
        assert_eq!(a.dim(), 2);
        let b: Algebra<Rational> = parse_algebra("preset matrix 2 dual_numbers").unwrap();
        assert_eq!(b.dim(), 8);
    }

    #[test]
    fn associativity_error_names_triple() {
        let src = "algebra bad dim 2\nmul 1 1 = 2\nmul 2 2 = 2\n";
        assert_eq!(parse_algebra::<Rational>(src).unwrap_err(), AlgebraError::Associativity(1, 1, 2));
    }

    #[test]
    fn parse_errors_carry_line() {
        let src = "algebra a dim 1\n\nmul 1 3 = 1\n";
        match parse_algebra::<Rational>(src) {
            Err(AlgebraError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn signed_and_fractional_coefficients() {
        let src = "algebra a dim 2\nmul 1 1 = 1\nmul 1 2 = 2\nmul 2 1 = 2\nunit = -1/2*1 + 3/2*1\n";
        let a: Algebra<Rational> = parse_algebra(src).unwrap();
        assert_eq!(a.unit(), Some(&vec![(0, Rational::from_int(1))]));
    }

    #[test]
    fn bad_unit_is_reported() {
        let src = "algebra a dim 1\nmul 1 1 = 1\nunit = 2*1\n";
        assert!(matches!(parse_algebra::<Rational>(src), Err(AlgebraError::Unit(_))));
    }
}
