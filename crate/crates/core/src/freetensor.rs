//! Words and homogeneous noncommutative polynomials in the free algebra on
//! `d` generators, and the lexicographic indexing of the degree-`n` words.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::SparseVec;
use crate::field::Field;

/// Default bound on the number of basis words enumerated in one degree.
pub const DEFAULT_WORD_CAP: usize = 1 << 22;

/// A monomial of the free algebra: a sequence of 0-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Render with generator names, factors joined by `sep`.
    pub fn render(&self, names: &[String], sep: &str) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{x}")?;
        }
        Ok(())
    }
}

fn word_count(d: usize, n: usize) -> u128 {
    (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn check_cap(d: usize, n: usize, cap: usize) -> Result<usize> {
    let words = word_count(d, n);
    if words > cap as u128 {
        return Err(Error::SizeCap { degree: n, words, cap });
    }
    Ok(words as usize)
}

/// All `d^n` words of length `n`, in lexicographic order. A word's position
/// in this list is its tensor index.
pub fn enumerate_words(d: usize, n: usize, cap: usize) -> Result<Vec<Word>> {
    let total = check_cap(d, n, cap)?;
    Ok((0..total).map(|i| word_at(i, d, n)).collect())
}

/// Inverse of [`tensor_index`] for words of length `n`.
pub fn word_at(mut index: usize, d: usize, n: usize) -> Word {
    let mut letters = vec![0; n];
    for slot in letters.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    Word(letters)
}

/// Position of `w` among the words of its length: the base-`d` numeral of its letters.
pub fn tensor_index(w: &Word, d: usize) -> Result<usize> {
    w.0.iter().try_fold(0usize, |acc, &x| {
        if x >= d {
            return Err(Error::LetterOutOfRange { letter: x, generators: d });
        }
        Ok(acc * d + x)
    })
}

/// Homogeneous element of the free algebra.
#[derive(Clone, Debug)]
pub struct NCPoly<F: Field> {
    degree: usize,
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> PartialEq for NCPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl<F: Field> NCPoly<F> {
    pub fn zero(degree: usize) -> Self {
        NCPoly { degree, terms: BTreeMap::new() }
    }

    pub fn monomial(field: &F, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        let degree = w.degree();
        terms.insert(w, field.one());
        NCPoly { degree, terms }
    }

    /// Collects like terms and drops zeros. All words must share one degree.
    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Word, F::Elem)>) -> Result<Self> {
        let mut map: BTreeMap<Word, F::Elem> = BTreeMap::new();
        let mut degree = None;
        for (w, c) in terms {
            match degree {
                None => degree = Some(w.degree()),
                Some(d) if d != w.degree() => {
                    return Err(Error::InvalidPresentation(format!(
                        "inhomogeneous polynomial: degrees {d} and {}",
                        w.degree()
                    )))
                }
                _ => {}
            }
            let e = map.entry(w).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        map.retain(|_, c| !field.is_zero(c));
        Ok(NCPoly { degree: degree.unwrap_or(0), terms: map })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Word, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, field: &F, s: &F::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), field.mul(c, s)))
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        NCPoly { degree: self.degree, terms }
    }

    /// Product in the free algebra.
    pub fn concat(&self, field: &F, other: &Self) -> Self {
        let mut terms: BTreeMap<Word, F::Elem> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let e = terms.entry(u.concat(v)).or_insert_with(|| field.zero());
                *e = field.mul_add(e, a, b);
            }
        }
        terms.retain(|_, c| !field.is_zero(c));
        NCPoly { degree: self.degree + other.degree, terms }
    }

    /// Coefficient vector in the word basis of `V^{(x)n}`.
    pub fn to_sparse(&self, d: usize) -> Result<SparseVec<F::Elem>> {
        let mut v = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            v.push((tensor_index(w, d)?, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn from_sparse(field: &F, d: usize, n: usize, v: &[(usize, F::Elem)]) -> Self {
        let terms = v
            .iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (word_at(*i, d, n), c.clone()))
            .collect();
        NCPoly { degree: n, terms }
    }

    /// Human-readable form such as `x*z + z*x` or `x* z* + z* x*`.
    pub fn render(&self, field: &F, names: &[String], sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(field, c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !field.is_one(&mag) {
                out.push_str(&mag.to_string());
                out.push_str(sep);
            }
            out.push_str(&w.render(names, sep));
        }
        out
    }
}

/// Sign convention for display: rationals by sign, prime-field residues above p/2.
fn is_negative<F: Field>(field: &F, c: &F::Elem) -> bool {
    let s = c.to_string();
    match field.spec() {
        crate::field::FieldSpec::Rationals => s.starts_with('-'),
        crate::field::FieldSpec::Prime(p) => s.parse::<u64>().map(|v| v > p / 2).unwrap_or(false),
    }
}

/// The spanning vectors of `V^{left} (x) q (x) V^{n-left-2}` for a quadratic
/// relation `q`, one per pair of padding words, in the word basis of degree `n`.
pub fn embed_relation<'a, F: Field>(
    q: &'a NCPoly<F>,
    left: usize,
    n: usize,
    d: usize,
) -> Result<impl Iterator<Item = SparseVec<F::Elem>> + 'a> {
    if q.degree() != 2 || left + 2 > n {
        return Err(Error::InvalidPresentation(format!(
            "cannot embed a degree-{} relation at position {left} in degree {n}",
            q.degree()
        )));
    }
    let right = n - left - 2;
    let base = q.to_sparse(d)?;
    let left_count = d.pow(left as u32);
    let right_count = d.pow(right as u32);
    let right_scale = right_count;
    let mid_scale = d * d * right_count;
    Ok((0..left_count).flat_map(move |u| {
        let base = base.clone();
        (0..right_count).map(move |v| {
            base.iter()
                .map(|(i, c)| (u * mid_scale + i * right_scale + v, c.clone()))
                .collect()
        })
    }))
}
