use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::TensorError;
use crate::gfp::{GradedVectorSpace, Prime};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub label: String,
    pub degree: u32,
}

/// A graded alphabet together with the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorAlgebra {
    generators: Vec<Generator>,
    p: Prime,
}

/// A word in the generators, stored as generator indices. The empty word is
/// the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub(crate) fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }
}

impl TensorAlgebra {
    pub fn new<S: Into<String>>(
        p: Prime,
        generators: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>, TensorError> {
        let mut gens: Vec<Generator> = Vec::new();
        for (label, degree) in generators {
            let label = label.into();
            if degree == 0 {
                return Err(TensorError::DegreeZeroGenerator(label));
            }
            if gens.iter().any(|g| g.label == label) {
                return Err(TensorError::DuplicateLabel(label));
            }
            gens.push(Generator { label, degree });
        }
        if gens.len() > u8::MAX as usize {
            return Err(TensorError::TooManyGenerators);
        }
        Ok(Arc::new(TensorAlgebra { generators: gens, p }))
    }

    /// `T(V)` on a basis of `V`, generators ordered by degree then label order.
    pub fn from_graded(v: &GradedVectorSpace) -> Result<Arc<Self>, TensorError> {
        Self::new(v.modulus(), v.iter().map(|(d, l)| (l.to_owned(), d)))
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn index_of(&self, label: &str) -> Result<u8, TensorError> {
        self.generators
            .iter()
            .position(|g| g.label == label)
            .map(|i| i as u8)
            .ok_or_else(|| TensorError::UnknownLabel(label.to_owned()))
    }

    #[inline]
    pub fn letter_degree(&self, letter: u8) -> u32 {
        self.generators[letter as usize].degree
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.0.iter().map(|&l| self.letter_degree(l)).sum()
    }

    /// All words of total degree `d`, in increasing order.
    pub fn words_of_degree(&self, d: u32) -> Vec<Word> {
        fn walk(alg: &TensorAlgebra, left: u32, cur: &mut Word, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for (i, g) in alg.generators.iter().enumerate() {
                if g.degree <= left {
                    cur.push(i as u8);
                    walk(alg, left - g.degree, cur, out);
                    cur.0.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, d, &mut Word::empty(), &mut out);
        out.sort();
        out
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_owned();
        }
        let short = w.0.iter().all(|&l| self.generators[l as usize].label.chars().count() == 1);
        let parts: Vec<&str> = w.0.iter().map(|&l| self.generators[l as usize].label.as_str()).collect();
        if short {
            parts.concat()
        } else {
            parts.join("·")
        }
    }

    pub fn unit(self: &Arc<Self>) -> TensorElement {
        TensorElement::from_word(self, Word::empty(), 1)
    }

    pub fn generator(self: &Arc<Self>, label: &str) -> Result<TensorElement, TensorError> {
        let i = self.index_of(label)?;
        Ok(TensorElement::from_word(self, Word(vec![i]), 1))
    }

    pub fn generator_at(self: &Arc<Self>, index: u8) -> TensorElement {
        TensorElement::from_word(self, Word(vec![index]), 1)
    }

    /// Parses a word written as a concatenation of single-character labels.
    pub fn word(&self, spelled: &str) -> Result<Word, TensorError> {
        spelled.chars().map(|c| self.index_of(&c.to_string())).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

/// A homogeneous element of `T(V)`. Terms are kept in word order with
/// non-zero residues only, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct TensorElement {
    alg: Arc<TensorAlgebra>,
    degree: u32,
    terms: BTreeMap<Word, u32>,
}

impl TensorElement {
    pub fn zero(alg: &Arc<TensorAlgebra>, degree: u32) -> Self {
        TensorElement { alg: Arc::clone(alg), degree, terms: BTreeMap::new() }
    }

    pub fn from_word(alg: &Arc<TensorAlgebra>, w: Word, coeff: i64) -> Self {
        let degree = alg.word_degree(&w);
        let mut e = Self::zero(alg, degree);
        let c = alg.p.reduce(coeff);
        if c != 0 {
            e.terms.insert(w, c);
        }
        e
    }

    /// Builds a homogeneous element from `(word, coefficient)` pairs. Words of
    /// different degrees are rejected; an empty input gives the zero element
    /// in degree 0.
    pub fn from_terms(
        alg: &Arc<TensorAlgebra>,
        terms: impl IntoIterator<Item = (Word, i64)>,
    ) -> Result<Self, TensorError> {
        let mut acc: Option<TensorElement> = None;
        for (w, c) in terms {
            let t = Self::from_word(alg, w, c);
            acc = Some(match acc {
                None => t,
                Some(a) => {
                    if a.degree != t.degree {
                        return Err(TensorError::Inhomogeneous { expected: a.degree, found: t.degree });
                    }
                    a.add(&t)?
                }
            });
        }
        Ok(acc.unwrap_or_else(|| Self::zero(alg, 0)))
    }

    pub(crate) fn from_sparse(
        alg: &Arc<TensorAlgebra>,
        degree: u32,
        terms: impl IntoIterator<Item = (Word, u32)>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        TensorElement { alg: Arc::clone(alg), degree, terms }
    }

    pub fn algebra(&self) -> &Arc<TensorAlgebra> {
        &self.alg
    }

    pub fn modulus(&self) -> Prime {
        self.alg.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sorted sparse coordinate vector in the word basis.
    pub fn to_sparse(&self) -> Vec<(Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w.clone(), c)).collect()
    }

    fn check_same_algebra(&self, other: &TensorElement) -> Result<(), TensorError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(TensorError::AlphabetMismatch)
        }
    }

    /// Sum of two homogeneous elements. The zero element is homogeneous of
    /// every degree.
    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.axpy(1, other)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.axpy(self.alg.p.neg(1), other)
    }

    fn axpy(&self, c: u32, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_same_algebra(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        let p = self.alg.p;
        let degree = if self.is_zero() {
            other.degree
        } else if self.degree != other.degree {
            return Err(TensorError::Inhomogeneous { expected: self.degree, found: other.degree });
        } else {
            self.degree
        };
        let mut terms = self.terms.clone();
        for (w, &v) in &other.terms {
            let slot = terms.entry(w.clone()).or_insert(0);
            *slot = p.add(*slot, p.mul(c, v));
            if *slot == 0 {
                terms.remove(w);
            }
        }
        Ok(TensorElement { alg: Arc::clone(&self.alg), degree, terms })
    }

    pub fn scale(&self, c: i64) -> TensorElement {
        let p = self.alg.p;
        let c = p.reduce(c);
        let terms = self
            .terms
            .iter()
            .filter_map(|(w, &v)| {
                let r = p.mul(c, v);
                (r != 0).then(|| (w.clone(), r))
            })
            .collect();
        TensorElement { alg: Arc::clone(&self.alg), degree: self.degree, terms }
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(-1)
    }

    /// Concatenation product.
    pub fn product(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_same_algebra(other)?;
        let p = self.alg.p;
        let mut terms: BTreeMap<Word, u32> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let slot = terms.entry(a.concat(b)).or_insert(0);
                *slot = p.add(*slot, p.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(TensorElement { alg: Arc::clone(&self.alg), degree: self.degree + other.degree, terms })
    }

    /// Product of a list of elements, the unit for an empty list.
    pub fn product_all<'a>(
        alg: &Arc<TensorAlgebra>,
        factors: impl IntoIterator<Item = &'a TensorElement>,
    ) -> Result<TensorElement, TensorError> {
        factors.into_iter().try_fold(alg.unit(), |acc, f| acc.product(f))
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl Eq for TensorElement {}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, &c)| {
                let word = self.alg.format_word(w);
                if c == 1 {
                    word
                } else {
                    format!("{c}{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement(deg {}, mod {}: {})", self.degree, self.alg.p, self)
    }
}
