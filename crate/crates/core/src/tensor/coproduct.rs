use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{TensorAlgebra, TensorElement, TensorError, Word};
use crate::gfp::Fp;

/// A homogeneous element of `T(V)^{⊗k}`, used for coproducts and their
/// iterates.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiTensor {
    alg: Arc<TensorAlgebra>,
    arity: usize,
    terms: BTreeMap<Vec<Word>, u32>,
}

impl MultiTensor {
    pub fn zero(alg: &Arc<TensorAlgebra>, arity: usize) -> Self {
        MultiTensor { alg: Arc::clone(alg), arity, terms: BTreeMap::new() }
    }

    pub fn from_element(a: &TensorElement) -> Self {
        let terms = a.terms().map(|(w, c)| (vec![w.clone()], c)).collect();
        MultiTensor { alg: Arc::clone(a.algebra()), arity: 1, terms }
    }

    /// `a_1 ⊗ a_2 ⊗ … ⊗ a_k`.
    pub fn tensor(parts: &[&TensorElement]) -> Result<Self, TensorError> {
        let first = parts.first().expect("tensor of an empty list");
        let alg = Arc::clone(first.algebra());
        let p = alg.modulus();
        let mut terms: BTreeMap<Vec<Word>, u32> = BTreeMap::new();
        terms.insert(Vec::new(), 1);
        for part in parts {
            if part.algebra() != &alg {
                return Err(TensorError::AlphabetMismatch);
            }
            let mut next = BTreeMap::new();
            for (ws, c) in &terms {
                for (w, d) in part.terms() {
                    let mut key = ws.clone();
                    key.push(w.clone());
                    next.insert(key, p.mul(*c, d));
                }
            }
            terms = next;
        }
        Ok(MultiTensor { alg, arity: parts.len(), terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word], u32)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    fn add_term(&mut self, key: Vec<Word>, c: u32) {
        let p = self.alg.modulus();
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiTensor) -> Result<MultiTensor, TensorError> {
        if self.alg != other.alg || self.arity != other.arity {
            return Err(TensorError::AlphabetMismatch);
        }
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiTensor) -> Result<MultiTensor, TensorError> {
        let p = self.alg.modulus();
        let mut neg = other.clone();
        for c in neg.terms.values_mut() {
            *c = p.neg(*c);
        }
        self.add(&neg)
    }

    /// Factorwise product with the Koszul sign
    /// `(a_1⊗…⊗a_k)(b_1⊗…⊗b_k) = (-1)^{Σ_{i>j}|a_i||b_j|} a_1b_1⊗…⊗a_kb_k`.
    pub fn mul(&self, other: &MultiTensor) -> Result<MultiTensor, TensorError> {
        if self.alg != other.alg || self.arity != other.arity {
            return Err(TensorError::AlphabetMismatch);
        }
        let p = self.alg.modulus();
        let mut out = MultiTensor::zero(&self.alg, self.arity);
        for (a, &ca) in &self.terms {
            let a_par: Vec<u32> = a.iter().map(|w| self.alg.word_degree(w) & 1).collect();
            for (b, &cb) in &other.terms {
                let mut odd = 0u32;
                for (j, wb) in b.iter().enumerate() {
                    let bj = self.alg.word_degree(wb) & 1;
                    if bj == 1 {
                        odd += a_par[j + 1..].iter().sum::<u32>();
                    }
                }
                let key: Vec<Word> = a.iter().zip(b).map(|(x, y)| x.concat(y)).collect();
                let c = p.mul(p.mul(ca, cb), p.sign(odd & 1 == 1));
                out.add_term(key, c);
            }
        }
        Ok(out)
    }

    /// Applies the coproduct to tensor factor `i`, raising the arity by one.
    pub fn apply_coproduct_at(&self, i: usize) -> MultiTensor {
        assert!(i < self.arity);
        let p = self.alg.modulus();
        let mut out = MultiTensor::zero(&self.alg, self.arity + 1);
        for (key, &c) in &self.terms {
            for (l, r, s) in word_coproduct(&self.alg, &key[i]) {
                let mut k = Vec::with_capacity(self.arity + 1);
                k.extend_from_slice(&key[..i]);
                k.push(l);
                k.push(r);
                k.extend_from_slice(&key[i + 1..]);
                out.add_term(k, p.mul(c, s));
            }
        }
        out
    }

    /// Applies a degree-preserving linear map, given on words, to factor `i`.
    pub fn map_factor(&self, i: usize, f: impl Fn(&Word) -> Vec<(Word, u32)>) -> MultiTensor {
        let p = self.alg.modulus();
        let mut out = MultiTensor::zero(&self.alg, self.arity);
        for (key, &c) in &self.terms {
            for (w, d) in f(&key[i]) {
                let mut k = key.clone();
                k[i] = w;
                out.add_term(k, p.mul(c, d));
            }
        }
        out
    }

    /// The coproduct terms as `(left, right, coefficient)` triples.
    pub fn pairs(&self) -> Vec<(TensorElement, TensorElement, Fp)> {
        assert_eq!(self.arity, 2);
        let p = self.alg.modulus();
        self.terms
            .iter()
            .map(|(k, &c)| {
                (
                    TensorElement::from_word(&self.alg, k[0].clone(), 1),
                    TensorElement::from_word(&self.alg, k[1].clone(), 1),
                    Fp::new(c as i64, p),
                )
            })
            .collect()
    }
}

impl fmt::Display for MultiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, &c)| {
                let body: Vec<String> = k.iter().map(|w| self.alg.format_word(w)).collect();
                let body = body.join("⊗");
                if c == 1 {
                    body
                } else {
                    format!("{c}({body})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiTensor[{}]({})", self.arity, self)
    }
}

/// Coproduct of one word, built as the product of `x⊗1 + 1⊗x` over its
/// letters so that repeated letters collapse early.
fn word_coproduct(alg: &TensorAlgebra, w: &Word) -> Vec<(Word, Word, u32)> {
    let p = alg.modulus();
    let mut acc: BTreeMap<(Word, Word), u32> = BTreeMap::new();
    acc.insert((Word::empty(), Word::empty()), 1);
    for &x in w.letters() {
        let x_odd = alg.letter_degree(x) & 1 == 1;
        let mut next: BTreeMap<(Word, Word), u32> = BTreeMap::new();
        for ((l, r), c) in acc {
            // (l⊗r)(x⊗1) = (-1)^{|r||x|} lx⊗r
            let r_odd = alg.word_degree(&r) & 1 == 1;
            let mut lx = l.clone();
            lx.push(x);
            let s = p.mul(c, p.sign(x_odd && r_odd));
            let slot = next.entry((lx, r.clone())).or_insert(0);
            *slot = p.add(*slot, s);
            // (l⊗r)(1⊗x) = l⊗rx
            let mut rx = r;
            rx.push(x);
            let slot = next.entry((l, rx)).or_insert(0);
            *slot = p.add(*slot, c);
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc.into_iter().map(|((l, r), c)| (l, r, c)).collect()
}

/// `Δ(a)` with every generator primitive.
pub fn coproduct(a: &TensorElement) -> MultiTensor {
    MultiTensor::from_element(a).apply_coproduct_at(0)
}

/// `Δ(a) = a⊗1 + 1⊗a`.
pub fn is_primitive(a: &TensorElement) -> bool {
    let alg = a.algebra();
    let one = alg.unit();
    let expected =
        MultiTensor::tensor(&[a, &one]).and_then(|l| l.add(&MultiTensor::tensor(&[&one, a])?)).expect("same algebra");
    coproduct(a) == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::Prime;

    fn alg(p: u32, gens: &[(&str, u32)]) -> Arc<TensorAlgebra> {
        TensorAlgebra::new(Prime::new(p).unwrap(), gens.iter().map(|&(l, d)| (l, d))).unwrap()
    }

    fn el(a: &Arc<TensorAlgebra>, spelled: &str) -> TensorElement {
        TensorElement::from_word(a, a.word(spelled).unwrap(), 1)
    }

    /// Direct subset expansion: Σ_S ε(S) x_S ⊗ x_{S̄}, with ε(S) the sign of
    /// moving each chosen letter left past the unchosen letters before it.
    fn subset_coproduct(a: &Arc<TensorAlgebra>, w: &Word) -> MultiTensor {
        let p = a.modulus();
        let q = w.len();
        let mut out = MultiTensor::zero(a, 2);
        for mask in 0u32..(1 << q) {
            let mut odd = 0u32;
            let (mut l, mut r) = (Word::empty(), Word::empty());
            for j in 0..q {
                let dj = a.letter_degree(w.0[j]);
                if mask >> j & 1 == 1 {
                    for i in 0..j {
                        if mask >> i & 1 == 0 {
                            odd += a.letter_degree(w.0[i]) * dj;
                        }
                    }
                    l.push(w.0[j]);
                } else {
                    r.push(w.0[j]);
                }
            }
            out.add_term(vec![l, r], p.sign(odd & 1 == 1));
        }
        out
    }

    #[test]
    fn generator_is_primitive() {
        let a = alg(5, &[("x", 4), ("y", 6)]);
        let x = el(&a, "x");
        assert_eq!(format!("{}", coproduct(&x)), "1⊗x + x⊗1");
        assert!(is_primitive(&x));
    }

    #[test]
    fn coproduct_of_xy_even_degrees() {
        let a = alg(5, &[("x", 4), ("y", 6)]);
        let d = coproduct(&el(&a, "xy"));
        assert_eq!(format!("{d}"), "1⊗xy + x⊗y + xy⊗1 + y⊗x");
    }

    #[test]
    fn coproduct_of_square_over_f5() {
        let a = alg(5, &[("x", 4)]);
        let d = coproduct(&el(&a, "xx"));
        assert_eq!(format!("{d}"), "1⊗xx + 2(x⊗x) + xx⊗1");
        assert!(!is_primitive(&el(&a, "xx")));
    }

    #[test]
    fn squares_are_primitive_mod_two() {
        for deg in 1..6 {
            let a = alg(2, &[("x", deg)]);
            assert!(is_primitive(&el(&a, "xx")), "degree {deg}");
        }
    }

    #[test]
    fn odd_square_sign() {
        // x odd: Δ(xx) = xx⊗1 + (1 + (-1)) x⊗x + 1⊗xx
        let a = alg(5, &[("x", 3)]);
        assert_eq!(format!("{}", coproduct(&el(&a, "xx"))), "1⊗xx + xx⊗1");
    }

    #[test]
    fn iterated_product_matches_subset_formula() {
        let a = alg(7, &[("a", 1), ("b", 2), ("c", 3)]);
        for spelled in ["abc", "aab", "cacb", "abcabc", "aaaa", "bcca"] {
            let w = a.word(spelled).unwrap();
            let e = TensorElement::from_word(&a, w.clone(), 1);
            assert_eq!(coproduct(&e), subset_coproduct(&a, &w), "{spelled}");
        }
    }

    #[test]
    fn pairs_expose_terms() {
        let a = alg(5, &[("x", 4), ("y", 6)]);
        let pairs = coproduct(&el(&a, "xy")).pairs();
        assert_eq!(pairs.len(), 4);
        assert!(pairs.iter().all(|(_, _, s)| s.value() == 1));
    }
}
