use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{koszul_action, Permutation, SymmodError, MAX_M};
use crate::gfp::Prime;
use crate::tensor::{TensorAlgebra, TensorElement, Word};

/// Coefficient ring of a group ring element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Mod(Prime),
}

impl Coefficients {
    fn normalize(self, c: i64) -> i64 {
        match self {
            Coefficients::Integers => c,
            Coefficients::Mod(p) => p.reduce(c) as i64,
        }
    }
}

/// An element of `Z[S_m]` or `F_p[S_m]`, stored sparsely.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    m: usize,
    coeffs: Coefficients,
    terms: BTreeMap<Permutation, i64>,
}

impl GroupRingElement {
    pub fn zero(m: usize, coeffs: Coefficients) -> Self {
        GroupRingElement { m, coeffs, terms: BTreeMap::new() }
    }

    pub fn identity(m: usize, coeffs: Coefficients) -> Self {
        Self::from_terms(m, coeffs, [(Permutation::identity(m), 1)]).expect("identity has degree m")
    }

    pub fn from_terms(
        m: usize,
        coeffs: Coefficients,
        terms: impl IntoIterator<Item = (Permutation, i64)>,
    ) -> Result<Self, SymmodError> {
        if !(1..=MAX_M).contains(&m) {
            return Err(SymmodError::OrderOutOfRange(m));
        }
        let mut out = Self::zero(m, coeffs);
        for (perm, c) in terms {
            if perm.degree() != m {
                return Err(SymmodError::LengthMismatch { expected: m, found: perm.degree() });
            }
            out.add_term(perm, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, perm: Permutation, c: i64) {
        match self.terms.entry(perm) {
            Entry::Occupied(mut o) => {
                let v = self.coeffs.normalize(*o.get() + c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                let v = self.coeffs.normalize(c);
                if v != 0 {
                    slot.insert(v);
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, perm: &Permutation) -> i64 {
        self.terms.get(perm).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SymmodError> {
        if self.m != other.m || self.coeffs != other.coeffs {
            return Err(SymmodError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymmodError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, &c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymmodError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.m, self.coeffs);
        for (p, &v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    /// Ring product; `(στ)·w = σ·(τ·w)`.
    pub fn mul(&self, other: &Self) -> Result<Self, SymmodError> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<Permutation, i64> = BTreeMap::new();
        for (s, &a) in &self.terms {
            for (t, &b) in &other.terms {
                let e = acc.entry(s.compose(t)).or_insert(0);
                *e = self.coeffs.normalize(*e + a * b);
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(GroupRingElement { m: self.m, coeffs: self.coeffs, terms: acc })
    }

    /// Image of an integral element in `F_p[S_m]`.
    pub fn reduce_mod(&self, p: Prime) -> Self {
        let mut out = Self::zero(self.m, Coefficients::Mod(p));
        for (perm, &c) in &self.terms {
            out.add_term(perm.clone(), c);
        }
        out
    }

    /// Koszul-signed action on a word of length `m`, with coefficients read
    /// in the algebra's field.
    pub fn act_on_word(&self, alg: &Arc<TensorAlgebra>, w: &Word) -> Result<TensorElement, SymmodError> {
        if let Coefficients::Mod(p) = self.coeffs {
            if p != alg.modulus() {
                return Err(SymmodError::RingMismatch);
            }
        }
        let p = alg.modulus();
        let mut acc: BTreeMap<Word, u32> = BTreeMap::new();
        for (perm, &c) in &self.terms {
            let (moved, sign) = koszul_action(alg, perm, w)?;
            let e = acc.entry(moved).or_insert(0);
            *e = p.add(*e, p.reduce(c * sign as i64));
        }
        Ok(TensorElement::from_sparse(alg, alg.word_degree(w), acc))
    }

    /// Linear extension of [`act_on_word`](Self::act_on_word); every word of
    /// `x` must have length `m`.
    pub fn act_on(&self, x: &TensorElement) -> Result<TensorElement, SymmodError> {
        let alg = x.algebra();
        let mut out = TensorElement::zero(alg, x.degree());
        for (w, c) in x.terms() {
            let image = self.act_on_word(alg, w)?.scale(c as i64);
            out = out.add(&image)?;
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (perm, &c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match self.coeffs {
                Coefficients::Integers => (c < 0, c.unsigned_abs()),
                Coefficients::Mod(_) => (false, c as u64),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{perm}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The integral element `β_m ∈ Z[S_m]` whose action on `x_1⋯x_m` is the
/// left-normed bracket `[[…[x_1, x_2], …], x_m]`.
///
/// Obtained by expanding the bracket on distinct even letters: each word of
/// the expansion is `τ·(x_1⋯x_m)` for exactly one `τ`.
pub fn dynkin_element(m: usize) -> Result<GroupRingElement, SymmodError> {
    if !(2..=MAX_M).contains(&m) {
        return Err(SymmodError::OrderOutOfRange(m));
    }
    let mut words: BTreeMap<Vec<u8>, i64> = BTreeMap::from([(vec![0u8], 1)]);
    for k in 1..m as u8 {
        let mut next = BTreeMap::new();
        for (w, &c) in &words {
            let mut right = w.clone();
            right.push(k);
            *next.entry(right).or_insert(0) += c;
            let mut left = vec![k];
            left.extend_from_slice(w);
            *next.entry(left).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        words = next;
    }
    // Position j of τ·(x_0⋯x_{m-1}) holds x_{τ⁻¹(j)}, so τ⁻¹ is the word itself.
    GroupRingElement::from_terms(
        m,
        Coefficients::Integers,
        words
            .into_iter()
            .map(|(w, c)| (Permutation::from_images(w).expect("bracket words are permutations").inverse(), c)),
    )
}

/// `β_m / m ∈ F_p[S_m]`, defined when `p ∤ m`.
pub fn dynkin_idempotent(m: usize, p: Prime) -> Result<GroupRingElement, SymmodError> {
    if (m as u32).is_multiple_of(p.get()) {
        return Err(SymmodError::PrimeDividesOrder { p: p.get(), m });
    }
    let beta = dynkin_element(m)?.reduce_mod(p);
    Ok(beta.scale(p.inv(p.reduce(m as i64)) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Σ_w c_w w` for the left-normed bracket of distinct letters, computed
    /// directly by string manipulation.
    fn bracket_words(m: usize) -> BTreeMap<String, i64> {
        let letters: Vec<char> = "abcdefgh".chars().take(m).collect();
        let mut acc: BTreeMap<String, i64> = BTreeMap::from([(letters[0].to_string(), 1)]);
        for &l in &letters[1..] {
            let mut next: BTreeMap<String, i64> = BTreeMap::new();
            for (w, c) in &acc {
                *next.entry(format!("{w}{l}")).or_default() += c;
                *next.entry(format!("{l}{w}")).or_default() -= c;
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn beta_two_is_one_minus_swap() {
        let b = dynkin_element(2).unwrap();
        assert_eq!(b.to_string(), "e - (1 2)");
    }

    #[test]
    fn beta_has_2_pow_m_minus_1_terms() {
        for m in 2..=6 {
            assert_eq!(dynkin_element(m).unwrap().num_terms(), 1 << (m - 1));
        }
    }

    #[test]
    fn beta_acts_as_the_bracket_on_even_letters() {
        let p = Prime::new(101).unwrap();
        for m in 2..=5 {
            let labels: Vec<String> = "abcdefgh".chars().take(m).map(String::from).collect();
            let alg = TensorAlgebra::new(p, labels.iter().map(|l| (l.clone(), 2))).unwrap();
            let w = alg.word(&labels.concat()).unwrap();
            let acted = dynkin_element(m).unwrap().act_on_word(&alg, &w).unwrap();
            let expected =
                TensorElement::from_terms(&alg, bracket_words(m).into_iter().map(|(s, c)| (alg.word(&s).unwrap(), c)))
                    .unwrap();
            assert_eq!(acted, expected, "m = {m}");
        }
    }

    #[test]
    fn beta_squared_is_m_beta() {
        for m in 2..=6 {
            let b = dynkin_element(m).unwrap();
            assert_eq!(b.mul(&b).unwrap(), b.scale(m as i64), "m = {m}");
        }
    }

    #[test]
    fn idempotent_exists_iff_p_coprime_to_m() {
        let p5 = Prime::new(5).unwrap();
        for m in 2..=7 {
            match dynkin_idempotent(m, p5) {
                Ok(e) => {
                    assert_ne!(m, 5);
                    assert_eq!(e.mul(&e).unwrap(), e);
                }
                Err(err) => {
                    assert_eq!(m, 5);
                    assert_eq!(err, SymmodError::PrimeDividesOrder { p: 5, m: 5 });
                }
            }
        }
        let p2 = Prime::new(2).unwrap();
        assert!(dynkin_idempotent(4, p2).is_err());
        assert!(dynkin_idempotent(3, p2).is_ok());
    }

    #[test]
    fn order_range_is_enforced() {
        assert_eq!(dynkin_element(1).unwrap_err(), SymmodError::OrderOutOfRange(1));
        assert_eq!(dynkin_element(9).unwrap_err(), SymmodError::OrderOutOfRange(9));
    }

    #[test]
    fn ring_mismatch() {
        let a = GroupRingElement::identity(2, Coefficients::Integers);
        let b = GroupRingElement::identity(3, Coefficients::Integers);
        assert_eq!(a.mul(&b).unwrap_err(), SymmodError::RingMismatch);
    }
}
