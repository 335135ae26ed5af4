use std::fmt;

use super::SymmodError;
use crate::tensor::{TensorAlgebra, Word};

/// Largest `m` for which `S_m` computations are supported (`8! = 40320`).
pub const MAX_M: usize = 8;

/// A permutation of `{0, …, m-1}` stored by images. Acting on a word, the
/// letter in position `i` moves to position `τ(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m as u8).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u8>) -> Result<Self, SymmodError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if (i as usize) >= m || seen[i as usize] {
                return Err(SymmodError::BadPermutation(m, images));
            }
            seen[i as usize] = true;
        }
        if m > MAX_M {
            return Err(SymmodError::OrderOutOfRange(m));
        }
        Ok(Permutation(images))
    }

    /// Transposition of two 0-based positions.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<u8> = (0..m as u8).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t as usize] = i as u8;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| i == t as usize)
    }

    /// Every element of `S_m` in lexicographic order of image vectors.
    pub fn all(m: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i as u8);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
        out
    }

    /// Disjoint cycles (1-based), fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.image(i);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Moves the letter in position `i` to position `τ(i)`. The sign is
/// `(-1)^{Σ |x_i||x_j|}` over the pairs whose relative order is reversed.
pub fn koszul_action(alg: &TensorAlgebra, tau: &Permutation, w: &Word) -> Result<(Word, i32), SymmodError> {
    let m = tau.degree();
    if w.len() != m {
        return Err(SymmodError::LengthMismatch { expected: m, found: w.len() });
    }
    let letters = w.letters();
    let mut out = vec![0u8; m];
    let mut odd = 0u32;
    for i in 0..m {
        out[tau.image(i)] = letters[i];
        let di = alg.letter_degree(letters[i]);
        for (j, &lj) in letters.iter().enumerate().skip(i + 1) {
            if tau.image(i) > tau.image(j) {
                odd += di * alg.letter_degree(lj);
            }
        }
    }
    Ok((Word(out), if odd & 1 == 1 { -1 } else { 1 }))
}
