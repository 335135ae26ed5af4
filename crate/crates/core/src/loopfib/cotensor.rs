use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::LoopfibError;
use crate::exec::Exec;
use crate::gfp::{ps_free_tensor, MatrixFp, PoincareSeries, Prime, SparseEchelon, SparseVec};
use crate::tensor::{ad_power, TensorAlgebra, TensorElement, Word};

/// Largest number of words allowed in a single degree before the
/// computation is refused.
pub const DEFAULT_WORD_BUDGET: u64 = 5_000_000;

/// The fibre of the pinch map `S^m ∪ e^r → S^r`: its loop homology is the
/// cotensor product `T(u, v) □_{T(ι)} F_p` with `|u| = m-1`, `|v| = |ι| = r-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LoopFibreProblem {
    pub m: u32,
    pub r: u32,
    pub p: Prime,
    pub cutoff: usize,
}

impl LoopFibreProblem {
    pub fn new(m: u32, r: u32, p: u32, cutoff: usize) -> Result<Self, LoopfibError> {
        if m < 2 || m >= r {
            return Err(LoopfibError::InvalidInput(format!("need 2 <= m < r, got m = {m}, r = {r}")));
        }
        Ok(LoopFibreProblem { m, r, p: Prime::new(p)?, cutoff })
    }

    pub fn u_degree(&self) -> u32 {
        self.m - 1
    }

    pub fn v_degree(&self) -> u32 {
        self.r - 1
    }
}

/// Per-degree dimensions of the free algebra on `(m-1) + i(r-1)`, `i ≥ 0`.
pub fn expected_fiber_series(prob: &LoopFibreProblem) -> Result<PoincareSeries, LoopfibError> {
    let (u, v) = (prob.u_degree() as usize, prob.v_degree() as usize);
    let gens: Vec<u32> = (0..).map(|i| (u + i * v) as u32).take_while(|&d| d as usize <= prob.cutoff).collect();
    Ok(ps_free_tensor(&gens, prob.cutoff)?)
}

/// Result of multiplying cotensor basis elements pairwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub max_degree: usize,
    pub pairs_checked: usize,
    /// `(left degree, right degree)` of products that left the subspace.
    pub failures: Vec<(usize, usize)>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `ad^i(v)(u)` is cotensor-invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipRow {
    pub i: usize,
    pub degree: u32,
    pub element: String,
    pub invariant: bool,
}

/// The cotensor computation for one problem.
#[derive(Clone, Debug)]
pub struct CotensorFibre {
    prob: LoopFibreProblem,
    alg: Arc<TensorAlgebra>,
    word_budget: u64,
}

const U: u8 = 0;
const V: u8 = 1;

impl CotensorFibre {
    pub fn new(prob: LoopFibreProblem) -> Result<Self, LoopfibError> {
        let alg = TensorAlgebra::new(prob.p, [("u", prob.u_degree()), ("v", prob.v_degree())])?;
        Ok(CotensorFibre { prob, alg, word_budget: DEFAULT_WORD_BUDGET })
    }

    pub fn with_word_budget(mut self, budget: u64) -> Self {
        self.word_budget = budget;
        self
    }

    pub fn problem(&self) -> &LoopFibreProblem {
        &self.prob
    }

    /// `T(u, v)`, with generators labelled `u` and `v`.
    pub fn algebra(&self) -> &Arc<TensorAlgebra> {
        &self.alg
    }

    /// Number of words in `T(u, v)_d`, counted without enumerating them.
    fn word_count(&self, d: usize) -> u64 {
        let (u, v) = (self.prob.u_degree() as usize, self.prob.v_degree() as usize);
        let mut t = vec![0u64; d + 1];
        t[0] = 1;
        for e in 1..=d {
            let a = if e >= u { t[e - u] } else { 0 };
            let b = if e >= v { t[e - v] } else { 0 };
            t[e] = a.saturating_add(b);
        }
        t[d]
    }

    fn check_budget(&self) -> Result<(), LoopfibError> {
        for d in 0..=self.prob.cutoff {
            let words = self.word_count(d);
            if words > self.word_budget {
                return Err(LoopfibError::MemoryBudget { degree: d, words, budget: self.word_budget });
            }
        }
        Ok(())
    }

    /// `ρ(w) - w⊗1` for a word `w`, written as `Σ_j c_j · l_j` where each
    /// `l_j ⊗ ι^{#v removed}` is a term: the right tensor factor is
    /// determined by the degree of `l`, so `l` alone keys the term.
    ///
    /// Only coproduct terms whose right factor is a power of `v` survive
    /// `π`; these come from choosing a non-empty set of `v`-positions to
    /// move right, with the Koszul sign of the letters they pass.
    fn defect_of_word(&self, w: &Word) -> SparseVec<Word> {
        let p = self.prob.p;
        let letters = w.letters();
        let v_positions: Vec<usize> = (0..letters.len()).filter(|&i| letters[i] == V).collect();
        let du = self.prob.u_degree();
        let dv = self.prob.v_degree();
        let deg = |l: u8| if l == U { du } else { dv };
        let mut acc: BTreeMap<Word, u32> = BTreeMap::new();
        for mask in 1u64..(1u64 << v_positions.len()) {
            let mut chosen = vec![false; letters.len()];
            for (b, &pos) in v_positions.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    chosen[pos] = true;
                }
            }
            // Each unchosen letter passes every chosen letter to its left.
            let mut odd = 0u32;
            let mut chosen_degree_so_far = 0u32;
            let mut left = Word::empty();
            for (i, &l) in letters.iter().enumerate() {
                if chosen[i] {
                    chosen_degree_so_far += deg(l);
                } else {
                    odd += chosen_degree_so_far * deg(l);
                    left.push(l);
                }
            }
            let e = acc.entry(left).or_insert(0);
            *e = p.add(*e, p.sign(odd & 1 == 1));
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// `ρ(a) - a⊗1` in the same encoding as [`defect_of_word`]; zero exactly
    /// when `a` is cotensor-invariant.
    pub fn defect(&self, a: &TensorElement) -> SparseVec<Word> {
        let p = self.prob.p;
        let mut acc: BTreeMap<Word, u32> = BTreeMap::new();
        for (w, c) in a.terms() {
            for (l, x) in self.defect_of_word(w) {
                let e = acc.entry(l).or_insert(0);
                *e = p.add(*e, p.mul(c, x));
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    pub fn is_invariant(&self, a: &TensorElement) -> bool {
        self.defect(a).is_empty()
    }

    /// Dimension of the invariant subspace in degree `d`: the number of
    /// words minus the rank of the defect map.
    pub fn dim(&self, d: usize) -> usize {
        let words = self.alg.words_of_degree(d as u32);
        let mut image = SparseEchelon::new(self.prob.p);
        for w in &words {
            image.insert(self.defect_of_word(w));
        }
        words.len() - image.rank()
    }

    /// Dimensions for every degree up to the cutoff.
    pub fn dims(&self, exec: Exec) -> Result<Vec<usize>, LoopfibError> {
        self.check_budget()?;
        Ok(exec.map_range(0..self.prob.cutoff + 1, |d| self.dim(d)))
    }

    /// An explicit basis of the invariants in degree `d` (dense kernel).
    pub fn basis(&self, d: usize) -> Result<Vec<TensorElement>, LoopfibError> {
        let words = self.alg.words_of_degree(d as u32);
        if words.len() as u64 > self.word_budget {
            return Err(LoopfibError::MemoryBudget { degree: d, words: words.len() as u64, budget: self.word_budget });
        }
        let defects: Vec<SparseVec<Word>> = words.iter().map(|w| self.defect_of_word(w)).collect();
        let mut keys: BTreeMap<&Word, usize> = BTreeMap::new();
        for v in &defects {
            for (l, _) in v {
                let next = keys.len();
                keys.entry(l).or_insert(next);
            }
        }
        let mut mat = MatrixFp::zeros(keys.len(), words.len(), self.prob.p);
        for (col, v) in defects.iter().enumerate() {
            for (l, c) in v {
                mat.set(keys[l], col, *c);
            }
        }
        let basis = mat
            .kernel_basis()
            .into_iter()
            .map(|kv| {
                TensorElement::from_terms(
                    &self.alg,
                    words.iter().zip(kv).filter(|(_, c)| *c != 0).map(|(w, c)| (w.clone(), c as i64)),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(basis)
    }

    /// Multiplies basis elements of degrees `a, b` with `a + b ≤ max_degree`
    /// (both positive) and re-tests invariance of each product.
    pub fn closure_check(&self, max_degree: usize) -> Result<ClosureReport, LoopfibError> {
        let bases: Vec<Vec<TensorElement>> = (0..=max_degree).map(|d| self.basis(d)).collect::<Result<_, _>>()?;
        let mut pairs_checked = 0;
        let mut failures = Vec::new();
        for a in 1..=max_degree {
            for b in 1..=max_degree - a {
                for x in &bases[a] {
                    for y in &bases[b] {
                        pairs_checked += 1;
                        if !self.is_invariant(&x.product(y)?) && !failures.contains(&(a, b)) {
                            failures.push((a, b));
                        }
                    }
                }
            }
        }
        Ok(ClosureReport { max_degree, pairs_checked, failures })
    }

    /// Invariance of `ad^i(v)(u)` for `i = 0..=max_i`.
    pub fn ad_membership(&self, max_i: usize) -> Result<Vec<MembershipRow>, LoopfibError> {
        let u = self.alg.generator_at(U);
        let v = self.alg.generator_at(V);
        (0..=max_i)
            .map(|i| {
                let x = ad_power(&u, &v, i)?;
                Ok(MembershipRow {
                    i,
                    degree: self.prob.u_degree() + i as u32 * self.prob.v_degree(),
                    element: format!("ad^{i}(v)(u)"),
                    invariant: self.is_invariant(&x),
                })
            })
            .collect()
    }
}

/// Per-degree dimensions of the cotensor product up to the problem's cutoff.
pub fn cotensor_fiber_homology(prob: &LoopFibreProblem) -> Result<Vec<usize>, LoopfibError> {
    cotensor_fiber_homology_with(prob, Exec::default())
}

pub fn cotensor_fiber_homology_with(prob: &LoopFibreProblem, exec: Exec) -> Result<Vec<usize>, LoopfibError> {
    CotensorFibre::new(*prob)?.dims(exec)
}
