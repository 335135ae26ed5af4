use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{TensorAlgebra, TensorElement, TensorError, Word};
use crate::exec::Exec;
use crate::gfp::{ps_free_tensor, SparseEchelon, SparseVec};

/// Degree-by-degree span of the subalgebra generated by a set of homogeneous
/// elements, truncated at `cutoff`.
///
/// Degree `d` of the subalgebra is spanned by `g · s` for generators `g` and
/// basis vectors `s` of degree `d - |g|`, since every product of generators
/// factors as its first letter times the rest.
#[derive(Clone, Debug)]
pub struct SubalgebraSpan {
    alg: Arc<TensorAlgebra>,
    spans: Vec<SparseEchelon<Word>>,
    /// Spanning products tried in each degree.
    candidates: Vec<usize>,
}

impl SubalgebraSpan {
    pub fn build(
        alg: &Arc<TensorAlgebra>,
        gens: &[TensorElement],
        cutoff: usize,
        exec: Exec,
    ) -> Result<Self, TensorError> {
        for g in gens {
            if g.algebra() != alg {
                return Err(TensorError::AlphabetMismatch);
            }
            if g.degree() == 0 && !g.is_zero() {
                return Err(TensorError::ScalarGenerator);
            }
        }
        let p = alg.modulus();
        let mut spans: Vec<SparseEchelon<Word>> = Vec::with_capacity(cutoff + 1);
        let mut candidates = Vec::with_capacity(cutoff + 1);
        let mut unit = SparseEchelon::new(p);
        unit.insert(vec![(Word::empty(), 1)]);
        spans.push(unit);
        candidates.push(1);
        for d in 1..=cutoff {
            let jobs: Vec<(&TensorElement, &SparseVec<Word>)> = gens
                .iter()
                .filter(|g| !g.is_zero() && g.degree() as usize <= d)
                .flat_map(|g| spans[d - g.degree() as usize].rows().iter().map(move |row| (g, row)))
                .collect();
            candidates.push(jobs.len());
            let products = exec.map(jobs, |(g, row)| left_multiply(g, row, p));
            let mut span = SparseEchelon::new(p);
            for v in products {
                span.insert(v);
            }
            spans.push(span);
        }
        Ok(SubalgebraSpan { alg: Arc::clone(alg), spans, candidates })
    }

    pub fn cutoff(&self) -> usize {
        self.spans.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(SparseEchelon::rank).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.spans.get(d).map_or(0, SparseEchelon::rank)
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    pub fn contains(&self, e: &TensorElement) -> bool {
        let d = e.degree() as usize;
        if e.is_zero() {
            return true;
        }
        match self.spans.get(d) {
            Some(span) => span.contains(e.to_sparse()),
            None => false,
        }
    }

    /// Echelon basis of the degree-`d` part.
    pub fn basis(&self, d: usize) -> Vec<TensorElement> {
        self.spans
            .get(d)
            .map(|s| {
                s.rows().iter().map(|r| TensorElement::from_sparse(&self.alg, d as u32, r.iter().cloned())).collect()
            })
            .unwrap_or_default()
    }
}

fn left_multiply(g: &TensorElement, row: &[(Word, u32)], p: crate::gfp::Prime) -> SparseVec<Word> {
    let mut acc: BTreeMap<Word, u32> = BTreeMap::new();
    for (gw, gc) in g.terms() {
        for (w, c) in row {
            let slot = acc.entry(gw.concat(w)).or_insert(0);
            *slot = p.add(*slot, p.mul(gc, *c));
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Dimensions of the subalgebra generated by `gens`, degrees `0..=cutoff`.
pub fn subalgebra_dims(
    alg: &Arc<TensorAlgebra>,
    gens: &[TensorElement],
    cutoff: usize,
) -> Result<Vec<usize>, TensorError> {
    subalgebra_dims_with(alg, gens, cutoff, Exec::default())
}

pub fn subalgebra_dims_with(
    alg: &Arc<TensorAlgebra>,
    gens: &[TensorElement],
    cutoff: usize,
    exec: Exec,
) -> Result<Vec<usize>, TensorError> {
    Ok(SubalgebraSpan::build(alg, gens, cutoff, exec)?.dims())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeCheckRow {
    pub degree: usize,
    pub ambient_dim: u64,
    pub expected_free_dim: u64,
    pub subalgebra_dim: u64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeCheckReport {
    pub generator_degrees: Vec<u32>,
    pub rows: Vec<FreeCheckRow>,
}

impl FreeCheckReport {
    /// True when the subalgebra is free on the generators through the cutoff.
    pub fn is_free(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    pub fn first_failure(&self) -> Option<&FreeCheckRow> {
        self.rows.iter().find(|r| !r.equal)
    }
}

/// Compares the subalgebra generated by `gens` with the free tensor algebra
/// on generators of the same degrees, degree by degree.
pub fn free_on_check(
    alg: &Arc<TensorAlgebra>,
    gens: &[TensorElement],
    cutoff: usize,
) -> Result<FreeCheckReport, TensorError> {
    free_on_check_with(alg, gens, cutoff, Exec::default())
}

pub fn free_on_check_with(
    alg: &Arc<TensorAlgebra>,
    gens: &[TensorElement],
    cutoff: usize,
    exec: Exec,
) -> Result<FreeCheckReport, TensorError> {
    let span = SubalgebraSpan::build(alg, gens, cutoff, exec)?;
    let generator_degrees: Vec<u32> = gens.iter().map(TensorElement::degree).collect();
    let expected = ps_free_tensor(&generator_degrees, cutoff)?;
    let alphabet: Vec<u32> = alg.generators().iter().map(|g| g.degree).collect();
    let ambient = ps_free_tensor(&alphabet, cutoff)?;
    let rows = (0..=cutoff)
        .map(|d| {
            let sub = span.dim(d) as u64;
            FreeCheckRow {
                degree: d,
                ambient_dim: ambient.coefficient(d),
                expected_free_dim: expected.coefficient(d),
                subalgebra_dim: sub,
                equal: sub == expected.coefficient(d),
            }
        })
        .collect();
    Ok(FreeCheckReport { generator_degrees, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::Prime;
    use crate::tensor::{ad_power, bracket};

    fn xy(p: u32, n: u32, k: u32) -> (Arc<TensorAlgebra>, TensorElement, TensorElement) {
        let a = TensorAlgebra::new(Prime::new(p).unwrap(), [("x", n), ("y", n + k + 1)]).unwrap();
        let x = a.generator("x").unwrap();
        let y = a.generator("y").unwrap();
        (a, x, y)
    }

    #[test]
    fn powers_of_one_generator() {
        let (a, x, _) = xy(5, 4, 1);
        let dims = subalgebra_dims(&a, &[x], 20).unwrap();
        for (d, &dim) in dims.iter().enumerate() {
            assert_eq!(dim, usize::from(d % 4 == 0), "degree {d}");
        }
    }

    #[test]
    fn empty_generating_set() {
        let (a, _, _) = xy(2, 4, 1);
        let dims = subalgebra_dims(&a, &[], 10).unwrap();
        assert_eq!(dims[0], 1);
        assert!(dims[1..].iter().all(|&d| d == 0));
    }

    #[test]
    fn x_and_bracket_generate_freely() {
        let (a, x, y) = xy(2, 4, 1);
        let z = bracket(&x, &y).unwrap();
        let dims = subalgebra_dims(&a, &[x.clone(), z.clone()], 20).unwrap();
        let expected = ps_free_tensor(&[4, 10], 20).unwrap();
        for (d, &dim) in dims.iter().enumerate() {
            assert_eq!(dim as u64, expected.coefficient(d));
        }
        let report = free_on_check(&a, &[x, z], 24).unwrap();
        assert!(report.is_free());
        assert_eq!(report.rows[10].ambient_dim, ps_free_tensor(&[4, 6], 24).unwrap().coefficient(10));
    }

    #[test]
    fn dependent_generators_are_not_free() {
        let (a, x, y) = xy(5, 4, 1);
        let xx = x.product(&x).unwrap();
        let report = free_on_check(&a, &[x.clone(), xx, y], 16).unwrap();
        assert!(!report.is_free());
        assert_eq!(report.first_failure().unwrap().degree, 8);
    }

    #[test]
    fn span_membership() {
        let (a, x, y) = xy(5, 4, 1);
        let ad1 = ad_power(&x, &y, 1).unwrap();
        let span = SubalgebraSpan::build(&a, &[x.clone(), ad1.clone()], 20, Exec::Sequential).unwrap();
        assert!(span.contains(&x.product(&ad1).unwrap()));
        assert!(!span.contains(&y));
        assert!(!span.contains(&x.product(&y).unwrap()));
        assert_eq!(span.basis(8).len(), 1);
    }

    #[test]
    fn execution_strategy_does_not_change_dims() {
        let (a, x, y) = xy(2, 2, 0);
        let gens = [x.clone(), ad_power(&x, &y, 1).unwrap(), ad_power(&x, &y, 2).unwrap()];
        let s = subalgebra_dims_with(&a, &gens, 22, Exec::Sequential).unwrap();
        let p = subalgebra_dims_with(&a, &gens, 22, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }
}
