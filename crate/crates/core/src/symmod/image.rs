use std::sync::Arc;

use super::{dynkin_element, Coefficients, GroupRingElement, SymmodError};
use crate::gfp::{GradedVectorSpace, Prime, SparseEchelon};
use crate::tensor::{left_normed_bracket, TensorAlgebra, TensorElement, Word};

/// Row-reduced span of a list of elements.
pub fn span_of(p: Prime, elems: &[TensorElement]) -> SparseEchelon<Word> {
    let mut span = SparseEchelon::new(p);
    for e in elems {
        span.insert(e.to_sparse());
    }
    span
}

/// Whether two lists of elements span the same subspace.
pub fn spans_equal(p: Prime, a: &[TensorElement], b: &[TensorElement]) -> bool {
    let sa = span_of(p, a);
    let sb = span_of(p, b);
    sa.rank() == sb.rank() && b.iter().all(|e| sa.contains(e.to_sparse()))
}

fn words_of_length(alg: &TensorAlgebra, m: usize, degree: u32) -> Vec<Word> {
    alg.words_of_degree(degree).into_iter().filter(|w| w.len() == m).collect()
}

fn basis_elements(alg: &Arc<TensorAlgebra>, degree: u32, span: &SparseEchelon<Word>) -> Vec<TensorElement> {
    span.rows().iter().map(|r| TensorElement::from_sparse(alg, degree, r.iter().cloned())).collect()
}

fn validate_idempotent(e: &GroupRingElement, p: Prime, m: usize) -> Result<(), SymmodError> {
    if e.order() != m {
        return Err(SymmodError::LengthMismatch { expected: m, found: e.order() });
    }
    match e.coefficients() {
        Coefficients::Integers => return Err(SymmodError::NeedsFieldCoefficients),
        Coefficients::Mod(q) if q != p => return Err(SymmodError::RingMismatch),
        Coefficients::Mod(_) => {}
    }
    if (m as u32).is_multiple_of(p.get()) {
        return Err(SymmodError::PrimeDividesOrder { p: p.get(), m });
    }
    if e.mul(e)? != *e {
        return Err(SymmodError::NotIdempotent);
    }
    Ok(())
}

/// A basis of `e·(V^{⊗m})_degree` for an idempotent `e ∈ F_p[S_m]`.
///
/// Refuses `p | m` and non-idempotent `e`.
pub fn idempotent_stable_image(
    e: &GroupRingElement,
    v: &GradedVectorSpace,
    m: usize,
    degree: u32,
) -> Result<Vec<TensorElement>, SymmodError> {
    validate_idempotent(e, v.modulus(), m)?;
    let alg = TensorAlgebra::from_graded(v)?;
    let mut span = SparseEchelon::new(alg.modulus());
    for w in words_of_length(&alg, m, degree) {
        span.insert(e.act_on_word(&alg, &w)?.to_sparse());
    }
    Ok(basis_elements(&alg, degree, &span))
}

/// Ranks of `e^k·(V^{⊗m})_degree` for `k = 1..=iterations`, for any `e`
/// (idempotent or not). For an idempotent the sequence is constant.
pub fn stable_image_by_iteration(
    e: &GroupRingElement,
    v: &GradedVectorSpace,
    m: usize,
    degree: u32,
    iterations: usize,
) -> Result<Vec<usize>, SymmodError> {
    let alg = TensorAlgebra::from_graded(v)?;
    let mut current: Vec<TensorElement> =
        words_of_length(&alg, m, degree).into_iter().map(|w| TensorElement::from_word(&alg, w, 1)).collect();
    let mut ranks = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        current = current.iter().map(|x| e.act_on(x)).collect::<Result<_, _>>()?;
        ranks.push(span_of(alg.modulus(), &current).rank());
    }
    Ok(ranks)
}

/// A basis of the span of left-normed brackets `[[…[v_1, v_2], …], v_m]` of
/// basis elements of `V` in the given total degree.
pub fn lie_component(v: &GradedVectorSpace, m: usize, degree: u32) -> Result<Vec<TensorElement>, SymmodError> {
    let alg = TensorAlgebra::from_graded(v)?;
    let mut span = SparseEchelon::new(alg.modulus());
    for w in words_of_length(&alg, m, degree) {
        let gens: Vec<TensorElement> = w.letters().iter().map(|&l| alg.generator_at(l)).collect();
        let refs: Vec<&TensorElement> = gens.iter().collect();
        span.insert(left_normed_bracket(&refs)?.to_sparse());
    }
    Ok(basis_elements(&alg, degree, &span))
}

/// Words `w` of length `m` and the given degree on which the signed action of
/// `β_m` differs from the graded left-normed bracket of the letters of `w`.
/// Empty when the graded Dynkin–Specht–Wever identity holds.
pub fn dsw_defects(v: &GradedVectorSpace, m: usize, degree: u32) -> Result<Vec<Word>, SymmodError> {
    let alg = TensorAlgebra::from_graded(v)?;
    let beta = dynkin_element(m)?;
    let mut defects = Vec::new();
    for w in words_of_length(&alg, m, degree) {
        let gens: Vec<TensorElement> = w.letters().iter().map(|&l| alg.generator_at(l)).collect();
        let refs: Vec<&TensorElement> = gens.iter().collect();
        if beta.act_on_word(&alg, &w)? != left_normed_bracket(&refs)? {
            defects.push(w);
        }
    }
    Ok(defects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmod::dynkin_idempotent;

    fn space(p: u32, gens: &[(&str, u32)]) -> GradedVectorSpace {
        let mut v = GradedVectorSpace::new(Prime::new(p).unwrap());
        for &(l, d) in gens {
            v.add(d, l).unwrap();
        }
        v
    }

    #[test]
    fn graded_dsw_holds_with_odd_and_even_letters() {
        let v = space(7, &[("a", 1), ("b", 2), ("c", 3)]);
        for m in 2..=4 {
            for d in m as u32..=3 * m as u32 {
                assert!(dsw_defects(&v, m, d).unwrap().is_empty(), "m = {m}, degree {d}");
            }
        }
    }

    #[test]
    fn idempotent_image_equals_lie_component() {
        for (p, m) in [(5u32, 2usize), (5, 3), (7, 3), (7, 4), (2, 3)] {
            let v = space(p, &[("x", 3), ("y", 6)]);
            let e = dynkin_idempotent(m, Prime::new(p).unwrap()).unwrap();
            for d in 0..=6 * m as u32 {
                let img = idempotent_stable_image(&e, &v, m, d).unwrap();
                let lie = lie_component(&v, m, d).unwrap();
                assert!(spans_equal(Prime::new(p).unwrap(), &img, &lie), "p = {p}, m = {m}, degree {d}");
            }
        }
    }

    #[test]
    fn triple_iteration_stabilizes() {
        let v = space(5, &[("x", 2), ("y", 3)]);
        let e = dynkin_idempotent(3, Prime::new(5).unwrap()).unwrap();
        let ranks = stable_image_by_iteration(&e, &v, 3, 7, 3).unwrap();
        assert_eq!(ranks[0], ranks[1]);
        assert_eq!(ranks[1], ranks[2]);
        // β_3 itself is not idempotent, but its image still stabilizes since β² = 3β.
        let beta = dynkin_element(3).unwrap().reduce_mod(Prime::new(5).unwrap());
        assert_eq!(stable_image_by_iteration(&beta, &v, 3, 7, 3).unwrap(), ranks);
    }

    #[test]
    fn refuses_p_dividing_m_and_non_idempotents() {
        let v = space(5, &[("x", 2)]);
        let p = Prime::new(5).unwrap();
        let beta5 = dynkin_element(5).unwrap().reduce_mod(p);
        assert_eq!(
            idempotent_stable_image(&beta5, &v, 5, 10).unwrap_err(),
            SymmodError::PrimeDividesOrder { p: 5, m: 5 }
        );
        let beta3 = dynkin_element(3).unwrap().reduce_mod(p);
        assert_eq!(idempotent_stable_image(&beta3, &v, 3, 6).unwrap_err(), SymmodError::NotIdempotent);
        let integral = dynkin_element(3).unwrap();
        assert_eq!(idempotent_stable_image(&integral, &v, 3, 6).unwrap_err(), SymmodError::NeedsFieldCoefficients);
    }

    #[test]
    fn two_generator_cubic_brackets() {
        // For x even, y odd: [[x,y],y] and [[y,x],x] span the cubic Lie words
        // with two letters of one kind; the mixed degrees each carry one.
        let v = space(5, &[("x", 4), ("y", 5)]);
        assert_eq!(lie_component(&v, 3, 13).unwrap().len(), 1);
        assert_eq!(lie_component(&v, 3, 14).unwrap().len(), 1);
        assert_eq!(lie_component(&v, 3, 12).unwrap().len(), 0);
        assert_eq!(lie_component(&v, 3, 15).unwrap().len(), 0);
    }
}
