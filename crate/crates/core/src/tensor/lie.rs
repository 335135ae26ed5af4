use super::{TensorElement, TensorError};

/// Graded commutator `[a,b] = ab - (-1)^{|a||b|} ba`.
pub fn bracket(a: &TensorElement, b: &TensorElement) -> Result<TensorElement, TensorError> {
    let ab = a.product(b)?;
    let ba = b.product(a)?;
    let odd = (a.degree() & 1 == 1) && (b.degree() & 1 == 1);
    if odd {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// `ad^m(y)(x)`: `ad^0(y)(x) = x`, `ad^m(y)(x) = [ad^{m-1}(y)(x), y]`.
pub fn ad_power(x: &TensorElement, y: &TensorElement, m: usize) -> Result<TensorElement, TensorError> {
    (0..m).try_fold(x.clone(), |acc, _| bracket(&acc, y))
}

/// `[[…[e_1, e_2], …], e_k]`; a single element is returned unchanged.
///
/// # Panics
/// On an empty list.
pub fn left_normed_bracket(elems: &[&TensorElement]) -> Result<TensorElement, TensorError> {
    let (first, rest) = elems.split_first().expect("bracket of an empty list");
    rest.iter().try_fold((*first).clone(), |acc, e| bracket(&acc, e))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::gfp::Prime;
    use crate::tensor::{TensorAlgebra, Word};

    fn xy(p: u32, dx: u32, dy: u32) -> (Arc<TensorAlgebra>, TensorElement, TensorElement) {
        let a = TensorAlgebra::new(Prime::new(p).unwrap(), [("x", dx), ("y", dy)]).unwrap();
        let x = a.generator("x").unwrap();
        let y = a.generator("y").unwrap();
        (a, x, y)
    }

    /// Integer expansion of the left-normed bracket of a letter sequence,
    /// with letter degrees for the signs.
    fn integer_bracket(letters: &[(u8, u32)]) -> BTreeMap<Vec<u8>, i64> {
        let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        acc.insert(vec![letters[0].0], 1);
        let mut deg = letters[0].1;
        for &(l, d) in &letters[1..] {
            let sign = if deg * d % 2 == 1 { -1 } else { 1 };
            let mut next = BTreeMap::new();
            for (w, c) in &acc {
                let mut wl = w.clone();
                wl.push(l);
                *next.entry(wl).or_insert(0) += c;
                let mut lw = vec![l];
                lw.extend(w);
                *next.entry(lw).or_insert(0) -= sign * c;
            }
            acc = next;
            deg += d;
        }
        acc
    }

    #[test]
    fn bracket_mod_two_has_no_signs() {
        let (a, x, y) = xy(2, 1, 1);
        let b = bracket(&x, &y).unwrap();
        assert_eq!(b.to_sparse(), vec![(a.word("xy").unwrap(), 1), (a.word("yx").unwrap(), 1)]);
    }

    #[test]
    fn even_self_bracket_vanishes() {
        for p in [2, 3, 5, 7] {
            let (_, x, _) = xy(p, 4, 6);
            assert!(bracket(&x, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_self_bracket_is_twice_square() {
        let (a, x, _) = xy(5, 3, 6);
        let b = bracket(&x, &x).unwrap();
        assert_eq!(b.to_sparse(), vec![(a.word("xx").unwrap(), 2)]);
    }

    #[test]
    fn ad_powers_small() {
        let (_, x, y) = xy(7, 4, 6);
        assert_eq!(ad_power(&x, &y, 0).unwrap(), x);
        assert_eq!(ad_power(&x, &y, 1).unwrap(), bracket(&x, &y).unwrap());
    }

    #[test]
    fn ad_square_matches_integer_expansion() {
        // xyy - 2yxy + yyx over Z; mod 2 only xyy + yyx survive
        let expected = integer_bracket(&[(0, 4), (1, 6), (1, 6)]);
        assert_eq!(expected.get(&vec![1, 0, 1]), Some(&-2));
        for p in [2u32, 5] {
            let (a, x, y) = xy(p, 4, 6);
            let got = ad_power(&x, &y, 2).unwrap();
            assert_eq!(got.degree(), 16);
            let oracle = TensorElement::from_terms(&a, expected.iter().map(|(w, &c)| (Word(w.clone()), c))).unwrap();
            assert_eq!(got, oracle);
        }
        let (_, x, y) = xy(2, 4, 6);
        assert_eq!(format!("{}", ad_power(&x, &y, 2).unwrap()), "xyy + yyx");
    }

    #[test]
    fn left_normed_matches_integer_expansion_with_odd_letters() {
        let a = TensorAlgebra::new(Prime::new(7).unwrap(), [("a", 1), ("b", 3), ("c", 2)]).unwrap();
        let gens: Vec<TensorElement> = (0..3).map(|i| a.generator_at(i)).collect();
        let seq = [0u8, 1, 0, 2];
        let refs: Vec<&TensorElement> = seq.iter().map(|&i| &gens[i as usize]).collect();
        let got = left_normed_bracket(&refs).unwrap();
        let letters: Vec<(u8, u32)> = seq.iter().map(|&i| (i, a.letter_degree(i))).collect();
        let oracle = integer_bracket(&letters);
        let oracle = TensorElement::from_terms(&a, oracle.into_iter().map(|(w, c)| (Word(w), c))).unwrap();
        assert_eq!(got, oracle);
    }
}
