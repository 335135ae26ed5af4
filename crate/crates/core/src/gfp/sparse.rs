use std::collections::HashMap;
use std::hash::Hash;

use super::Prime;

/// Sparse vector: strictly increasing keys with non-zero residues.
pub type SparseVec<K> = Vec<(K, u32)>;

/// Incrementally maintained echelon basis of a subspace spanned by sparse
/// vectors. Each stored row is monic in its largest key and no two rows share
/// a leading key, which is all rank and membership queries need.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K> {
    p: Prime,
    rows: Vec<SparseVec<K>>,
    pivots: HashMap<K, usize>,
}

impl<K: Ord + Clone + Hash> SparseEchelon<K> {
    pub fn new(p: Prime) -> Self {
        SparseEchelon { p, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    /// Reduces `v` against the current rows; the remainder is zero exactly
    /// when `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        while let Some((lead, coeff)) = v.last().cloned() {
            match self.pivots.get(&lead) {
                Some(&i) => v = axpy(self.p, &v, self.p.neg(coeff), &self.rows[i]),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set. Returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((lead, coeff)) = r.last().cloned() else {
            return false;
        };
        let inv = self.p.inv(coeff);
        for (_, c) in r.iter_mut() {
            *c = self.p.mul(*c, inv);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// `a + c·b` for sorted sparse vectors.
pub(crate) fn axpy<K: Ord + Clone>(p: Prime, a: &[(K, u32)], c: u32, b: &[(K, u32)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = p.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0.clone(), v));
            }
            j += 1;
        } else {
            let v = p.add(a[i].1, p.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0.clone(), v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::MatrixFp;
    use proptest::prelude::*;

    fn dense_to_sparse(row: &[i64], p: Prime) -> SparseVec<usize> {
        row.iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                let r = p.reduce(v);
                (r != 0).then_some((i, r))
            })
            .collect()
    }

    #[test]
    fn dependent_vector_is_rejected() {
        let p = Prime::new(5).unwrap();
        let mut e = SparseEchelon::new(p);
        assert!(e.insert(vec![(0, 1), (2, 3)]));
        assert!(e.insert(vec![(1, 2)]));
        assert!(!e.insert(vec![(0, 2), (1, 4), (2, 1)]));
        assert!(e.contains(vec![(1, 1)]));
        assert!(!e.contains(vec![(3, 1)]));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_agrees_with_dense(q in prop::sample::select(vec![2u32, 3, 5]),
                                  rows in prop::collection::vec(prop::collection::vec(0i64..5, 6), 1..8)) {
            let p = Prime::new(q).unwrap();
            let dense = MatrixFp::from_rows(p, &rows).unwrap();
            let mut e = SparseEchelon::new(p);
            for r in &rows {
                e.insert(dense_to_sparse(r, p));
            }
            prop_assert_eq!(e.rank(), dense.rank());
        }
    }
}
