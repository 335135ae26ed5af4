use std::fmt;

use serde::Serialize;

use super::GroupError;
use crate::gfp::Prime;

/// `⊕ Z/p^{e_i}`, kept in the order the summands were listed, with optional
/// generator names aligned to the summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinAbPGroup {
    p: Prime,
    orders: Vec<u64>,
    names: Vec<Option<String>>,
}

impl FinAbPGroup {
    pub fn trivial(p: Prime) -> Self {
        FinAbPGroup { p, orders: Vec::new(), names: Vec::new() }
    }

    /// Orders must be powers `p^e` with `e ≥ 1`.
    pub fn new(p: Prime, orders: &[u64]) -> Result<Self, GroupError> {
        for &o in orders {
            if exponent_of(p, o).filter(|&e| e >= 1).is_none() {
                return Err(GroupError::NotPrimePower { order: o, p: p.get() });
            }
        }
        Ok(FinAbPGroup { p, orders: orders.to_vec(), names: vec![None; orders.len()] })
    }

    pub fn from_exponents(p: Prime, exponents: &[u32]) -> Result<Self, GroupError> {
        let orders = exponents
            .iter()
            .map(|&e| {
                (p.get() as u64)
                    .checked_pow(e)
                    .ok_or(GroupError::TooLarge { order: (p.get() as u128).pow(e.min(127)), limit: u64::MAX })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(p, &orders)
    }

    /// Attaches generator names; names must be unique and one per summand.
    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Result<Self, GroupError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.orders.len() {
            return Err(GroupError::NameCount(self.to_string(), names.len(), self.orders.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(GroupError::DuplicateName(n.clone()));
            }
        }
        self.names = names.into_iter().map(Some).collect();
        Ok(self)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n.as_deref() == Some(name))
    }

    /// Exponents `e_i` in listed order.
    pub fn exponents(&self) -> Vec<u32> {
        self.orders.iter().map(|&o| exponent_of(self.p, o).expect("validated")).collect()
    }

    /// The isomorphism type: exponents sorted in decreasing order.
    pub fn partition(&self) -> Vec<u32> {
        let mut e = self.exponents();
        e.sort_unstable_by(|a, b| b.cmp(a));
        e
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        let mut acc: u128 = 1;
        for &o in &self.orders {
            acc *= o as u128;
            if acc > u64::MAX as u128 {
                return Err(GroupError::TooLarge { order: acc, limit: u64::MAX });
            }
        }
        Ok(acc as u64)
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> u32 {
        self.exponents().iter().sum()
    }

    /// Largest element order.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.p == other.p && self.partition() == other.partition()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, GroupError> {
        if self.p != other.p {
            return Err(GroupError::PrimeMismatch(self.p.get(), other.p.get()));
        }
        let mut out = self.clone();
        out.orders.extend_from_slice(&other.orders);
        out.names.extend_from_slice(&other.names);
        Ok(out)
    }

    /// Same type with summands in increasing order and no names.
    pub fn canonical(&self) -> Self {
        let mut orders = self.orders.clone();
        orders.sort_unstable();
        FinAbPGroup { p: self.p, names: vec![None; orders.len()], orders }
    }

    /// Quotient by the cyclic subgroup generated by `c·g_i` for the
    /// `i`-th summand generator `g_i`.
    pub fn quotient_by_multiple(&self, summand: usize, c: u64) -> Self {
        let o = self.orders[summand];
        let sub_order = o / gcd(o, c % o);
        let mut out = self.clone();
        let new_order = o / sub_order;
        if new_order == 1 {
            out.orders.remove(summand);
            out.names.remove(summand);
        } else {
            out.orders[summand] = new_order;
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `e` with `p^e = n`, if `n` is a power of `p`.
pub(crate) fn exponent_of(p: Prime, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p.get() as u64;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

impl fmt::Display for FinAbPGroup {
    /// `Z/2⊕Z/16⊕Z/8`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z/{o}")).collect();
        f.write_str(&parts.join("⊕"))
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The Littlewood–Richardson coefficient `c^λ_{μν}`, counted by filling
/// the skew shape `λ/μ` in reverse reading order (rows top to bottom, each
/// row right to left) so that rows weakly increase, columns strictly
/// increase, the content is `ν` and the reading word is a lattice word.
pub fn littlewood_richardson(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let size = |v: &[u32]| v.iter().sum::<u32>();
    if size(lambda) != size(mu) + size(nu) {
        return 0;
    }
    let mu_at = |r: usize| mu.get(r).copied().unwrap_or(0);
    if mu.len() > lambda.len() || (0..mu.len()).any(|r| mu_at(r) > lambda[r]) {
        return 0;
    }
    let cells: Vec<(usize, u32)> =
        (0..lambda.len()).flat_map(|r| (mu_at(r)..lambda[r]).rev().map(move |c| (r, c))).collect();
    let rows = lambda.len();
    let width = lambda.first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut content = vec![0u32; nu.len()];

    fn place(
        idx: usize,
        cells: &[(usize, u32)],
        grid: &mut [Vec<u32>],
        content: &mut [u32],
        nu: &[u32],
        lambda: &[u32],
        mu: &[u32],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let c = c as usize;
        // Reading right to left, so the value must not exceed the cell to the right.
        let max_row = if c + 1 < lambda[r] as usize { grid[r][c + 1] } else { nu.len() as u32 };
        let min_col = if r > 0 && c >= mu.get(r - 1).copied().unwrap_or(0) as usize { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in min_col..=max_row {
            let i = (v - 1) as usize;
            if content[i] == nu[i] || (i > 0 && content[i] + 1 > content[i - 1]) {
                continue;
            }
            content[i] += 1;
            grid[r][c] = v;
            total += place(idx + 1, cells, grid, content, nu, lambda, mu);
            grid[r][c] = 0;
            content[i] -= 1;
        }
        total
    }
    place(0, &cells, &mut grid, &mut content, nu, lambda, mu)
}

/// Every abelian p-group `B` of order `|sub|·|quot|` containing a subgroup
/// isomorphic to `sub` with quotient isomorphic to `quot`.
///
/// Such a `B` of type `λ` exists exactly when the Hall polynomial
/// `g^λ_{μν}(p)` is nonzero, which happens exactly when the
/// Littlewood–Richardson coefficient `c^λ_{μν}` is positive. Candidates are
/// returned in canonical form, larger cyclic summands first in the
/// enumeration order.
pub fn extension_candidates(
    sub: &FinAbPGroup,
    quot: &FinAbPGroup,
    max_order: u64,
) -> Result<Vec<FinAbPGroup>, GroupError> {
    if sub.p != quot.p {
        return Err(GroupError::PrimeMismatch(sub.p.get(), quot.p.get()));
    }
    let total = sub.order()? as u128 * quot.order()? as u128;
    if total > max_order as u128 {
        return Err(GroupError::TooLarge { order: total, limit: max_order });
    }
    let mu = sub.partition();
    let nu = quot.partition();
    partitions(sub.log_order() + quot.log_order())
        .into_iter()
        .filter(|lambda| littlewood_richardson(lambda, &mu, &nu) > 0)
        .map(|lambda| {
            let mut e = lambda;
            e.reverse();
            FinAbPGroup::from_exponents(sub.p, &e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> FinAbPGroup {
        FinAbPGroup::new(Prime::new(2).unwrap(), orders).unwrap()
    }

    #[test]
    fn validation_and_display() {
        assert!(FinAbPGroup::new(Prime::new(2).unwrap(), &[6]).is_err());
        assert!(FinAbPGroup::new(Prime::new(2).unwrap(), &[1]).is_err());
        assert_eq!(g(&[2, 16, 8]).to_string(), "Z/2⊕Z/16⊕Z/8");
        assert_eq!(FinAbPGroup::trivial(Prime::new(2).unwrap()).to_string(), "0");
        assert_eq!(g(&[2, 16, 8]).order().unwrap(), 256);
        assert_eq!(g(&[2, 16, 8]).partition(), [4, 3, 1]);
        assert!(g(&[2, 4]).with_names(["a", "a"]).is_err());
    }

    #[test]
    fn quotients_by_summand_multiples() {
        assert_eq!(g(&[2, 16, 8]).quotient_by_multiple(2, 4).orders(), [2, 16, 4]);
        assert_eq!(g(&[2, 16, 8]).quotient_by_multiple(0, 1).orders(), [16, 8]);
        assert_eq!(g(&[8]).quotient_by_multiple(0, 8).orders(), [8]);
        assert_eq!(g(&[8]).quotient_by_multiple(0, 6).orders(), [2]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn lr_small_values() {
        assert_eq!(littlewood_richardson(&[2, 1], &[1], &[1, 1]), 1);
        assert_eq!(littlewood_richardson(&[2, 1], &[1], &[2]), 1);
        assert_eq!(littlewood_richardson(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
        assert_eq!(littlewood_richardson(&[1, 1, 1], &[1], &[2]), 0);
    }

    #[test]
    fn examples() {
        let s = |v: Vec<FinAbPGroup>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(s(extension_candidates(&g(&[2]), &g(&[4]), 1 << 20).unwrap()), ["Z/8", "Z/2⊕Z/4"]);
        let trivial = FinAbPGroup::trivial(Prime::new(2).unwrap());
        assert_eq!(s(extension_candidates(&g(&[2]), &trivial, 1 << 20).unwrap()), ["Z/2"]);
        assert_eq!(s(extension_candidates(&g(&[16]), &g(&[2]), 1 << 20).unwrap()), ["Z/32", "Z/2⊕Z/16"]);
        assert!(extension_candidates(&g(&[16]), &g(&[2]), 16).is_err());
    }
}
