use std::collections::{BTreeSet, HashSet};

use hopfcert::gfp::Prime;
use hopfcert::groups::{
    exactness_check, extension_candidates, ledger_compose, partitions, pi18_report_from_str, ComposeResult,
    ExactFragment, FinAbPGroup, Ledger, SHIPPED_PI18_LEDGER,
};
use hopfcert::report::Status;
use proptest::prelude::*;

/// Elements of `Z/p^{e_1} ⊕ ⋯` as mixed-radix tuples, and the group law.
struct Brute {
    orders: Vec<u64>,
    elems: Vec<Vec<u64>>,
}

impl Brute {
    fn new(orders: &[u64]) -> Self {
        let mut elems = vec![vec![]];
        for &o in orders {
            elems = elems.into_iter().flat_map(|e| (0..o).map(move |x| [e.clone(), vec![x]].concat())).collect();
        }
        Brute { orders: orders.to_vec(), elems }
    }

    fn index(&self, e: &[u64]) -> usize {
        e.iter().zip(&self.orders).fold(0, |acc, (&x, &o)| acc * o as usize + x as usize)
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), o)| (x + y) % o).collect()
    }

    /// Every subgroup, as a sorted set of element indices.
    fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let zero = vec![0u64; self.orders.len()];
        let trivial: BTreeSet<usize> = [self.index(&zero)].into();
        let mut seen: HashSet<BTreeSet<usize>> = [trivial.clone()].into();
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in &self.elems {
                if h.contains(&self.index(x)) {
                    continue;
                }
                let mut members: Vec<Vec<u64>> = h.iter().map(|&i| self.elems[i].clone()).collect();
                let mut set = h.clone();
                let mut i = 0;
                let gens = [x.clone()];
                while i < members.len() {
                    for g in &gens {
                        let s = self.add(&members[i], g);
                        if set.insert(self.index(&s)) {
                            members.push(s);
                        }
                    }
                    i += 1;
                }
                if seen.insert(set.clone()) {
                    frontier.push(set);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Least `k ≥ 1` with `k·x ∈ inside`.
    fn order_of(&self, x: &[u64], inside: &BTreeSet<usize>) -> u64 {
        let mut acc = x.to_vec();
        let mut k = 1;
        while !inside.contains(&self.index(&acc)) {
            acc = self.add(&acc, x);
            k += 1;
        }
        k
    }
}

/// Type of an abelian p-group from its element orders: the number of
/// elements killed by `p^j` is `p^{Σ min(λ_i, j)}`.
fn type_from_orders(p: u64, orders: &[u64]) -> Vec<u32> {
    let log = |n: u64| {
        let (mut n, mut e) = (n, 0u32);
        while n > 1 {
            n /= p;
            e += 1;
        }
        e
    };
    let max_e = orders.iter().map(|&o| log(o)).max().unwrap_or(0);
    let omega: Vec<u32> =
        (0..=max_e + 1).map(|j| log(orders.iter().filter(|&&o| log(o) <= j).count() as u64)).collect();
    // number of parts ≥ j is omega[j] - omega[j-1]
    let mut parts = Vec::new();
    for j in (1..=max_e).rev() {
        let at_least = omega[j as usize] - omega[j as usize - 1];
        let at_least_next = if j == max_e { 0 } else { omega[j as usize + 1] - omega[j as usize] };
        for _ in 0..(at_least - at_least_next) {
            parts.push(j);
        }
    }
    parts
}

fn oracle_candidates(p: u32, sub: &[u32], quot: &[u32]) -> BTreeSet<Vec<u32>> {
    let pu = p as u64;
    let total: u32 = sub.iter().sum::<u32>() + quot.iter().sum::<u32>();
    let mut out = BTreeSet::new();
    for lambda in partitions(total) {
        let orders: Vec<u64> = lambda.iter().map(|&e| pu.pow(e)).collect();
        let b = Brute::new(&orders);
        let zero: BTreeSet<usize> = [b.index(&vec![0; orders.len()])].into();
        let found = b.subgroups().into_iter().any(|h| {
            if h.len() as u64 != pu.pow(sub.iter().sum()) {
                return false;
            }
            let h_orders: Vec<u64> = h.iter().map(|&i| b.order_of(&b.elems[i], &zero)).collect();
            if type_from_orders(pu, &h_orders) != sub {
                return false;
            }
            // one order per coset of H
            let mut reps = Vec::new();
            let mut covered = HashSet::new();
            for (i, x) in b.elems.iter().enumerate() {
                if covered.contains(&i) {
                    continue;
                }
                reps.push(b.order_of(x, &h));
                for &j in &h {
                    covered.insert(b.index(&b.add(x, &b.elems[j])));
                }
            }
            type_from_orders(pu, &reps) == quot
        });
        if found {
            out.insert(lambda);
        }
    }
    out
}

fn group(p: u32, exps: &[u32]) -> FinAbPGroup {
    FinAbPGroup::from_exponents(Prime::new(p).unwrap(), exps).unwrap()
}

#[test]
fn extension_candidates_match_subgroup_enumeration() {
    for (p, max_total) in [(2u32, 5u32), (3, 3)] {
        for total_sub in 0..=max_total {
            for total_quot in 0..=(max_total - total_sub) {
                let subs = if total_sub == 0 { vec![vec![]] } else { partitions(total_sub) };
                let quots = if total_quot == 0 { vec![vec![]] } else { partitions(total_quot) };
                for mu in &subs {
                    for nu in &quots {
                        let got: BTreeSet<Vec<u32>> = extension_candidates(&group(p, mu), &group(p, nu), 1 << 20)
                            .unwrap()
                            .iter()
                            .map(FinAbPGroup::partition)
                            .collect();
                        assert_eq!(got, oracle_candidates(p, mu, nu), "p = {p}, sub {mu:?}, quot {nu:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn extension_examples() {
    let p = Prime::new(2).unwrap();
    let names = |v: Vec<FinAbPGroup>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let z = |o: &[u64]| FinAbPGroup::new(p, o).unwrap();
    assert_eq!(names(extension_candidates(&z(&[2]), &z(&[4]), 1 << 10).unwrap()), ["Z/8", "Z/2⊕Z/4"]);
    assert_eq!(names(extension_candidates(&z(&[16]), &z(&[2]), 1 << 10).unwrap()), ["Z/32", "Z/2⊕Z/16"]);
    assert_eq!(names(extension_candidates(&z(&[2]), &FinAbPGroup::trivial(p), 1 << 10).unwrap()), ["Z/2"]);
}

proptest! {
    #[test]
    fn direct_sum_is_multiplicative_and_a_candidate(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in prop::collection::vec(1u32..4, 0..3),
        b in prop::collection::vec(1u32..4, 0..3),
    ) {
        let (ga, gb) = (group(p, &a), group(p, &b));
        let sum = ga.direct_sum(&gb).unwrap();
        prop_assert_eq!(sum.order().unwrap(), ga.order().unwrap() * gb.order().unwrap());
        let cands = extension_candidates(&ga, &gb, u64::MAX).unwrap();
        prop_assert!(cands.iter().any(|c| c.is_isomorphic(&sum)));
    }
}

#[test]
fn short_exact_sequence_with_given_images_passes() {
    let f = ExactFragment::new(
        "0 → Z/2 → Z/4 → Z/2 → 0",
        vec![
            ("0".into(), Some(1)),
            ("Z/2".into(), Some(2)),
            ("Z/4".into(), Some(4)),
            ("Z/2'".into(), Some(2)),
            ("0'".into(), Some(1)),
        ],
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![Some(1), Some(2), Some(2), Some(1)],
    )
    .unwrap();
    assert_eq!(exactness_check(&f).status, Status::Pass);
}

fn shipped() -> Ledger {
    Ledger::parse(SHIPPED_PI18_LEDGER).unwrap()
}

fn path(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn compose_boundary_of_eta_squared() {
    let c = ledger_compose(&shipped(), &path(&["i3i4η15", "η16²"])).unwrap();
    assert_eq!(c.result, ComposeResult::Multiple { coefficient: 4, units: vec![], generator: "i3i4ν15".into() });
    assert_eq!(c.degree, Some(18));
    let c = ledger_compose(&shipped(), &path(&["∂(η17²)"])).unwrap();
    assert_eq!(c.result, ComposeResult::Multiple { coefficient: 4, units: vec![], generator: "r4i3i4ν15".into() });
}

#[test]
fn boundaries_into_the_fibre_vanish() {
    for b in ["∂ζ7", "∂(ν̄7ν15)"] {
        assert_eq!(ledger_compose(&shipped(), &path(&[b])).unwrap().result, ComposeResult::Zero, "{b}");
    }
}

#[test]
fn coextension_order_is_forced_to_sixteen() {
    let info = shipped().order_info("coext_{ν5η8²}(2σ10)");
    assert_eq!(info.derived, Some(16));
    assert_eq!(info.declared, Some(16));
    let lif = shipped().order_info("Lif(ν̄7ν15)");
    assert_eq!(lif.derived, None, "orders of π18(X3) are only known after replaying its sequence");
}

#[test]
fn shipped_replay_passes_with_expected_orders() {
    let r = pi18_report_from_str(SHIPPED_PI18_LEDGER).unwrap();
    assert_eq!(r.status(), Status::Pass, "{}", r.check.to_text());
    assert_eq!(r.x2_orders.as_deref(), Some(&[2, 16, 8][..]));
    assert_eq!(r.x3_orders.as_deref(), Some(&[2, 16, 4][..]));
    assert_eq!(r.target_orders.as_deref(), Some(&[2, 4, 8, 32][..]));
    assert_eq!(r.target_log_order, Some(11));
    for step in &r.check.children {
        assert_eq!(step.status, Status::Pass, "{}", step.name);
    }
}

#[test]
fn deleting_the_boundary_relation_leaves_step_two_incomplete() {
    let start = SHIPPED_PI18_LEDGER.find("[[relation]]\npath = [\"∂(η17²)\"]").unwrap();
    let end = start + 1 + SHIPPED_PI18_LEDGER[start + 1..].find("[[").unwrap();
    let text = format!("{}{}", &SHIPPED_PI18_LEDGER[..start], &SHIPPED_PI18_LEDGER[end..]);
    let r = pi18_report_from_str(&text).unwrap();
    assert_eq!(r.check.children[0].status, Status::Pass);
    assert_eq!(r.check.children[1].status, Status::Incomplete, "{}", r.check.to_text());
    assert_eq!(r.status(), Status::Incomplete);
    assert_eq!(r.x3_orders, None);
}

#[test]
fn coextension_of_order_eight_fails_step_one() {
    let text = SHIPPED_PI18_LEDGER
        .replace("orders = [2, 16, 8]\ngens = [\"i2.5ν5σ8ν15\"", "orders = [2, 8, 8]\ngens = [\"i2.5ν5σ8ν15\"");
    assert_ne!(text, SHIPPED_PI18_LEDGER);
    let r = pi18_report_from_str(&text).unwrap();
    assert_eq!(r.check.children[0].status, Status::Fail);
    assert_eq!(r.status(), Status::Fail);
}

#[test]
fn dangling_names_are_rejected() {
    let text = SHIPPED_PI18_LEDGER.replace("target = \"ν5⁴\"", "target = \"ν5⁵\"");
    assert!(pi18_report_from_str(&text).is_err());
}

proptest! {
    #[test]
    fn composites_keep_their_source_and_target(seed in 0usize..10_000, len in 1usize..5) {
        let l = shipped();
        let mut chain = vec![l.generators[seed % l.generators.len()].clone()];
        for step in 1..len {
            let target = chain[0].target.clone();
            let outer: Vec<_> = l.generators.iter().filter(|g| g.source == target).collect();
            if outer.is_empty() {
                break;
            }
            chain.insert(0, outer[(seed / step) % outer.len()].clone());
        }
        let names: Vec<String> = chain.iter().map(|g| g.name.clone()).collect();
        let c = ledger_compose(&l, &names).unwrap();
        let source = &chain.last().unwrap().source;
        let target = &chain[0].target;
        prop_assert_eq!(c.chain.first().unwrap(), source);
        prop_assert_eq!(c.chain.last().unwrap(), target);
        if let ComposeResult::Multiple { generator, .. } = &c.result {
            let g = l.generator(generator).unwrap();
            prop_assert_eq!(&g.source, source);
            prop_assert_eq!(&g.target, target);
        }
    }
}
