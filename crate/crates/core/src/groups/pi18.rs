use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::{exactness_check, extension_candidates, FinAbPGroup, GroupError, Ledger, OrderInfo};
use crate::report::{Check, Status};

/// The ledger shipped with the crate.
pub const SHIPPED_PI18_LEDGER: &str = include_str!("../../data/pi18.toml");

const X2_GROUP: &str = "π18(X2)";
const Z_GROUP: &str = "π18(Z)";
const X3_GROUP: &str = "π18(X3)";
const X_GROUP: &str = "π18(X)";
const TARGET_GROUP: &str = "π18(Σ³CP²)";
const BASE_GROUP: &str = "π18(S7)";
const X3_SEQUENCE: &str = "π18(X3) sequence";
const TARGET_SEQUENCE: &str = "π18(Σ³CP²) sequence";
const MAX_ORDER: u64 = 1 << 24;

const CITE_X2: &str = "order bookkeeping in π18 of the 2-cell skeleton";
const CITE_X3: &str = "exact sequence of the pinch X3 → S17";
const CITE_TARGET: &str = "exact sequence of the pinch Σ³CP² → S7 and the extension problem";

/// Outcome of replaying the three steps of the π18(Σ³CP²) computation.
#[derive(Clone, Debug, Serialize)]
pub struct Pi18Report {
    pub check: Check,
    /// Summand orders of π18(X2), in generator order.
    pub x2_orders: Option<Vec<u64>>,
    /// Summand orders of π18(X3), in generator order.
    pub x3_orders: Option<Vec<u64>>,
    /// Summand orders of π18(Σ³CP²), in generator order.
    pub target_orders: Option<Vec<u64>>,
    /// `log_2` of the order of π18(Σ³CP²).
    pub target_log_order: Option<u32>,
}

impl Pi18Report {
    pub fn status(&self) -> Status {
        self.check.status
    }
}

pub fn pi18_report(path: impl AsRef<Path>) -> Result<Pi18Report, GroupError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| GroupError::Parse(format!("{}: {e}", path.as_ref().display())))?;
    pi18_report_from_str(&text)
}

/// Replays the computation from a ledger:
///
/// 1. π18(X2): every generator order is consistent with the relations, and
///    the coextension's order is forced by its `8·c` relation.
/// 2. π18(X3): exactness along the pinch X3 → S17, with π18(X3) the
///    quotient of π18(Z) by the image of the boundary.
/// 3. π18(Σ³CP²): exactness along the pinch Σ³CP² → S7 fixes the order,
///    relation-derived generator orders fix the summands, and the result
///    must be among the extension candidates.
pub fn pi18_report_from_str(text: &str) -> Result<Pi18Report, GroupError> {
    let mut ledger = Ledger::parse(text)?;
    for name in [X2_GROUP, Z_GROUP, X3_GROUP, X_GROUP, TARGET_GROUP, BASE_GROUP] {
        if ledger.group_record(name).is_none() {
            return Err(GroupError::Unresolved(name.to_string()));
        }
    }
    for name in [X3_SEQUENCE, TARGET_SEQUENCE] {
        if ledger.exact_record(name).is_none() {
            return Err(GroupError::Unresolved(name.to_string()));
        }
    }

    let (step1, x2_orders) = step_x2(&ledger)?;
    let (step2, x3_orders) = step_x3(&ledger)?;
    if let Some(orders) = &x3_orders {
        fill_x3_orders(&mut ledger, orders);
    }
    let (step3, target_orders, target_log_order) = if x3_orders.is_some() {
        step_target(&ledger)?
    } else {
        let skipped = Check::leaf(
            format!("step (iii): {TARGET_GROUP}"),
            CITE_TARGET,
            Status::Incomplete,
            json!({ "reason": format!("{X3_GROUP} unresolved") }),
        );
        (skipped, None, None)
    };
    let check = Check::group(
        format!("replay of {TARGET_GROUP}"),
        "2-primary homotopy of Σ³CP² in degree 18",
        json!({ "prime": ledger.prime }),
        vec![step1, step2, step3],
    );
    Ok(Pi18Report { check, x2_orders, x3_orders, target_orders, target_log_order })
}

/// Records the summand orders of π18(X3), and of π18(X), which it equals
/// because the next cell of X is 23-dimensional.
fn fill_x3_orders(ledger: &mut Ledger, orders: &[u64]) {
    for rec in ledger.groups.iter_mut().filter(|g| g.name == X3_GROUP || g.name == X_GROUP) {
        rec.orders = Some(orders.to_vec());
    }
}

/// Fills in the group orders that the π18 replay derives (π18(X3) and
/// π18(X)) so that every recorded sequence can be checked on its own.
/// Returns whether they could be derived; ledgers without those groups are
/// left untouched.
pub fn resolve_pi18_groups(ledger: &mut Ledger) -> Result<bool, GroupError> {
    if ledger.group_record(X3_GROUP).is_none() || ledger.exact_record(X3_SEQUENCE).is_none() {
        return Ok(false);
    }
    let (_, orders) = step_x3(ledger)?;
    if let Some(orders) = &orders {
        fill_x3_orders(ledger, orders);
    }
    Ok(orders.is_some())
}

fn order_check(info: &OrderInfo, cite: &str) -> Check {
    Check::leaf(
        format!("order of {}", info.name),
        cite,
        info.status(),
        json!({
            "declared": info.declared,
            "derived": info.derived,
            "lower": info.lower,
            "upper": info.upper,
            "reasons": info.reasons,
            "conflicts": info.conflicts,
        }),
    )
}

fn record_gens(ledger: &Ledger, group: &str) -> Vec<String> {
    ledger.group_record(group).map(|g| g.gens.clone()).unwrap_or_default()
}

fn step_x2(ledger: &Ledger) -> Result<(Check, Option<Vec<u64>>), GroupError> {
    let gens = record_gens(ledger, X2_GROUP);
    let infos: Vec<OrderInfo> = gens.iter().map(|g| ledger.order_info(g)).collect();
    let mut children: Vec<Check> = infos.iter().map(|i| order_check(i, CITE_X2)).collect();
    let forced = infos.iter().any(|i| i.derived.is_some());
    children.push(Check::pass_if(
        "some summand order forced by a relation",
        CITE_X2,
        forced,
        json!({ "derived": infos.iter().filter_map(|i| i.derived.map(|d| (i.name.clone(), d))).collect::<BTreeMap<_, _>>() }),
    ));
    let orders: Option<Vec<u64>> = infos.iter().map(OrderInfo::best).collect();
    let check = Check::group(format!("step (i): {X2_GROUP}"), CITE_X2, json!({ "orders": orders }), children);
    let orders = (check.status == Status::Pass).then_some(orders).flatten();
    Ok((check, orders))
}

fn step_x3(ledger: &Ledger) -> Result<(Check, Option<Vec<u64>>), GroupError> {
    let frag = ledger.fragment(X3_SEQUENCE)?;
    let report = exactness_check(&frag);
    let mut children = vec![report.to_check(CITE_X3)];
    let rec = ledger.exact_record(X3_SEQUENCE).expect("checked by caller");
    let source = ledger.group(&rec.groups[1])?;
    let boundary_paths = match &rec.images[0] {
        super::ImageSpec::Generated { paths } => paths.clone(),
        _ => Vec::new(),
    };
    let elements = source.as_ref().and_then(|g| ledger.generated_elements(&boundary_paths, g));
    let quotient = source.as_ref().zip(elements.as_ref()).map(|(g, elems)| quotient_by_elements(g, elems));
    let derived_order = report.position(X3_GROUP).and_then(|p| p.order);
    let quotient_check = match (&quotient, derived_order) {
        (Some(q), Some(o)) => {
            let qo = q.order()?;
            Check::pass_if(
                format!("{X3_GROUP} is {Z_GROUP} modulo the boundary image"),
                CITE_X3,
                qo == o,
                json!({ "quotient": q.to_string(), "quotient_order": qo, "exactness_order": o }),
            )
        }
        _ => Check::leaf(
            format!("{X3_GROUP} is {Z_GROUP} modulo the boundary image"),
            CITE_X3,
            Status::Incomplete,
            json!({ "reason": "boundary image not expressed in named generators" }),
        ),
    };
    children.push(quotient_check);
    let orders = quotient.as_ref().map(|q| q.orders().to_vec());
    let check = Check::group(format!("step (ii): {X3_GROUP}"), CITE_X3, json!({ "orders": orders }), children);
    let orders = (check.status == Status::Pass).then_some(orders).flatten();
    Ok((check, orders))
}

/// Quotient by elements each lying in a single summand; per summand the
/// element of largest order generates all the others.
fn quotient_by_elements(g: &FinAbPGroup, elems: &[(usize, i64)]) -> FinAbPGroup {
    let mut per_summand: BTreeMap<usize, u64> = BTreeMap::new();
    for &(i, c) in elems {
        let o = g.orders()[i];
        let c = c.unsigned_abs() % o;
        let sub = o / gcd(o, c);
        let best = per_summand.entry(i).or_insert(o);
        // generator of the subgroup of order `sub` is (o/sub)·g_i
        *best = (*best).min(o / sub);
    }
    // quotient summand orders, keeping positions while removing from the end
    let mut out = g.clone();
    for (&i, &c) in per_summand.iter().rev() {
        out = out.quotient_by_multiple(i, c);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The step's report, the summand orders and the log of the group order.
type TargetStep = (Check, Option<Vec<u64>>, Option<u32>);

fn step_target(ledger: &Ledger) -> Result<TargetStep, GroupError> {
    let frag = ledger.fragment(TARGET_SEQUENCE)?;
    let report = exactness_check(&frag);
    let mut children = vec![report.to_check(CITE_TARGET)];
    let total = report.position(TARGET_GROUP).and_then(|p| p.order);

    let gens = record_gens(ledger, TARGET_GROUP);
    let infos: Vec<OrderInfo> = gens.iter().map(|g| ledger.order_info(g)).collect();
    children.extend(infos.iter().map(|i| order_check(i, CITE_TARGET)));
    let orders: Option<Vec<u64>> = infos.iter().map(OrderInfo::best).collect();

    let sub = ledger.group(X_GROUP)?;
    let quot = ledger.group(BASE_GROUP)?;
    let p = ledger.prime();
    let mut log_order = None;
    match (&orders, total, sub, quot) {
        (Some(orders), Some(total), Some(sub), Some(quot)) => {
            let product: u64 = orders.iter().product();
            children.push(Check::pass_if(
                "summand orders multiply to the group order",
                CITE_TARGET,
                product == total,
                json!({ "product": product, "order": total }),
            ));
            let candidate = FinAbPGroup::new(p, orders)?;
            log_order = Some(candidate.log_order());
            let candidates = extension_candidates(&sub, &quot, MAX_ORDER)?;
            let exponent = candidate.exponent();
            let with_exponent: Vec<String> =
                candidates.iter().filter(|c| c.exponent() >= exponent).map(ToString::to_string).collect();
            children.push(Check::pass_if(
                "result is an extension of the fibre group by the base group",
                CITE_TARGET,
                candidates.iter().any(|c| c.is_isomorphic(&candidate)),
                json!({
                    "sub": sub.to_string(),
                    "quotient": quot.to_string(),
                    "result": candidate.to_string(),
                    "candidates": candidates.len(),
                    "candidates_with_exponent": with_exponent,
                }),
            ));
        }
        _ => children.push(Check::leaf(
            "extension problem",
            CITE_TARGET,
            Status::Incomplete,
            json!({ "reason": "group order or summand orders unresolved" }),
        )),
    }
    let check = Check::group(
        format!("step (iii): {TARGET_GROUP}"),
        CITE_TARGET,
        json!({ "orders": orders, "log_order": log_order }),
        children,
    );
    let orders = (check.status == Status::Pass).then_some(orders).flatten();
    let log_order = log_order.filter(|_| orders.is_some());
    Ok((check, orders, log_order))
}
