use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::pgroup::exponent_of;
use super::{ExactFragment, FinAbPGroup, GroupError};
use crate::gfp::Prime;
use crate::report::Status;

/// A relation coefficient: an integer, or a named unit of `Z_(p)` whose
/// value is unknown (only its invertibility matters).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Unit(String),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Int(1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(c) => write!(f, "{c}"),
            Scalar::Unit(u) => f.write_str(u),
        }
    }
}

/// A map `source → target`; when `source` is a sphere `S<d>` it is an
/// element of `π_d(target)`. `factors` lists a composite outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub factors: Vec<String>,
    #[serde(default)]
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub name: String,
    /// Cyclic summand orders; absent when the group is not known.
    #[serde(default)]
    pub orders: Option<Vec<u64>>,
    #[serde(default)]
    pub gens: Vec<String>,
    #[serde(default)]
    pub cite: String,
}

/// `multiple · (path composite) ≡ scalar · target  (mod ⟨mod⟩)`.
/// `target = "0"` means the composite vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    pub path: Vec<String>,
    #[serde(default = "one")]
    pub multiple: u64,
    #[serde(default)]
    pub scalar: Scalar,
    pub target: String,
    #[serde(default, rename = "mod")]
    pub modulo: Vec<String>,
    #[serde(default)]
    pub unit_ambiguous: bool,
    #[serde(default)]
    pub cite: String,
}

fn one() -> u64 {
    1
}

impl RelationRecord {
    /// Usable as a rewrite rule (a plain equation between composites).
    fn is_rewrite(&self) -> bool {
        self.multiple == 1 && self.modulo.is_empty()
    }
}

/// What is known about the image of one map in an exact fragment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawImageSpec")]
pub enum ImageSpec {
    Unknown,
    Injective,
    Surjective,
    Zero,
    Order {
        value: u64,
    },
    /// Generated by the listed composites (each a path of names).
    Generated {
        paths: Vec<Vec<String>>,
    },
}

/// Flat form of [`ImageSpec`] so that stray keys are rejected.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImageSpec {
    kind: String,
    #[serde(default)]
    value: Option<u64>,
    #[serde(default)]
    paths: Option<Vec<Vec<String>>>,
}

impl TryFrom<RawImageSpec> for ImageSpec {
    type Error = String;

    fn try_from(raw: RawImageSpec) -> Result<Self, String> {
        let spec = match (raw.kind.as_str(), raw.value, raw.paths) {
            ("unknown", None, None) => ImageSpec::Unknown,
            ("injective", None, None) => ImageSpec::Injective,
            ("surjective", None, None) => ImageSpec::Surjective,
            ("zero", None, None) => ImageSpec::Zero,
            ("order", Some(value), None) => ImageSpec::Order { value },
            ("generated", None, Some(paths)) => ImageSpec::Generated { paths },
            (kind, _, _) => return Err(format!("image of kind {kind:?} with missing or extra keys")),
        };
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactRecord {
    pub name: String,
    pub groups: Vec<String>,
    pub maps: Vec<String>,
    pub images: Vec<ImageSpec>,
    #[serde(default)]
    pub cite: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactKind {
    Bracket,
    Monomorphism,
}

/// A fact consumed without proof. A `monomorphism` fact naming `map` lets
/// `map ∘ g` inherit the order of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactRecord {
    pub kind: FactKind,
    pub statement: String,
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub cite: String,
}

/// Generators, groups, relations, exact fragments and facts over one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ledger {
    pub prime: u32,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorRecord>,
    #[serde(default, rename = "group")]
    pub groups: Vec<GroupRecord>,
    #[serde(default, rename = "relation")]
    pub relations: Vec<RelationRecord>,
    #[serde(default, rename = "exact")]
    pub exact: Vec<ExactRecord>,
    #[serde(default, rename = "fact")]
    pub facts: Vec<FactRecord>,
}

/// Outcome of composing a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ComposeResult {
    Zero,
    /// `coefficient · units · generator`.
    Multiple {
        coefficient: i64,
        units: Vec<String>,
        generator: String,
    },
    /// No named generator matches; the rewritten chain of factors.
    Symbolic {
        coefficient: i64,
        units: Vec<String>,
        factors: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Composite {
    pub path: Vec<String>,
    /// Spaces from the source of the composite to its target.
    pub chain: Vec<String>,
    /// Sphere dimension of the source, when the source is a sphere.
    pub degree: Option<u32>,
    pub result: ComposeResult,
    pub unit_ambiguous: bool,
    /// Indices of relations applied.
    pub relations_used: Vec<usize>,
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = self.path.join("∘");
        let scaled = |c: i64, units: &[String], body: &str| {
            let mut s = String::new();
            if c != 1 {
                s.push_str(&c.to_string());
            }
            for u in units {
                s.push_str(u);
            }
            if s.is_empty() {
                body.to_string()
            } else {
                format!("{s}({body})")
            }
        };
        let rhs = match &self.result {
            ComposeResult::Zero => "0".to_string(),
            ComposeResult::Multiple { coefficient, units, generator } => scaled(*coefficient, units, generator),
            ComposeResult::Symbolic { coefficient, units, factors } => scaled(*coefficient, units, &factors.join("∘")),
        };
        write!(f, "{lhs} = {rhs}")
    }
}

/// Everything derivable about the order of one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderInfo {
    pub name: String,
    /// From the generator record or a group record listing it.
    pub declared: Option<u64>,
    /// Forced by relations or facts.
    pub derived: Option<u64>,
    pub lower: u64,
    pub upper: Option<u64>,
    pub reasons: Vec<String>,
    pub conflicts: Vec<String>,
}

impl OrderInfo {
    pub fn best(&self) -> Option<u64> {
        self.derived.or(self.declared)
    }

    pub fn status(&self) -> Status {
        if !self.conflicts.is_empty() {
            Status::Fail
        } else if self.best().is_some() {
            Status::Pass
        } else {
            Status::Incomplete
        }
    }
}

const MAX_REWRITES: usize = 64;

fn sphere_dim(space: &str) -> Option<u32> {
    space.strip_prefix('S')?.parse().ok()
}

impl Ledger {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let ledger: Ledger = toml::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
        ledger.validate()?;
        Ok(ledger)
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.prime).expect("validated")
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorRecord> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn group_record(&self, name: &str) -> Option<&GroupRecord> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn exact_record(&self, name: &str) -> Option<&ExactRecord> {
        self.exact.iter().find(|g| g.name == name)
    }

    fn resolve(&self, name: &str) -> Result<&GeneratorRecord, GroupError> {
        self.generator(name).ok_or_else(|| GroupError::Unresolved(name.to_string()))
    }

    fn validate(&self) -> Result<(), GroupError> {
        let p = Prime::new(self.prime)?;
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if g.name == "0" || !seen.insert(g.name.as_str()) {
                return Err(GroupError::DuplicateName(g.name.clone()));
            }
        }
        for g in &self.generators {
            if let Some(o) = g.order {
                check_order(p, o)?;
            }
            self.atoms(&g.name)?;
        }
        let mut group_names = BTreeSet::new();
        for gr in &self.groups {
            if !group_names.insert(gr.name.as_str()) {
                return Err(GroupError::DuplicateName(gr.name.clone()));
            }
            for g in &gr.gens {
                self.resolve(g)?;
            }
            if let Some(orders) = &gr.orders {
                for &o in orders {
                    check_order(p, o)?;
                }
                if !gr.gens.is_empty() && gr.gens.len() != orders.len() {
                    return Err(GroupError::NameCount(gr.name.clone(), gr.gens.len(), orders.len()));
                }
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            if r.path.is_empty() || r.multiple == 0 {
                return Err(GroupError::Malformed(format!("relation {i} needs a path and a nonzero multiple")));
            }
            self.expand_path(&r.path)?;
            for name in std::iter::once(&r.target).chain(&r.modulo) {
                if name != "0" {
                    self.resolve(name)?;
                }
            }
        }
        for e in &self.exact {
            for g in &e.groups {
                if self.group_record(g).is_none() {
                    return Err(GroupError::Unresolved(g.clone()));
                }
            }
            if e.groups.len() < 2 || e.maps.len() + 1 != e.groups.len() || e.images.len() != e.maps.len() {
                return Err(GroupError::Malformed(format!("exact record {:?} has mismatched lengths", e.name)));
            }
            for spec in &e.images {
                if let ImageSpec::Generated { paths } = spec {
                    for path in paths {
                        self.expand_path(path)?;
                    }
                }
            }
        }
        for f in &self.facts {
            if let Some(m) = &f.map {
                self.resolve(m)?;
            }
        }
        Ok(())
    }

    /// Fully expanded factors of a name, outermost first.
    fn atoms(&self, name: &str) -> Result<Vec<String>, GroupError> {
        fn go(l: &Ledger, name: &str, depth: usize, out: &mut Vec<String>) -> Result<(), GroupError> {
            if depth > 32 {
                return Err(GroupError::Malformed(format!("factor cycle through {name:?}")));
            }
            let g = l.resolve(name)?;
            if g.factors.is_empty() {
                out.push(g.name.clone());
            } else {
                for f in &g.factors {
                    go(l, f, depth + 1, out)?;
                }
            }
            Ok(())
        }
        let mut out = Vec::new();
        go(self, name, 0, &mut out)?;
        self.check_composable(name, &out)?;
        let g = self.resolve(name)?;
        let (first, last) = (self.resolve(&out[0])?, self.resolve(&out[out.len() - 1])?);
        if first.target != g.target || last.source != g.source {
            return Err(GroupError::NotComposable(format!(
                "{name}: declared {} → {} but factors give {} → {}",
                g.source, g.target, last.source, first.target
            )));
        }
        Ok(out)
    }

    fn expand_path(&self, path: &[String]) -> Result<Vec<String>, GroupError> {
        let mut out = Vec::new();
        for name in path {
            out.extend(self.atoms(name)?);
        }
        self.check_composable(&path.join("∘"), &out)?;
        Ok(out)
    }

    fn check_composable(&self, what: &str, atoms: &[String]) -> Result<(), GroupError> {
        for pair in atoms.windows(2) {
            let (outer, inner) = (self.resolve(&pair[0])?, self.resolve(&pair[1])?);
            if outer.source != inner.target {
                return Err(GroupError::NotComposable(format!(
                    "{what}: {} lands in {} but {} starts at {}",
                    inner.name, inner.target, outer.name, outer.source
                )));
            }
        }
        Ok(())
    }

    /// The generator whose expansion is exactly `atoms`.
    fn named(&self, atoms: &[String]) -> Option<&GeneratorRecord> {
        if atoms.len() == 1 {
            return self.generator(&atoms[0]);
        }
        self.generators.iter().find(|g| !g.factors.is_empty() && self.atoms(&g.name).ok().as_deref() == Some(atoms))
    }

    fn monomorphisms(&self) -> BTreeSet<&str> {
        self.facts.iter().filter(|f| f.kind == FactKind::Monomorphism).filter_map(|f| f.map.as_deref()).collect()
    }

    /// Order declared for `name` by its generator record or by a group
    /// record listing it; `Err` carries conflicting declarations.
    fn declared_order(&self, name: &str) -> (Option<u64>, Vec<String>) {
        let mut found: Vec<(u64, String)> = Vec::new();
        if let Some(o) = self.generator(name).and_then(|g| g.order) {
            found.push((o, format!("generator {name}")));
        }
        for gr in &self.groups {
            if let (Some(orders), Some(i)) = (&gr.orders, gr.gens.iter().position(|g| g == name)) {
                found.push((orders[i], format!("group {}", gr.name)));
            }
        }
        let conflicts = found
            .windows(2)
            .filter(|w| w[0].0 != w[1].0)
            .map(|w| format!("{} declares {} but {} declares {}", w[0].1, w[0].0, w[1].1, w[1].0))
            .collect();
        (found.first().map(|f| f.0), conflicts)
    }

    fn known_order(&self, name: &str, visiting: &mut BTreeSet<String>) -> Option<u64> {
        if name == "0" {
            return Some(1);
        }
        if visiting.contains(name) {
            return self.declared_order(name).0;
        }
        let info = self.order_info_inner(name, visiting);
        info.derived.or(info.declared)
    }

    /// Declared and derived order of `name`, with the reasoning.
    ///
    /// * `multiple·g = s·t (mod M)` with `ord(s·t)` above the exponent of
    ///   `M` forces `ord(g) = p^{v(multiple)}·ord(s·t)`; otherwise it bounds
    ///   `ord(g)` above.
    /// * `h∘g = s·t` bounds `ord(g)` below by `ord(s·t)`.
    /// * `g = m∘g'` with `m` a recorded monomorphism gives `ord(g) = ord(g')`.
    pub fn order_info(&self, name: &str) -> OrderInfo {
        self.order_info_inner(name, &mut BTreeSet::new())
    }

    fn order_info_inner(&self, name: &str, visiting: &mut BTreeSet<String>) -> OrderInfo {
        visiting.insert(name.to_string());
        let p = self.prime();
        let pu = p.get() as u64;
        let (declared, mut conflicts) = self.declared_order(name);
        let mut derived: Option<u64> = None;
        let mut lower = 1u64;
        let mut upper: Option<u64> = None;
        let mut reasons = Vec::new();
        let scaled_order = |order: u64, s: &Scalar| -> u64 {
            match s {
                Scalar::Unit(_) => order,
                Scalar::Int(0) => 1,
                Scalar::Int(c) => {
                    let c = c.unsigned_abs();
                    let mut o = order;
                    let mut c = c;
                    while o > 1 && c % pu == 0 {
                        o /= pu;
                        c /= pu;
                    }
                    o
                }
            }
        };
        let set_exact =
            |v: u64, why: String, derived: &mut Option<u64>, conflicts: &mut Vec<String>, reasons: &mut Vec<String>| {
                match *derived {
                    Some(d) if d != v => conflicts.push(format!("derived orders {d} and {v} disagree ({why})")),
                    _ => *derived = Some(v),
                }
                reasons.push(why);
            };
        for rel in &self.relations {
            if rel.path.len() == 1 && rel.path[0] == name {
                let pm = p_part(rel.multiple, pu);
                if rel.target == "0" || rel.scalar == Scalar::Int(0) {
                    upper = Some(upper.map_or(pm, |u| u.min(pm)));
                    reasons.push(format!("{}·{name} = 0 bounds the order by {pm}", rel.multiple));
                    continue;
                }
                let Some(ot) = self.known_order(&rel.target, visiting) else { continue };
                let ost = scaled_order(ot, &rel.scalar);
                let mut mod_max = 1u64;
                let mut mod_known = true;
                for m in &rel.modulo {
                    match self.known_order(m, visiting) {
                        Some(o) => mod_max = mod_max.max(o),
                        None => mod_known = false,
                    }
                }
                if !mod_known {
                    continue;
                }
                if ost > mod_max {
                    let v = ost * pm;
                    let why = if rel.modulo.is_empty() {
                        format!(
                            "{}·{name} = {}·{} has order {ost}, so {name} has order {v}",
                            rel.multiple, rel.scalar, rel.target
                        )
                    } else {
                        format!(
                            "{}·{name} ≡ {}·{} (order {ost}) modulo terms of order at most {mod_max}, so {name} has order {v}",
                            rel.multiple, rel.scalar, rel.target
                        )
                    };
                    set_exact(v, why, &mut derived, &mut conflicts, &mut reasons);
                } else {
                    let u = mod_max * pm;
                    upper = Some(upper.map_or(u, |x| x.min(u)));
                    reasons.push(format!("{}·{name} has order at most {mod_max}", rel.multiple));
                }
            } else if rel.path.len() == 2 && rel.path[1] == name && rel.is_rewrite() && rel.target != "0" {
                if let Some(ot) = self.known_order(&rel.target, visiting) {
                    let ost = scaled_order(ot, &rel.scalar);
                    if ost > lower {
                        lower = ost;
                    }
                    reasons.push(format!("{}∘{name} = {}·{} has order {ost}", rel.path[0], rel.scalar, rel.target));
                }
            }
        }
        if let Some(g) = self.generator(name) {
            let monos = self.monomorphisms();
            if g.factors.len() >= 2 && monos.contains(g.factors[0].as_str()) {
                let rest: Vec<String> = g.factors[1..].to_vec();
                let inner = if rest.len() == 1 {
                    Some(rest[0].clone())
                } else {
                    self.expand_path(&rest).ok().and_then(|a| self.named(&a).map(|g| g.name.clone()))
                };
                if let Some(inner) = inner {
                    if let Some(o) = self.known_order(&inner, visiting) {
                        let why = format!("{} is injective here, so {name} has the order {o} of {inner}", g.factors[0]);
                        set_exact(o, why, &mut derived, &mut conflicts, &mut reasons);
                    }
                }
            }
        }
        if derived.is_none() && upper == Some(lower) && lower > 1 {
            derived = Some(lower);
            reasons.push(format!("bounds meet at {lower}"));
        }
        if let Some(d) = derived {
            if d < lower || upper.is_some_and(|u| d > u) {
                conflicts.push(format!("derived order {d} violates bounds [{lower}, {upper:?}]"));
            }
        }
        if let Some(decl) = declared {
            if derived.is_some_and(|d| d != decl) {
                conflicts.push(format!("declared order {decl} but relations force {}", derived.unwrap()));
            }
            if decl < lower || upper.is_some_and(|u| decl > u) {
                conflicts.push(format!("declared order {decl} outside derived bounds [{lower}, {upper:?}]"));
            }
        }
        visiting.remove(name);
        OrderInfo { name: name.to_string(), declared, derived, lower, upper, reasons, conflicts }
    }

    /// The group record as a group with named summands (`None` when its
    /// orders are not recorded).
    pub fn group(&self, name: &str) -> Result<Option<FinAbPGroup>, GroupError> {
        let rec = self.group_record(name).ok_or_else(|| GroupError::Unresolved(name.to_string()))?;
        let Some(orders) = &rec.orders else { return Ok(None) };
        let g = FinAbPGroup::new(self.prime(), orders)?;
        Ok(Some(if rec.gens.is_empty() { g } else { g.with_names(rec.gens.iter().cloned())? }))
    }

    /// Elements `(summand, coefficient)` of `group` produced by composing
    /// each path; `None` when some composite is not a multiple of a named
    /// summand generator. Zero composites are dropped.
    pub fn generated_elements(&self, paths: &[Vec<String>], group: &FinAbPGroup) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        for path in paths {
            match ledger_compose(self, path).ok()?.result {
                ComposeResult::Zero => {}
                ComposeResult::Multiple { coefficient, generator, .. } => {
                    out.push((group.index_of(&generator)?, coefficient));
                }
                ComposeResult::Symbolic { .. } => return None,
            }
        }
        Some(out)
    }

    /// Resolves an exact record to orders.
    pub fn fragment(&self, name: &str) -> Result<ExactFragment, GroupError> {
        let rec = self.exact_record(name).ok_or_else(|| GroupError::Unresolved(name.to_string()))?;
        let groups: Vec<Option<FinAbPGroup>> = rec.groups.iter().map(|g| self.group(g)).collect::<Result<_, _>>()?;
        let orders: Vec<Option<u64>> =
            groups.iter().map(|g| g.as_ref().map(FinAbPGroup::order).transpose()).collect::<Result<_, _>>()?;
        let images = rec
            .images
            .iter()
            .enumerate()
            .map(|(i, spec)| match spec {
                ImageSpec::Unknown => None,
                ImageSpec::Injective => orders[i],
                ImageSpec::Surjective => orders[i + 1],
                ImageSpec::Zero => Some(1),
                ImageSpec::Order { value } => Some(*value),
                ImageSpec::Generated { paths } => {
                    let target = groups[i + 1].as_ref();
                    let elems = match target {
                        Some(t) => self.generated_elements(paths, t),
                        None => paths
                            .iter()
                            .all(|p| matches!(ledger_compose(self, p).map(|c| c.result), Ok(ComposeResult::Zero)))
                            .then(Vec::new),
                    }?;
                    Some(subgroup_order(target, &elems))
                }
            })
            .collect();
        ExactFragment::new(rec.name.clone(), rec.groups.iter().cloned().zip(orders).collect(), rec.maps.clone(), images)
    }
}

/// Order of the subgroup generated by single-summand multiples.
fn subgroup_order(group: Option<&FinAbPGroup>, elems: &[(usize, i64)]) -> u64 {
    let mut per_summand: BTreeMap<usize, u64> = BTreeMap::new();
    for &(i, c) in elems {
        let o = group.expect("nonzero elements come from a known group").orders()[i];
        let c = c.unsigned_abs() % o;
        let ord = o / gcd(o, c);
        let e = per_summand.entry(i).or_insert(1);
        *e = (*e).max(ord);
    }
    per_summand.values().product()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn check_order(p: Prime, o: u64) -> Result<(), GroupError> {
    match exponent_of(p, o) {
        Some(e) if e >= 1 => Ok(()),
        _ => Err(GroupError::NotPrimePower { order: o, p: p.get() }),
    }
}

/// Composes `path` (outermost first), rewriting with the ledger's plain
/// relations until none applies, and names the result when it is a
/// multiple of a recorded generator.
///
/// A coefficient other than a unit is only pulled out of a factor that is
/// applied first (composition on the left is a homomorphism; on the right
/// it need not be), so such relations are applied only at the end of the
/// chain.
pub fn ledger_compose(ledger: &Ledger, path: &[String]) -> Result<Composite, GroupError> {
    let mut atoms = ledger.expand_path(path)?;
    let spaces = |atoms: &[String]| -> Vec<String> {
        let mut chain = Vec::new();
        if let Some(last) = atoms.last().and_then(|a| ledger.generator(a)) {
            chain.push(last.source.clone());
        }
        for a in atoms.iter().rev() {
            if let Some(g) = ledger.generator(a) {
                chain.push(g.target.clone());
            }
        }
        chain
    };
    let chain = spaces(&atoms);
    let degree = chain.first().and_then(|s| sphere_dim(s));
    let rules: Vec<(usize, &RelationRecord, Vec<String>)> = ledger
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_rewrite())
        .filter_map(|(i, r)| ledger.expand_path(&r.path).ok().map(|lhs| (i, r, lhs)))
        .collect();
    let mut coefficient = 1i64;
    let mut units = Vec::new();
    let mut unit_ambiguous = false;
    let mut used = Vec::new();
    let done = |result, used, unit_ambiguous| Composite {
        path: path.to_vec(),
        chain: chain.clone(),
        degree,
        result,
        unit_ambiguous,
        relations_used: used,
    };
    for _ in 0..MAX_REWRITES {
        let hit = rules.iter().find_map(|(i, r, lhs)| {
            let at = (0..=atoms.len().checked_sub(lhs.len())?).find(|&s| atoms[s..s + lhs.len()] == lhs[..])?;
            let suffix = at + lhs.len() == atoms.len();
            let vanishes = r.target == "0" || r.scalar == Scalar::Int(0);
            let unit_like = matches!(r.scalar, Scalar::Unit(_) | Scalar::Int(1) | Scalar::Int(-1));
            (vanishes || unit_like || suffix).then_some((*i, *r, at, lhs.len()))
        });
        let Some((i, rel, at, len)) = hit else { break };
        used.push(i);
        unit_ambiguous |= rel.unit_ambiguous;
        if rel.target == "0" || rel.scalar == Scalar::Int(0) {
            return Ok(done(ComposeResult::Zero, used, unit_ambiguous));
        }
        match &rel.scalar {
            Scalar::Int(c) => coefficient *= c,
            Scalar::Unit(u) => {
                units.push(u.clone());
                unit_ambiguous = true;
            }
        }
        let replacement = ledger.atoms(&rel.target)?;
        atoms.splice(at..at + len, replacement);
    }
    let result = match ledger.named(&atoms) {
        Some(g) => ComposeResult::Multiple { coefficient, units, generator: g.name.clone() },
        None => ComposeResult::Symbolic { coefficient, units, factors: atoms },
    };
    Ok(done(result, used, unit_ambiguous))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
prime = 2

[[generator]]
name = "i"
source = "S15"
target = "Y"

[[generator]]
name = "η15"
source = "S16"
target = "S15"

[[generator]]
name = "η16²"
source = "S18"
target = "S16"

[[generator]]
name = "ν15"
source = "S18"
target = "S15"
order = 8

[[generator]]
name = "iη15"
source = "S16"
target = "Y"
factors = ["i", "η15"]

[[generator]]
name = "iν15"
source = "S18"
target = "Y"
factors = ["i", "ν15"]

[[generator]]
name = "c"
source = "S18"
target = "Y"

[[generator]]
name = "z"
source = "S18"
target = "Y"
order = 2

[[relation]]
path = ["η15", "η16²"]
scalar = 4
target = "ν15"

[[relation]]
path = ["c"]
multiple = 8
target = "z"

[[fact]]
kind = "monomorphism"
statement = "i is injective on π18"
map = "i"
"#;

    fn small() -> Ledger {
        Ledger::parse(SMALL).unwrap()
    }

    #[test]
    fn compose_rewrites_to_a_named_multiple() {
        let l = small();
        let c = ledger_compose(&l, &["iη15".into(), "η16²".into()]).unwrap();
        assert_eq!(c.result, ComposeResult::Multiple { coefficient: 4, units: vec![], generator: "iν15".into() });
        assert_eq!(c.degree, Some(18));
        assert_eq!(c.chain, ["S18", "S16", "S15", "Y"]);
        assert_eq!(c.to_string(), "iη15∘η16² = 4(iν15)");
    }

    #[test]
    fn single_generator_composes_to_itself() {
        let c = ledger_compose(&small(), &["c".into()]).unwrap();
        assert_eq!(c.result, ComposeResult::Multiple { coefficient: 1, units: vec![], generator: "c".into() });
    }

    #[test]
    fn non_composable_path_is_rejected() {
        assert!(matches!(ledger_compose(&small(), &["η16²".into(), "η15".into()]), Err(GroupError::NotComposable(_))));
    }

    #[test]
    fn orders_from_relations_and_monomorphisms() {
        let l = small();
        let c = l.order_info("c");
        assert_eq!(c.derived, Some(16));
        assert_eq!(c.status(), Status::Pass);
        assert_eq!(l.order_info("iν15").derived, Some(8));
        assert_eq!(l.order_info("η15").status(), Status::Incomplete);
    }

    #[test]
    fn declared_order_conflicting_with_relations_fails() {
        let text = SMALL.replace(
            "name = \"c\"\nsource = \"S18\"\ntarget = \"Y\"",
            "name = \"c\"\nsource = \"S18\"\ntarget = \"Y\"\norder = 8",
        );
        let l = Ledger::parse(&text).unwrap();
        assert_eq!(l.order_info("c").status(), Status::Fail);
    }

    #[test]
    fn parser_rejects_unknown_fields_and_names() {
        assert!(matches!(Ledger::parse("prime = 2\ncolour = 1\n"), Err(GroupError::Parse(_))));
        let bad = "prime = 2\n[[generator]]\nname = \"a\"\nsource = \"S1\"\ntarget = \"S1\"\nweight = 3\n";
        assert!(matches!(Ledger::parse(bad), Err(GroupError::Parse(_))));
        let unresolved = "prime = 2\n[[relation]]\npath = [\"nope\"]\ntarget = \"0\"\n";
        assert_eq!(Ledger::parse(unresolved).unwrap_err(), GroupError::Unresolved("nope".into()));
        let bad_image = "prime = 2\n[[group]]\nname = \"A\"\n[[group]]\nname = \"B\"\n[[exact]]\nname = \"e\"\ngroups = [\"A\", \"B\"]\nmaps = [\"f\"]\nimages = [{ kind = \"zero\", extra = 1 }]\n";
        assert!(matches!(Ledger::parse(bad_image), Err(GroupError::Parse(_))));
        assert!(matches!(Ledger::parse("prime = 4\n"), Err(GroupError::Gfp(_))));
    }
}
