use hopfcert::gfp::{ps_free_tensor, GfpError, GradedVectorSpace, Prime};
use hopfcert::groups::{
    exactness_check, pi18_report, pi18_report_from_str, resolve_pi18_groups, GroupError, Ledger, SHIPPED_PI18_LEDGER,
};
use hopfcert::james::{fiber_tower, main_theorem_certificate, relative_james_homology, CertificateInput, JamesError};
use hopfcert::loopfib::{
    expected_fiber_series, fiber_generator_ladder, serre_factorization_check, transgression_table, CotensorFibre,
    LadderStage, LoopFibreProblem, LoopfibError,
};
use hopfcert::report::{Check, Status};
use hopfcert::symmod::{
    dynkin_element, dynkin_idempotent, idempotent_stable_image, lie_component, spans_equal, SymmodError,
};
use hopfcert::tensor::{free_on_check, loop_homology_families, TensorError};
use hopfcert::Exec;
use serde_json::json;
use thiserror::Error;

use crate::{Command, Opts};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("missing required flag --{0}")]
    MissingFlag(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Symmod(#[from] SymmodError),
    #[error(transparent)]
    Loopfib(#[from] LoopfibError),
    #[error(transparent)]
    James(#[from] JamesError),
    #[error(transparent)]
    Groups(#[from] GroupError),
}

type Result<T> = std::result::Result<T, CliError>;

fn need(v: Option<u32>, flag: &'static str) -> Result<u32> {
    v.ok_or(CliError::MissingFlag(flag))
}

pub fn run(command: &Command, opts: &Opts) -> Result<Check> {
    Prime::new(opts.prime)?;
    match command {
        Command::Poincare { degrees } => poincare(opts, degrees),
        Command::FreeCheck => free_check(opts),
        Command::Dynkin => dynkin(opts),
        Command::Qmax => qmax(opts),
        Command::Cotensor => cotensor(opts),
        Command::Ladder => ladder(opts),
        Command::Tower => tower(opts),
        Command::Certificate { class } => certificate(opts, class.as_deref()),
        Command::ExactCheck => exact_check(opts),
        Command::Pi18 => pi18(opts),
    }
}

fn poincare(opts: &Opts, degrees: &[u32]) -> Result<Check> {
    let degrees = if degrees.is_empty() {
        let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
        vec![n, n + k + 1]
    } else {
        degrees.to_vec()
    };
    let series = ps_free_tensor(&degrees, opts.cutoff)?;
    Ok(Check::leaf(
        "Poincaré series of the free tensor algebra",
        "1/(1 - Σ t^{d_i})",
        Status::Pass,
        json!({ "generator_degrees": degrees, "cutoff": opts.cutoff, "coefficients": series.coeffs() }),
    ))
}

fn free_check(opts: &Opts) -> Result<Check> {
    let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
    let p = Prime::new(opts.prime)?;
    let children = loop_homology_families(n, k, p)?
        .into_iter()
        .map(|fam| {
            let report = free_on_check(&fam.algebra, &fam.gens, opts.cutoff)?;
            Ok(Check::pass_if(
                format!("free on {}", fam.name),
                "subalgebra dimensions equal the free series",
                report.is_free(),
                json!({
                    "generator_degrees": report.generator_degrees,
                    "first_failure": report.first_failure().map(|r| json!({
                        "degree": r.degree,
                        "expected": r.expected_free_dim,
                        "found": r.subalgebra_dim,
                    })),
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Check::group(
        "loop-homology generating families are free",
        "free subalgebras of T(V)",
        json!({ "n": n, "k": k, "prime": p.get(), "cutoff": opts.cutoff }),
        children,
    ))
}

fn dynkin(opts: &Opts) -> Result<Check> {
    let m = need(opts.m, "m")? as usize;
    let beta = dynkin_element(m)?;
    let square = beta.mul(&beta)?;
    let mut children = vec![Check::pass_if(
        "β_m·β_m = m·β_m over Z",
        "Dynkin element squares to m times itself",
        square == beta.scale(m as i64),
        json!({ "terms": beta.num_terms(), "element": (m <= 4).then(|| beta.to_string()) }),
    )];
    let p = Prime::new(opts.prime)?;
    if !m.is_multiple_of(p.get() as usize) {
        let e = dynkin_idempotent(m, p)?;
        children.push(Check::pass_if(
            "β_m/m is idempotent mod p",
            "Dynkin idempotent",
            e.mul(&e)? == e,
            json!({ "prime": p.get() }),
        ));
    } else {
        children.push(Check::leaf(
            "β_m/m is idempotent mod p",
            "Dynkin idempotent",
            Status::Incomplete,
            json!({ "prime": p.get(), "reason": "p divides m, so β_m/m is not defined" }),
        ));
    }
    Ok(Check::group(format!("Dynkin element β_{m}"), "group ring Z[S_m]", json!({ "m": m }), children))
}

fn qmax(opts: &Opts) -> Result<Check> {
    let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
    let m = opts.m.unwrap_or(3) as usize;
    let p = Prime::new(opts.prime)?;
    let e = dynkin_idempotent(m, p)?;
    let mut v = GradedVectorSpace::new(p);
    v.add(n, "x")?;
    v.add(n + k + 1, "y")?;
    let mut children = Vec::new();
    for degree in (m as u32 * n)..=(m as u32 * (n + k + 1)) {
        let image = idempotent_stable_image(&e, &v, m, degree)?;
        let lie = lie_component(&v, m, degree)?;
        if image.is_empty() && lie.is_empty() {
            continue;
        }
        children.push(Check::pass_if(
            format!("degree {degree}"),
            "image of β_m/m equals the Lie component",
            spans_equal(p, &image, &lie),
            json!({
                "dim": image.len(),
                "basis": image.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        ));
    }
    Ok(Check::group(
        format!("stable image of β_{m}/{m} on V^⊗{m}"),
        "Dynkin idempotent image is the weight-m Lie component",
        json!({ "V": format!("x:{n}, y:{}", n + k + 1), "prime": p.get() }),
        children,
    ))
}

fn cotensor(opts: &Opts) -> Result<Check> {
    let (m, r) = (need(opts.m, "m")?, need(opts.r, "r")?);
    let prob = LoopFibreProblem::new(m, r, opts.prime, opts.cutoff)?;
    let expected = expected_fiber_series(&prob)?;
    let fibre = CotensorFibre::new(prob)?;
    let dims = fibre.dims(Exec::default())?;
    let table: Vec<[u64; 2]> =
        dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| [i as u64, d as u64]).collect();
    let matches = dims.iter().enumerate().all(|(i, &d)| d as u64 == expected.coefficient(i));
    Ok(Check::pass_if(
        "cotensor dimensions match the free fibre series",
        "loop homology of the pinch fibre is the cotensor product",
        matches,
        json!({
            "m": m,
            "r": r,
            "prime": prob.p.get(),
            "cutoff": prob.cutoff,
            "u_degree": prob.u_degree(),
            "v_degree": prob.v_degree(),
            "dimensions": table,
            "expected": expected.coeffs(),
        }),
    ))
}

fn ladder(opts: &Opts) -> Result<Check> {
    let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
    let mut children = Vec::new();
    for stage in [LadderStage::F, LadderStage::F2, LadderStage::F3, LadderStage::G] {
        let l = fiber_generator_ladder(n, k, stage, opts.cutoff)?;
        children.push(Check::leaf(
            format!("ladder of {stage}"),
            "loop-homology generators of the fibre stage",
            Status::Pass,
            json!({ "generators": l.generators.iter().map(|(s, d)| format!("{s}:{d}")).collect::<Vec<_>>() }),
        ));
    }
    let serre = serre_factorization_check(n, k, opts.prime, opts.cutoff)?;
    children.push(Check::pass_if(
        "Serre factorization",
        "homology of ΩX is that of the fibre times that of the loop base",
        serre.holds(),
        json!({ "f_holds": serre.f_holds(), "g_holds": serre.g_holds(), "first_mismatch": serre.first_mismatch() }),
    ));
    let table = transgression_table(n, k, 4)?;
    children.push(Check::leaf(
        "transgression",
        "fibre generators transgress to loop classes",
        Status::Pass,
        json!({ "rows": table.iter().map(|t| format!("{}:{} → {}:{}", t.fibre_label, t.fibre_degree, t.loop_label, t.loop_degree)).collect::<Vec<_>>() }),
    ));
    Ok(Check::group("generator ladders", "fibre stage generators", json!({ "n": n, "k": k }), children))
}

fn tower(opts: &Opts) -> Result<Check> {
    let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
    let cutoff = u32::try_from(opts.cutoff).map_err(|_| CliError::Invalid("cutoff too large".into()))?;
    let tower = fiber_tower(n, k, cutoff)?;
    let p = Prime::new(2)?;
    let mut children: Vec<Check> = tower
        .complexes()
        .iter()
        .map(|c| {
            Check::leaf(
                c.name.clone(),
                "cell structure",
                Status::Pass,
                json!({ "cells": c.to_string(), "dims": c.dims() }),
            )
        })
        .collect();
    if let Some(top) = tower.f.top_dim() {
        let h = relative_james_homology(
            &GradedVectorSpace::sphere(n + 1, "a", p),
            &GradedVectorSpace::sphere(n + k + 1, "b", p),
            top,
        )?;
        children.push(Check::pass_if(
            "cells of F match the homology of the relative James construction",
            "homology of the relative James construction",
            h.support() == tower.f.dims(),
            json!({ "homology_degrees": h.support() }),
        ));
    }
    Ok(Check::group("fibre tower", "cell structures", json!({ "n": n, "k": k, "cutoff": cutoff }), children))
}

fn certificate(opts: &Opts, class: Option<&str>) -> Result<Check> {
    let (n, k) = (need(opts.n, "n")?, need(opts.k, "k")?);
    let mut input = CertificateInput::new(n, k, opts.prime);
    if let Some(c) = class {
        input = input.with_class(c);
    }
    Ok(main_theorem_certificate(&input)?)
}

fn load_ledger_text(opts: &Opts) -> Result<String> {
    match &opts.ledger {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(SHIPPED_PI18_LEDGER.to_string()),
    }
}

fn exact_check(opts: &Opts) -> Result<Check> {
    let mut ledger = Ledger::parse(&load_ledger_text(opts)?)?;
    resolve_pi18_groups(&mut ledger)?;
    let children = ledger
        .exact
        .iter()
        .map(|rec| Ok(exactness_check(&ledger.fragment(&rec.name)?).to_check(&rec.cite)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Check::group("exactness of recorded sequences", "|G| = |im in|·|im out|", json!({}), children))
}

fn pi18(opts: &Opts) -> Result<Check> {
    let report = match &opts.ledger {
        Some(path) => pi18_report(path)?,
        None => pi18_report_from_str(SHIPPED_PI18_LEDGER)?,
    };
    let mut check = report.check;
    if let serde_json::Value::Object(map) = &mut check.data {
        map.insert("x2_orders".into(), json!(report.x2_orders));
        map.insert("x3_orders".into(), json!(report.x3_orders));
        map.insert("orders".into(), json!(report.target_orders));
        map.insert("log2_order".into(), json!(report.target_log_order));
    }
    Ok(check)
}
