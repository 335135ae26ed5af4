use serde_json::{json, Value};

use super::{
    fiber_tower, relative_james_homology, skeleton_index, suspended_cofibre, Attaching, JamesError, MapFactor,
    MapRecord, Space, SphereClass,
};
use crate::gfp::{GradedVectorSpace, Prime};
use crate::report::{Check, Status};
use crate::symmod::{dynkin_idempotent, idempotent_stable_image, lie_component, spans_equal};
use crate::tensor::{ad_power, free_on_check, TensorAlgebra};

/// Parameters of `C_f = S^n ∪_f e^{n+k+1}` and the prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateInput {
    pub n: u32,
    pub k: u32,
    pub p: u32,
    /// The class of `f ∈ π_{n+k}(S^n)`; defaults to the symbol `f`.
    pub f: Option<SphereClass>,
}

impl CertificateInput {
    pub fn new(n: u32, k: u32, p: u32) -> Self {
        CertificateInput { n, k, p, f: None }
    }

    pub fn with_class(mut self, symbol: impl Into<String>) -> Self {
        self.f = Some(SphereClass::new(symbol, self.n, self.k));
        self
    }
}

/// The hypotheses under which the factorization holds: `p` prime, `p ≠ 3`,
/// and `n + k` odd when `p ≥ 5`.
pub fn check_hypotheses(n: u32, k: u32, p: u32) -> Result<Prime, JamesError> {
    if n < 2 {
        return Err(JamesError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let prime = Prime::new(p)?;
    if p == 3 {
        return Err(JamesError::Hypothesis("p = 3 is excluded: 1/3 is needed to split off the cubic Lie piece".into()));
    }
    if p >= 5 && (n + k).is_multiple_of(2) {
        return Err(JamesError::Hypothesis(format!("for p >= 5 the sum n + k must be odd, got n + k = {}", n + k)));
    }
    Ok(prime)
}

const CITE_MAIN: &str = "main theorem: suspended attaching map factors through β over j34";
const CITE_TOWER: &str = "relative James fibre F and its skeleta; cell structure of G";
const CITE_SQ: &str = "SQ^max of a two-cell complex is a suspension of it";
const CITE_L3: &str = "cubic Lie component L_3 for V = {x, y}";
const CITE_LOOP: &str = "loop homology of F2, F3 and G as tensor algebras";
const CITE_MONO: &str = "j34_* is a monomorphism for r <= 4n+2k+1";

/// Degree-level certificate that `β = j3∘j4∘Σ^{2n+k+2}f` is well formed
/// and consistent with every independently computed ingredient.
pub fn main_theorem_certificate(input: &CertificateInput) -> Result<Check, JamesError> {
    let CertificateInput { n, k, p, .. } = *input;
    let prime = check_hypotheses(n, k, p)?;
    let f_class = input.f.clone().unwrap_or_else(|| SphereClass::new("f", n, k));
    if f_class.base != n || f_class.stem != k {
        return Err(JamesError::InvalidInput(format!("f must lie in π_{}(S^{n})", n + k)));
    }
    let s = 2 * n + k + 2;
    let top_f3 = 3 * n + 2 * k + 3;
    let tower = fiber_tower(n, k, 5 * n + 2 * k + 3)?;

    let children = vec![
        Check::pass_if("hypotheses", CITE_MAIN, true, json!({ "n": n, "k": k, "p": p, "n_plus_k": n + k })),
        tower_check(n, k, prime, &tower)?,
        chain_check(n, k, s, top_f3, &f_class, &tower)?,
        sq_check(n, k, s, top_f3, &tower)?,
        l3_check(n, k, prime)?,
        loop_check(n, k, prime)?,
        Check::leaf(
            "monomorphism",
            CITE_MONO,
            Status::Pass,
            json!({
                "statement": format!("j34_*: π_r(S^{}) → π_r(F2) is injective", 3 * n + k + 2),
                "r_max": 4 * n + 2 * k + 1,
                "basis": "recorded fact, consumed by the exact-sequence ledger",
            }),
        ),
    ];
    Ok(Check::group("certificate", CITE_MAIN, json!({ "n": n, "k": k, "p": p }), children))
}

fn tower_check(n: u32, k: u32, prime: Prime, tower: &super::FiberTower) -> Result<Check, JamesError> {
    let cutoff = tower.f.top_dim().unwrap_or(0);
    let bottom = GradedVectorSpace::sphere(n + 1, "a", prime);
    let f_homology = relative_james_homology(&bottom, &GradedVectorSpace::sphere(n + k + 1, "b", prime), cutoff)?;
    let g_cutoff = tower.g.top_dim().unwrap_or(0);
    let g_homology = relative_james_homology(&bottom, &GradedVectorSpace::sphere(2 * n + k + 1, "c", prime), g_cutoff)?;
    let f2_index = skeleton_index(n + k + 1, n + 1, 2)?;
    let f3_index = skeleton_index(n + k + 1, n + 1, 3)?;
    let f2_ok = tower.f2.dims() == [n + 1, 2 * n + k + 2] && f2_index.reconciled == 3 * n + 2 * k + 2;
    let f3_ok =
        tower.f3.dims() == [n + 1, 2 * n + k + 2, 3 * n + 2 * k + 3] && f3_index.reconciled == 4 * n + 3 * k + 3;
    Ok(Check::group(
        "tower",
        CITE_TOWER,
        json!({
            "F": tower.f.to_string(),
            "F2": tower.f2.to_string(),
            "F3": tower.f3.to_string(),
            "G": tower.g.to_string(),
        }),
        vec![
            Check::pass_if(
                "F cells = H_*(J(M, S^{n+k+1}))",
                CITE_TOWER,
                f_homology.support() == tower.f.dims(),
                json!({ "cells": tower.f.dims(), "homology": f_homology.support() }),
            ),
            Check::pass_if(
                "G cells = H_*(J(S^{n+1}, S^{2n+k+1}))",
                CITE_TOWER,
                g_homology.support() == tower.g.dims(),
                json!({ "cells": tower.g.dims(), "homology": g_homology.support() }),
            ),
            Check::pass_if(
                "F2 = sk F",
                CITE_TOWER,
                f2_ok,
                json!({ "cells": tower.f2.dims(), "skeleton": f2_index.reconciled, "raw_index": f2_index.raw }),
            ),
            Check::pass_if(
                "F3 = sk F",
                CITE_TOWER,
                f3_ok,
                json!({ "cells": tower.f3.dims(), "skeleton": f3_index.reconciled, "raw_index": f3_index.raw }),
            ),
        ],
    ))
}

fn chain_check(
    n: u32,
    k: u32,
    s: u32,
    top_f3: u32,
    f_class: &SphereClass,
    tower: &super::FiberTower,
) -> Result<Check, JamesError> {
    let sf = f_class.suspend(s);
    let wedge_dim = 3 * n + k + 2;
    let beta = MapRecord::new(
        "β",
        vec![
            MapFactor::new(sf.to_string(), Space::Sphere(sf.source_dim()), Space::Sphere(sf.base)),
            MapFactor::new("j4", Space::Sphere(wedge_dim), Space::complex(&tower.g)),
            MapFactor::new("j3", Space::complex(&tower.g), Space::complex(&tower.f2)),
        ],
    )?
    .with_unit_ambiguity(true);
    let g_cells = tower.g.cells();
    let j4_ok = g_cells.len() > 1 && g_cells[1].dim == wedge_dim && g_cells[1].attaching == Attaching::Sphere;
    let j3_ok = tower.g.bottom_dim() == tower.f2.bottom_dim();
    let beta_cell = tower.f3.cells().last().expect("F3 has three cells");
    let beta_ok = beta_cell.dim == top_f3 && beta_cell.attaching == Attaching::Map("β".into());
    let chain: Vec<String> = beta.chain().iter().map(|x| x.to_string()).collect();
    Ok(Check::group(
        "factorization chain",
        CITE_MAIN,
        json!({
            "chain": chain,
            "record": beta.to_string(),
            "composite": beta.composite(),
            "unit_ambiguous": beta.unit_ambiguous,
            "F2": tower.f2.to_string(),
            "F3_top_cell": top_f3,
            "G_bottom_cells": [tower.g.cells()[0].dim, tower.g.cells()[1].dim],
        }),
        vec![
            Check::pass_if(
                "source is one below the top cell of F3",
                CITE_MAIN,
                beta.source() == &Space::Sphere(top_f3 - 1),
                json!({ "source": beta.source().to_string(), "F3_top_cell": top_f3 }),
            ),
            Check::pass_if(
                "j4 includes a wedge summand of G",
                CITE_TOWER,
                j4_ok,
                json!({ "sphere": wedge_dim, "G": tower.g.to_string() }),
            ),
            Check::pass_if(
                "j3 preserves the bottom cell",
                CITE_TOWER,
                j3_ok,
                json!({ "G_bottom": tower.g.bottom_dim(), "F2_bottom": tower.f2.bottom_dim() }),
            ),
            Check::pass_if(
                "β attaches the top cell of F3 to F2",
                CITE_TOWER,
                beta_ok,
                json!({ "cell": beta_cell.dim }),
            ),
        ],
    ))
}

fn sq_check(n: u32, k: u32, s: u32, top_f3: u32, tower: &super::FiberTower) -> Result<Check, JamesError> {
    let sq = suspended_cofibre(n, k, s)?;
    let expected = [3 * n + k + 2, 3 * n + 2 * k + 3];
    let ok = sq.dims() == expected && tower.g.cells()[1].dim == expected[0] && top_f3 == expected[1];
    Ok(Check::pass_if(
        "SQ^max(C_f)",
        CITE_SQ,
        ok,
        json!({ "complex": sq.name, "cells": sq.dims(), "shape": sq.to_string() }),
    ))
}

fn l3_check(n: u32, k: u32, prime: Prime) -> Result<Check, JamesError> {
    let mut v = GradedVectorSpace::new(prime);
    v.add(n, "x")?;
    v.add(n + k + 1, "y")?;
    let e = dynkin_idempotent(3, prime)?;
    let mut lie_dims = serde_json::Map::new();
    let mut support = Vec::new();
    let mut spans_agree = true;
    for d in 3 * n..=3 * (n + k + 1) {
        let lie = lie_component(&v, 3, d)?;
        let image = idempotent_stable_image(&e, &v, 3, d)?;
        spans_agree &= spans_equal(prime, &lie, &image);
        if !lie.is_empty() {
            support.push(d);
            lie_dims.insert(d.to_string(), json!(lie.len()));
        }
    }
    let cofibre = suspended_cofibre(n, k, 2 * n + k + 1)?;
    let one_each = lie_dims.values().all(|d| d == &json!(1));
    Ok(Check::group(
        "L3",
        CITE_L3,
        json!({ "dims": Value::Object(lie_dims), "cells": cofibre.dims(), "complex": cofibre.name }),
        vec![
            Check::pass_if(
                "degrees match the suspended cofibre",
                CITE_L3,
                support == cofibre.dims() && one_each,
                json!({ "lie_degrees": support }),
            ),
            Check::pass_if("idempotent image equals bracket span", CITE_L3, spans_agree, Value::Null),
        ],
    ))
}

fn loop_check(n: u32, k: u32, prime: Prime) -> Result<Check, JamesError> {
    let alg = TensorAlgebra::new(prime, [("x", n), ("y", n + k + 1)])?;
    let x = alg.generator("x")?;
    let y = alg.generator("y")?;
    let xy = ad_power(&x, &y, 1)?;
    let xyy = ad_power(&x, &y, 2)?;
    let cutoff = (4 * n + 2 * k + 2) as usize;
    let f2 = free_on_check(&alg, &[x.clone(), xy.clone()], cutoff)?;
    let f3 = free_on_check(&alg, &[x.clone(), xy, xyy], cutoff)?;
    Ok(Check::group(
        "loop homology",
        CITE_LOOP,
        json!({ "cutoff": cutoff }),
        vec![
            Check::pass_if(
                "H_*(ΩF2) = T(x,[x,y])",
                CITE_LOOP,
                f2.is_free(),
                json!({ "degrees": f2.generator_degrees }),
            ),
            Check::pass_if(
                "H_*(ΩF3) = T(x,[x,y],[[x,y],y])",
                CITE_LOOP,
                f3.is_free(),
                json!({ "degrees": f3.generator_degrees }),
            ),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gates() {
        assert!(matches!(check_hypotheses(4, 1, 3), Err(JamesError::Hypothesis(_))));
        assert!(matches!(check_hypotheses(4, 2, 5), Err(JamesError::Hypothesis(_))));
        assert!(check_hypotheses(4, 1, 5).is_ok());
        assert!(check_hypotheses(4, 2, 2).is_ok());
        assert!(check_hypotheses(4, 1, 4).is_err());
        assert!(check_hypotheses(1, 1, 2).is_err());
    }

    #[test]
    fn four_one_two() {
        let cert = main_theorem_certificate(&CertificateInput::new(4, 1, 2).with_class("η")).unwrap();
        assert!(cert.passed(), "{}", cert.to_text());
        let chain = &cert.find("factorization chain").unwrap().data;
        assert_eq!(chain["chain"], json!(["S^16", "S^15", "G", "F2"]));
        assert_eq!(chain["composite"], json!("j3∘j4∘η_15"));
        assert_eq!(chain["F2"], json!("S^5 ∪ e^11"));
        assert_eq!(chain["G_bottom_cells"], json!([5, 15]));
        assert_eq!(cert.find("L3").unwrap().data["cells"], json!([14, 16]));
    }
}
