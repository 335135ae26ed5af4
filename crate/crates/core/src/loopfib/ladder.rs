use std::fmt;

use serde::Serialize;

use super::LoopfibError;
use crate::gfp::{ps_free_tensor, ps_mul, PoincareSeries, Prime};

/// Which fibre's loop homology a ladder generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LadderStage {
    /// Fibre of the pinch `X → S^{n+k+1}` for `X = S^n ∪ e^{n+k+1}` suspended once.
    F,
    /// Two-cell skeleton of `F`.
    F2,
    /// Three-cell skeleton of `F`.
    F3,
    /// The fibre used for the second James stage.
    G,
}

impl fmt::Display for LadderStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderStage::F => "F",
            LadderStage::F2 => "F2",
            LadderStage::F3 => "F3",
            LadderStage::G => "G",
        })
    }
}

impl std::str::FromStr for LadderStage {
    type Err = LoopfibError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "F" => Ok(LadderStage::F),
            "F2" => Ok(LadderStage::F2),
            "F3" => Ok(LadderStage::F3),
            "G" => Ok(LadderStage::G),
            other => Err(LoopfibError::InvalidInput(format!("unknown stage {other:?}; expected F, F2, F3 or G"))),
        }
    }
}

/// Generators `(label, degree)` of a tensor algebra, in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorLadder {
    pub stage: LadderStage,
    pub n: u32,
    pub k: u32,
    pub generators: Vec<(String, u32)>,
}

impl GeneratorLadder {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }
}

fn check_nk(n: u32, _k: u32) -> Result<(), LoopfibError> {
    if n < 2 {
        return Err(LoopfibError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

fn ad_label(m: u32, by: &str) -> String {
    match m {
        0 => "x".to_string(),
        1 => format!("[x,{by}]"),
        _ => format!("ad^{m}({by})(x)"),
    }
}

/// Loop-homology generators with `|x| = n`, `|y| = n+k+1`, `|z| = 2n+k+1`.
/// The infinite families `F` and `G` are truncated at `cutoff`.
pub fn fiber_generator_ladder(
    n: u32,
    k: u32,
    stage: LadderStage,
    cutoff: usize,
) -> Result<GeneratorLadder, LoopfibError> {
    check_nk(n, k)?;
    let family = |step: u32, by: &str| -> Vec<(String, u32)> {
        (0..).map(|m| (ad_label(m, by), n + m * step)).take_while(|(_, d)| *d as usize <= cutoff).collect()
    };
    let generators = match stage {
        LadderStage::F => family(n + k + 1, "y"),
        LadderStage::F2 => vec![("x".into(), n), ("[x,y]".into(), 2 * n + k + 1)],
        LadderStage::F3 => {
            vec![("x".into(), n), ("[x,y]".into(), 2 * n + k + 1), ("[[x,y],y]".into(), 3 * n + 2 * k + 2)]
        }
        LadderStage::G => family(2 * n + k + 1, "z"),
    };
    Ok(GeneratorLadder { stage, n, k, generators })
}

/// Both sides of the product decompositions `T(x, y) ≅ T(ladder F) ⊗ T(y)`
/// and `T(x, z) ≅ T(ladder G) ⊗ T(z)` as series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub n: u32,
    pub k: u32,
    pub p: Prime,
    pub cutoff: usize,
    pub f_total: PoincareSeries,
    pub f_product: PoincareSeries,
    pub g_total: PoincareSeries,
    pub g_product: PoincareSeries,
}

impl SerreReport {
    pub fn f_holds(&self) -> bool {
        self.f_total == self.f_product
    }

    pub fn g_holds(&self) -> bool {
        self.g_total == self.g_product
    }

    pub fn holds(&self) -> bool {
        self.f_holds() && self.g_holds()
    }

    /// First degree where either decomposition fails.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..=self.cutoff).find(|&d| {
            self.f_total.coefficient(d) != self.f_product.coefficient(d)
                || self.g_total.coefficient(d) != self.g_product.coefficient(d)
        })
    }
}

pub fn serre_factorization_check(n: u32, k: u32, p: u32, cutoff: usize) -> Result<SerreReport, LoopfibError> {
    let f = fiber_generator_ladder(n, k, LadderStage::F, cutoff)?.degrees();
    let g = fiber_generator_ladder(n, k, LadderStage::G, cutoff)?.degrees();
    serre_factorization_check_with_ladders(n, k, p, cutoff, &f, &g)
}

/// As [`serre_factorization_check`] with caller-supplied ladder degrees.
pub fn serre_factorization_check_with_ladders(
    n: u32,
    k: u32,
    p: u32,
    cutoff: usize,
    f_ladder: &[u32],
    g_ladder: &[u32],
) -> Result<SerreReport, LoopfibError> {
    check_nk(n, k)?;
    let p = Prime::new(p)?;
    let y = n + k + 1;
    let z = 2 * n + k + 1;
    let f_total = ps_free_tensor(&[n, y], cutoff)?;
    let f_product = ps_mul(&ps_free_tensor(f_ladder, cutoff)?, &ps_free_tensor(&[y], cutoff)?)?;
    let g_total = ps_free_tensor(&[n, z], cutoff)?;
    let g_product = ps_mul(&ps_free_tensor(g_ladder, cutoff)?, &ps_free_tensor(&[z], cutoff)?)?;
    Ok(SerreReport { n, k, p, cutoff, f_total, f_product, g_total, g_product })
}

/// A fibre homology class and the loop class it transgresses to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransgressionRow {
    pub fibre_degree: u32,
    pub loop_degree: u32,
    pub fibre_label: String,
    pub loop_label: String,
}

/// Rows `(|a b^m|, |ad^m(y)(x)|)` for `m = 0..count`: `|a| = n+1`,
/// `|b| = n+k+1`, and the loop class sits one degree lower.
pub fn transgression_table(n: u32, k: u32, count: usize) -> Result<Vec<TransgressionRow>, LoopfibError> {
    check_nk(n, k)?;
    if count == 0 {
        return Err(LoopfibError::InvalidInput("count must be at least 1".into()));
    }
    let rows: Vec<TransgressionRow> = (0..count as u32)
        .map(|m| TransgressionRow {
            fibre_degree: n + 1 + m * (n + k + 1),
            loop_degree: n + m * (n + k + 1),
            fibre_label: match m {
                0 => "a".into(),
                1 => "ab".into(),
                _ => format!("ab^{m}"),
            },
            loop_label: ad_label(m, "y"),
        })
        .collect();
    debug_assert!(rows.iter().all(|r| r.fibre_degree == r.loop_degree + 1));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladders_for_four_one() {
        let deg = |s| fiber_generator_ladder(4, 1, s, 30).unwrap().degrees();
        assert_eq!(deg(LadderStage::F), vec![4, 10, 16, 22, 28]);
        assert_eq!(deg(LadderStage::F2), vec![4, 10]);
        assert_eq!(deg(LadderStage::F3), vec![4, 10, 16]);
        assert_eq!(deg(LadderStage::G), vec![4, 14, 24]);
    }

    #[test]
    fn f3_extends_f2_by_one_generator() {
        for n in 2..7 {
            for k in 0..4 {
                let f2 = fiber_generator_ladder(n, k, LadderStage::F2, 0).unwrap().degrees();
                let f3 = fiber_generator_ladder(n, k, LadderStage::F3, 0).unwrap().degrees();
                assert_eq!(&f3[..2], &f2[..]);
                assert_eq!(f3[2], 3 * n + 2 * k + 2);
            }
        }
    }

    #[test]
    fn labels() {
        let l = fiber_generator_ladder(2, 0, LadderStage::G, 20).unwrap();
        let labels: Vec<&str> = l.generators.iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(labels, ["x", "[x,z]", "ad^2(z)(x)", "ad^3(z)(x)"]);
    }

    #[test]
    fn factorization_holds_and_corruption_is_caught() {
        assert!(serre_factorization_check(4, 1, 2, 40).unwrap().holds());
        assert!(serre_factorization_check(2, 0, 2, 40).unwrap().holds());
        let bad = serre_factorization_check_with_ladders(4, 1, 2, 40, &[4, 10, 17, 22], &[4, 14, 24, 34]).unwrap();
        assert!(!bad.f_holds());
        assert!(bad.g_holds());
        assert_eq!(bad.first_mismatch(), Some(16));
    }

    #[test]
    fn transgression_rows() {
        let rows = transgression_table(4, 1, 4).unwrap();
        let pairs: Vec<(u32, u32)> = rows.iter().map(|r| (r.fibre_degree, r.loop_degree)).collect();
        assert_eq!(pairs, [(5, 4), (11, 10), (17, 16), (23, 22)]);
        assert!(transgression_table(4, 1, 0).is_err());
    }

    #[test]
    fn stage_parsing() {
        assert_eq!("f3".parse::<LadderStage>().unwrap(), LadderStage::F3);
        assert!("H".parse::<LadderStage>().is_err());
    }
}
