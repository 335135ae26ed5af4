use std::fmt;

use serde::Serialize;

use super::JamesError;
use crate::gfp::{GfpError, GradedVectorSpace};
use crate::tensor::TensorAlgebra;

/// How a cell is glued on. Attaching maps are symbolic and never evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "map")]
pub enum Attaching {
    /// The bottom sphere, or a wedge summand (attached trivially).
    Sphere,
    Map(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub dim: u32,
    pub label: String,
    pub attaching: Attaching,
}

/// A named CW complex recorded by its cells (the base point is implicit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub name: String,
    cells: Vec<Cell>,
    /// More cells exist above the recorded ones.
    truncated: bool,
}

impl CellComplex {
    pub fn new(name: impl Into<String>) -> Self {
        CellComplex { name: name.into(), cells: Vec::new(), truncated: false }
    }

    pub fn sphere(name: impl Into<String>, dim: u32) -> Result<Self, JamesError> {
        Self::new(name).with_cell(dim, "ι", Attaching::Sphere)
    }

    /// Adds a cell, keeping cells sorted by dimension.
    pub fn with_cell(mut self, dim: u32, label: impl Into<String>, attaching: Attaching) -> Result<Self, JamesError> {
        if dim == 0 {
            return Err(JamesError::InvalidInput(format!("{}: cells have dimension at least 1", self.name)));
        }
        let at = self.cells.partition_point(|c| c.dim <= dim);
        self.cells.insert(at, Cell { dim, label: label.into(), attaching });
        Ok(self)
    }

    pub fn mark_truncated(mut self) -> Self {
        self.truncated = true;
        self
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn dims(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.dim).collect()
    }

    pub fn bottom_dim(&self) -> Option<u32> {
        self.cells.first().map(|c| c.dim)
    }

    pub fn top_dim(&self) -> Option<u32> {
        self.cells.last().map(|c| c.dim)
    }

    pub fn has_cell(&self, dim: u32) -> bool {
        self.cells.iter().any(|c| c.dim == dim)
    }

    /// Cells of dimension at most `j`. The skeleton is a complete complex
    /// unless `j` reaches past the recorded cells of a truncated one.
    pub fn skeleton(&self, j: u32, name: impl Into<String>) -> CellComplex {
        let cells: Vec<Cell> = self.cells.iter().filter(|c| c.dim <= j).cloned().collect();
        let truncated = self.truncated && cells.len() == self.cells.len();
        CellComplex { name: name.into(), cells, truncated }
    }

    /// Same cells with no truncation marker.
    pub fn same_cells(&self, other: &CellComplex) -> bool {
        self.cells == other.cells
    }
}

impl fmt::Display for CellComplex {
    /// `S^5 ∪ e^11`, `(S^5 ∨ S^15) ∪ e^25 ∪ ⋯`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spheres: Vec<String> =
            self.cells.iter().filter(|c| c.attaching == Attaching::Sphere).map(|c| format!("S^{}", c.dim)).collect();
        let mut s = match spheres.len() {
            0 => "*".to_string(),
            1 => spheres[0].clone(),
            _ => format!("({})", spheres.join(" ∨ ")),
        };
        for c in self.cells.iter().filter(|c| c.attaching != Attaching::Sphere) {
            s.push_str(&format!(" ∪ e^{}", c.dim));
        }
        if self.truncated {
            s.push_str(" ∪ ⋯");
        }
        f.write_str(&s)
    }
}

/// `H̃_*(X) ⊗ T(H̃_*(A))` through degree `cutoff`, with basis labels
/// `x⊗a₁a₂…`.
pub fn relative_james_homology(
    hx: &GradedVectorSpace,
    ha: &GradedVectorSpace,
    cutoff: u32,
) -> Result<GradedVectorSpace, JamesError> {
    if hx.modulus() != ha.modulus() {
        return Err(GfpError::ModulusMismatch(hx.modulus().get(), ha.modulus().get()).into());
    }
    if hx.dim(0) > 0 || ha.dim(0) > 0 {
        return Err(JamesError::InvalidInput("homology must be reduced (nothing in degree 0)".into()));
    }
    let mut out = GradedVectorSpace::new(hx.modulus());
    if ha.is_empty() {
        for (d, label) in hx.iter().filter(|(d, _)| *d <= cutoff) {
            out.add(d, label)?;
        }
        return Ok(out);
    }
    let alg = TensorAlgebra::from_graded(ha)?;
    for (dx, x) in hx.iter() {
        for da in 0..=cutoff.saturating_sub(dx) {
            if dx + da > cutoff {
                break;
            }
            for w in alg.words_of_degree(da) {
                let label = if w.is_empty() { x.to_string() } else { format!("{x}⊗{}", alg.format_word(&w)) };
                out.add(dx + da, label)?;
            }
        }
    }
    Ok(out)
}

/// Largest `j` with `sk_j J(X, A) = J_t` for `X` of top cell `r` and `A`
/// of bottom cell `m` (so `J_t` has top cell `r + (t-1)m` and the next cell
/// is at `r + tm`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonIndex {
    /// `r + tm - 1`, the convention used throughout this crate.
    pub reconciled: u32,
    /// `m(t-1) + r - 1`, the formula as usually quoted with `J_1 = X`;
    /// one filtration step behind `reconciled`.
    pub raw: u32,
}

pub fn skeleton_index(m: u32, r: u32, t: u32) -> Result<SkeletonIndex, JamesError> {
    if t == 0 {
        return Err(JamesError::InvalidInput("filtration index t must be at least 1".into()));
    }
    Ok(SkeletonIndex { reconciled: r + t * m - 1, raw: m * (t - 1) + r - 1 })
}

/// The fibres attached to `C_f = S^n ∪_f e^{n+k+1}`:
/// `F = J(M, S^{n+k+1})` with cells `n+1 + i(n+k+1)`, its skeleta `F⁽²⁾`,
/// `F⁽³⁾`, and `G` with cells `n+1 + i(2n+k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberTower {
    pub n: u32,
    pub k: u32,
    pub f: CellComplex,
    pub f2: CellComplex,
    pub f3: CellComplex,
    pub g: CellComplex,
}

impl FiberTower {
    pub fn complexes(&self) -> [&CellComplex; 4] {
        [&self.f, &self.f2, &self.f3, &self.g]
    }
}

fn power_label(base: &str, letter: &str, i: u32) -> String {
    match i {
        0 => base.to_string(),
        1 => format!("{base}{letter}"),
        _ => format!("{base}{letter}^{i}"),
    }
}

/// Builds the tower, listing the cells of `F` and `G` up to dimension
/// `cutoff` (at least three cells of each are always listed).
pub fn fiber_tower(n: u32, k: u32, cutoff: u32) -> Result<FiberTower, JamesError> {
    if n < 2 {
        return Err(JamesError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let step_f = n + k + 1;
    let step_g = 2 * n + k + 1;
    let count = |step: u32| ((cutoff.saturating_sub(n + 1)) / step + 1).max(3);

    let mut f = CellComplex::new("F");
    for i in 0..count(step_f) {
        let attaching = match i {
            0 => Attaching::Sphere,
            1 => Attaching::Map("α=[1,Σf]".into()),
            2 => Attaching::Map("β".into()),
            _ => Attaching::Map(format!("attaching map of e^{}", n + 1 + i * step_f)),
        };
        f = f.with_cell(n + 1 + i * step_f, power_label("a", "b", i), attaching)?;
    }
    let f = f.mark_truncated();
    let f2 = f.skeleton(skeleton_index(step_f, n + 1, 2)?.reconciled, "F2");
    let f3 = f.skeleton(skeleton_index(step_f, n + 1, 3)?.reconciled, "F3");

    let mut g = CellComplex::new("G");
    for i in 0..count(step_g) {
        let attaching = match i {
            0 | 1 => Attaching::Sphere,
            _ => Attaching::Map(format!("attaching map of e^{}", n + 1 + i * step_g)),
        };
        g = g.with_cell(n + 1 + i * step_g, power_label("a", "c", i), attaching)?;
    }
    let g = g.mark_truncated();
    Ok(FiberTower { n, k, f, f2, f3, g })
}

/// `Σ^s C_f = S^{n+s} ∪_{Σ^s f} e^{n+k+1+s}`.
pub fn suspended_cofibre(n: u32, k: u32, s: u32) -> Result<CellComplex, JamesError> {
    let name = if s == 0 { "C_f".to_string() } else { format!("Σ^{s}C_f") };
    let map = if s == 0 { "f".to_string() } else { format!("Σ^{s}f") };
    CellComplex::new(name).with_cell(n + s, "ι", Attaching::Sphere)?.with_cell(n + k + 1 + s, "e", Attaching::Map(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::Prime;

    fn sphere(d: u32, label: &str) -> GradedVectorSpace {
        GradedVectorSpace::sphere(d, label, Prime::new(2).unwrap())
    }

    #[test]
    fn tower_for_four_one() {
        let t = fiber_tower(4, 1, 30).unwrap();
        assert_eq!(t.f2.dims(), [5, 11]);
        assert_eq!(t.f2.to_string(), "S^5 ∪ e^11");
        assert_eq!(t.f3.dims(), [5, 11, 17]);
        assert_eq!(t.f.dims(), [5, 11, 17, 23, 29]);
        assert_eq!(&t.g.dims()[..3], [5, 15, 25]);
        assert_eq!(t.g.to_string(), "(S^5 ∨ S^15) ∪ e^25 ∪ ⋯");
        assert_eq!(t.f2.cells()[1].attaching, Attaching::Map("α=[1,Σf]".into()));
        assert_eq!(t.f3.cells()[2].attaching, Attaching::Map("β".into()));
    }

    #[test]
    fn tower_for_two_zero() {
        let t = fiber_tower(2, 0, 0).unwrap();
        assert_eq!(t.f2.dims(), [3, 6]);
        assert_eq!(t.f3.dims(), [3, 6, 9]);
    }

    #[test]
    fn skeleton_indices() {
        assert_eq!(skeleton_index(6, 5, 2).unwrap(), SkeletonIndex { reconciled: 16, raw: 10 });
        assert_eq!(skeleton_index(6, 5, 1).unwrap().reconciled, 10);
        assert_eq!(skeleton_index(6, 5, 3).unwrap().reconciled, 22);
        assert!(skeleton_index(6, 5, 0).is_err());
    }

    #[test]
    fn james_homology_examples() {
        let h = relative_james_homology(&sphere(5, "a"), &sphere(6, "b"), 30).unwrap();
        assert_eq!(h.support(), [5, 11, 17, 23, 29]);
        assert_eq!(h.labels(17), ["a⊗bb"]);
        let h = relative_james_homology(&sphere(5, "a"), &sphere(10, "c"), 30).unwrap();
        assert_eq!(h.support(), [5, 15, 25]);
        let empty = GradedVectorSpace::new(Prime::new(2).unwrap());
        assert_eq!(relative_james_homology(&sphere(5, "a"), &empty, 30).unwrap(), sphere(5, "a"));
    }

    #[test]
    fn unreduced_input_rejected() {
        let mut bad = GradedVectorSpace::new(Prime::new(2).unwrap());
        bad.add(0, "1").unwrap();
        assert!(relative_james_homology(&bad, &sphere(3, "b"), 10).is_err());
    }

    #[test]
    fn suspended_cofibre_cells() {
        let c = suspended_cofibre(4, 1, 11).unwrap();
        assert_eq!(c.dims(), [15, 17]);
        assert_eq!(c.name, "Σ^11C_f");
    }
}
