use std::fmt;

use serde::Serialize;

use super::{CellComplex, JamesError};

/// A symbolic element of `π_{base+stem}(S^base)`. Suspension raises the
/// base and keeps the symbol, so `Σ^11 η_4 = η_15`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SphereClass {
    pub symbol: String,
    pub base: u32,
    pub stem: u32,
}

impl SphereClass {
    pub fn new(symbol: impl Into<String>, base: u32, stem: u32) -> Self {
        SphereClass { symbol: symbol.into(), base, stem }
    }

    pub fn identity(m: u32) -> Self {
        Self::new("ι", m, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.stem == 0 && self.symbol == "ι"
    }

    pub fn source_dim(&self) -> u32 {
        self.base + self.stem
    }

    pub fn suspend(&self, s: u32) -> Self {
        Self::new(self.symbol.clone(), self.base + s, self.stem)
    }
}

impl fmt::Display for SphereClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.symbol, self.base)
    }
}

/// Source or target of a map factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Space {
    Sphere(u32),
    Complex(String),
}

impl Space {
    pub fn complex(c: &CellComplex) -> Self {
        Space::Complex(c.name.clone())
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sphere(d) => write!(f, "S^{d}"),
            Space::Complex(name) => f.write_str(name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapFactor {
    pub name: String,
    pub source: Space,
    pub target: Space,
}

impl MapFactor {
    pub fn new(name: impl Into<String>, source: Space, target: Space) -> Self {
        MapFactor { name: name.into(), source, target }
    }
}

/// A named map recorded as a composite of factors, listed in the order
/// they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRecord {
    pub name: String,
    pub factors: Vec<MapFactor>,
    /// Equality holds only up to sign.
    pub sign_ambiguous: bool,
    /// Equality holds only up to a unit of `Z_(p)`.
    pub unit_ambiguous: bool,
}

impl MapRecord {
    /// Checks that each factor's target is the next factor's source.
    pub fn new(name: impl Into<String>, factors: Vec<MapFactor>) -> Result<Self, JamesError> {
        let name = name.into();
        if factors.is_empty() {
            return Err(JamesError::NotComposable(format!("{name}: no factors")));
        }
        for pair in factors.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(JamesError::NotComposable(format!(
                    "{name}: {} ends at {} but {} starts at {}",
                    pair[0].name, pair[0].target, pair[1].name, pair[1].source
                )));
            }
        }
        Ok(MapRecord { name, factors, sign_ambiguous: false, unit_ambiguous: false })
    }

    pub fn with_sign_ambiguity(mut self, flag: bool) -> Self {
        self.sign_ambiguous = flag;
        self
    }

    pub fn with_unit_ambiguity(mut self, flag: bool) -> Self {
        self.unit_ambiguous = flag;
        self
    }

    pub fn source(&self) -> &Space {
        &self.factors[0].source
    }

    pub fn target(&self) -> &Space {
        &self.factors[self.factors.len() - 1].target
    }

    /// `S^16 → S^15 → G → F2`.
    pub fn chain(&self) -> Vec<Space> {
        std::iter::once(self.source().clone()).chain(self.factors.iter().map(|f| f.target.clone())).collect()
    }

    /// `j3∘j4∘Σ^11f`, outermost factor first.
    pub fn composite(&self) -> String {
        self.factors.iter().rev().map(|f| f.name.as_str()).collect::<Vec<_>>().join("∘")
    }
}

impl fmt::Display for MapRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eq = match (self.sign_ambiguous, self.unit_ambiguous) {
            (false, false) => " = ",
            (true, false) => " = ±",
            (_, true) => " = (unit)·",
        };
        write!(f, "{}{eq}{}", self.name, self.composite())
    }
}

/// `[x, y] = ±[ι_m, ι_m] ∘ Σ^{m-1}y ∘ Σ^{j-1}x` for `x ∈ π_i(S^m)`,
/// `y ∈ π_j(S^m)`, through `S^{i+j-1} → S^{m+j-1} → S^{2m-1} → S^m`.
///
/// Suspended identity factors are omitted from the factor list; the full
/// sphere chain is still available from [`whitehead_sphere_chain`]. When both
/// classes are identities the record is exactly `[ι_m, ι_m]` with no sign
/// ambiguity.
pub fn whitehead_decomposition(m: u32, x: &SphereClass, y: &SphereClass) -> Result<MapRecord, JamesError> {
    if m < 2 {
        return Err(JamesError::InvalidInput(format!("need m >= 2, got {m}")));
    }
    for c in [x, y] {
        if c.base != m {
            return Err(JamesError::InvalidInput(format!("{c} is not in a homotopy group of S^{m}")));
        }
    }
    let i = x.source_dim();
    let j = y.source_dim();
    let sx = x.suspend(j - 1);
    let sy = y.suspend(m - 1);
    let chain = whitehead_sphere_chain(m, i, j);
    let mut factors = Vec::new();
    if !x.is_identity() {
        factors.push(MapFactor::new(sx.to_string(), Space::Sphere(chain[0]), Space::Sphere(sx.base)));
    }
    if !y.is_identity() {
        factors.push(MapFactor::new(sy.to_string(), Space::Sphere(sy.source_dim()), Space::Sphere(sy.base)));
    }
    factors.push(MapFactor::new(format!("[ι_{m},ι_{m}]"), Space::Sphere(2 * m - 1), Space::Sphere(m)));
    let record = MapRecord::new(format!("[{x},{y}]"), factors)?;
    if record.source() != &Space::Sphere(chain[0]) {
        return Err(JamesError::NotComposable(format!(
            "{}: composite starts at {} instead of S^{}",
            record.name,
            record.source(),
            chain[0]
        )));
    }
    let trivial = x.is_identity() && y.is_identity();
    Ok(record.with_sign_ambiguity(!trivial))
}

/// `[i+j-1, m+j-1, 2m-1, m]`.
pub fn whitehead_sphere_chain(m: u32, i: u32, j: u32) -> [u32; 4] {
    [i + j - 1, m + j - 1, 2 * m - 1, m]
}
