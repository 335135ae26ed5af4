use std::fmt;

use serde::Serialize;

use super::GfpError;

/// Cutoff used when a caller does not choose one.
pub const DEFAULT_CUTOFF: usize = 40;

/// Dimension series `Σ c_d s^d` truncated after degree `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PoincareSeries {
    coeffs: Vec<u64>,
}

impl PoincareSeries {
    /// `coeffs[d]` is the coefficient of `s^d`; the cutoff is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the degree-0 coefficient");
        PoincareSeries { coeffs }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut coeffs = vec![0; cutoff + 1];
        coeffs[0] = 1;
        PoincareSeries { coeffs }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Zero beyond the cutoff.
    pub fn coefficient(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degrees with non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&d| self.coeffs[d] != 0).collect()
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().into_iter().map(|d| format!("{}:{}", d, self.coeffs[d])).collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// Dimension series of the free tensor algebra on generators of the given
/// degrees: `t_0 = 1`, `t_d = Σ_i t_{d - deg_i}`.
pub fn ps_free_tensor(generator_degrees: &[u32], cutoff: usize) -> Result<PoincareSeries, GfpError> {
    if generator_degrees.contains(&0) {
        return Err(GfpError::DegreeZeroGenerator);
    }
    let mut t = vec![0u64; cutoff + 1];
    t[0] = 1;
    for d in 1..=cutoff {
        let mut acc = 0u64;
        for &g in generator_degrees {
            let g = g as usize;
            if g <= d {
                acc = acc.checked_add(t[d - g]).ok_or(GfpError::SeriesOverflow(d))?;
            }
        }
        t[d] = acc;
    }
    Ok(PoincareSeries { coeffs: t })
}

/// Truncated Cauchy product.
pub fn ps_mul(a: &PoincareSeries, b: &PoincareSeries) -> Result<PoincareSeries, GfpError> {
    if a.cutoff() != b.cutoff() {
        return Err(GfpError::CutoffMismatch(a.cutoff(), b.cutoff()));
    }
    let n = a.cutoff();
    let mut out = vec![0u64; n + 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs[..=n - i].iter().enumerate() {
            let term = x.checked_mul(y).ok_or(GfpError::SeriesOverflow(i + j))?;
            out[i + j] = out[i + j].checked_add(term).ok_or(GfpError::SeriesOverflow(i + j))?;
        }
    }
    Ok(PoincareSeries { coeffs: out })
}
