use std::collections::BTreeMap;

use serde::Serialize;

use super::{GfpError, Prime};

/// A graded `F_p`-vector space described by labelled basis vectors in each
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedVectorSpace {
    p: Prime,
    basis: BTreeMap<u32, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(p: Prime) -> Self {
        GradedVectorSpace { p, basis: BTreeMap::new() }
    }

    /// One basis vector in the given degree, e.g. the reduced homology of a sphere.
    pub fn sphere(dim: u32, label: &str, p: Prime) -> Self {
        let mut v = Self::new(p);
        v.basis.insert(dim, vec![label.to_owned()]);
        v
    }

    pub fn from_basis<S: Into<String>>(p: Prime, items: impl IntoIterator<Item = (u32, S)>) -> Result<Self, GfpError> {
        let mut v = Self::new(p);
        for (d, label) in items {
            v.add(d, label)?;
        }
        Ok(v)
    }

    pub fn add(&mut self, degree: u32, label: impl Into<String>) -> Result<(), GfpError> {
        let label = label.into();
        let slot = self.basis.entry(degree).or_default();
        if slot.contains(&label) {
            return Err(GfpError::DuplicateLabel { degree, label });
        }
        slot.push(label);
        Ok(())
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_dim() == 0
    }

    /// Degrees carrying at least one basis vector, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.basis.iter().filter(|(_, v)| !v.is_empty()).map(|(&d, _)| d).collect()
    }

    pub fn labels(&self, degree: u32) -> &[String] {
        self.basis.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// `(degree, label)` pairs ordered by degree, then insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &str)> {
        self.basis.iter().flat_map(|(&d, ls)| ls.iter().map(move |l| (d, l.as_str())))
    }
}
