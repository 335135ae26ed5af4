//! Exact arithmetic over the prime field `F_p`: scalars, dense matrices with
//! deterministic reduced row-echelon form, an incremental sparse echelon basis,
//! truncated Poincaré series and graded vector spaces.

mod field;
mod graded;
mod matrix;
mod series;
mod sparse;

pub use field::{is_prime, Fp, Prime};
pub use graded::GradedVectorSpace;
pub use matrix::MatrixFp;
pub use series::{ps_free_tensor, ps_mul, PoincareSeries, DEFAULT_CUTOFF};
pub use sparse::{SparseEchelon, SparseVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfpError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("matrix rows have unequal lengths ({expected} vs {found})")]
    Ragged { expected: usize, found: usize },
    #[error("generator of degree 0 makes the free tensor series diverge")]
    DegreeZeroGenerator,
    #[error("series cutoffs differ ({0} vs {1})")]
    CutoffMismatch(usize, usize),
    #[error("series coefficient overflowed at degree {0}")]
    SeriesOverflow(usize),
    #[error("label {label:?} already present in degree {degree}")]
    DuplicateLabel { degree: u32, label: String },
    #[error("moduli differ ({0} vs {1})")]
    ModulusMismatch(u32, u32),
}
