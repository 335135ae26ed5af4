//! Cell bookkeeping for the relative James construction `J(X, A)`: its
//! homology, skeleta, the tower of fibres `F ⊃ F⁽³⁾ ⊃ F⁽²⁾` and `G`,
//! Whitehead-product factorizations, and the factorization certificate that
//! ties them together with the loop-homology and `L_3` computations.

mod cells;
mod certificate;
mod maps;

pub use cells::{
    fiber_tower, relative_james_homology, skeleton_index, suspended_cofibre, Attaching, Cell, CellComplex, FiberTower,
    SkeletonIndex,
};
pub use certificate::{check_hypotheses, main_theorem_certificate, CertificateInput};
pub use maps::{whitehead_decomposition, whitehead_sphere_chain, MapFactor, MapRecord, Space, SphereClass};

use thiserror::Error;

use crate::gfp::GfpError;
use crate::loopfib::LoopfibError;
use crate::symmod::SymmodError;
use crate::tensor::TensorError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JamesError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The requested parameters fall outside the theorem's hypotheses.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("maps do not compose: {0}")]
    NotComposable(String),
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Symmod(#[from] SymmodError),
    #[error(transparent)]
    Loopfib(#[from] LoopfibError),
}
