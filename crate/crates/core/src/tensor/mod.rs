//! The primitively generated tensor Hopf algebra `T(V)` over `F_p`.
//!
//! Elements are homogeneous linear combinations of words in a fixed graded
//! alphabet. The coproduct makes every generator primitive and is extended
//! multiplicatively with Koszul signs, so the sign attached to a term only
//! depends on the parities of the degrees that move past each other.

mod coproduct;
mod element;
mod families;
mod lie;
mod subalgebra;

pub use coproduct::{coproduct, is_primitive, MultiTensor};
pub use element::{Generator, TensorAlgebra, TensorElement, Word};
pub use families::{loop_homology_families, FreeFamily};
pub use lie::{ad_power, bracket, left_normed_bracket};
pub use subalgebra::{
    free_on_check, free_on_check_with, subalgebra_dims, subalgebra_dims_with, FreeCheckReport, FreeCheckRow,
    SubalgebraSpan,
};

use thiserror::Error;

use crate::gfp::GfpError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("elements live in different tensor algebras")]
    AlphabetMismatch,
    #[error("inhomogeneous combination: degree {found} mixed into degree {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("generator {0:?} has degree 0; generators must have positive degree")]
    DegreeZeroGenerator(String),
    #[error("generator label {0:?} used twice")]
    DuplicateLabel(String),
    #[error("no generator labelled {0:?}")]
    UnknownLabel(String),
    #[error("alphabets are limited to 255 generators")]
    TooManyGenerators,
    #[error("subalgebra generators must have positive degree")]
    ScalarGenerator,
    #[error(transparent)]
    Gfp(#[from] GfpError),
}
