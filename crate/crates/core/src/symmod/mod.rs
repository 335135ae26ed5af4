//! Symmetric-group machinery on tensor powers: the Koszul-signed place
//! permutation action, the group ring `Z[S_m]` / `F_p[S_m]`, the Dynkin
//! (left-normed bracketing) element and the images it cuts out.

mod image;
mod perm;
mod ring;

pub use image::{dsw_defects, idempotent_stable_image, lie_component, span_of, spans_equal, stable_image_by_iteration};
pub use perm::{koszul_action, Permutation, MAX_M};
pub use ring::{dynkin_element, dynkin_idempotent, Coefficients, GroupRingElement};

use thiserror::Error;

use crate::tensor::TensorError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmodError {
    #[error("not a permutation of 1..{0}: {1:?}")]
    BadPermutation(usize, Vec<u8>),
    #[error("m = {0} outside the supported range 2..={max}", max = MAX_M)]
    OrderOutOfRange(usize),
    #[error("word of length {found} acted on by S_{expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("group ring elements over different S_m or coefficient rings")]
    RingMismatch,
    #[error("p = {p} divides m = {m}: 1/m does not exist mod p")]
    PrimeDividesOrder { p: u32, m: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("an F_p coefficient ring is required here")]
    NeedsFieldCoefficients,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
