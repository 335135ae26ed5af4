//! Loop-space homology of the fibre of a pinch map, computed as a cotensor
//! product inside a tensor algebra, and the generator ladders of the loop
//! spaces of the fibres that appear in the relative James tower.

mod cotensor;
mod ladder;

pub use cotensor::{
    cotensor_fiber_homology, cotensor_fiber_homology_with, expected_fiber_series, ClosureReport, CotensorFibre,
    LoopFibreProblem, MembershipRow, DEFAULT_WORD_BUDGET,
};
pub use ladder::{
    fiber_generator_ladder, serre_factorization_check, serre_factorization_check_with_ladders, transgression_table,
    GeneratorLadder, LadderStage, SerreReport, TransgressionRow,
};

use thiserror::Error;

use crate::gfp::GfpError;
use crate::tensor::TensorError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopfibError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degree {degree} has {words} words, over the budget of {budget}; lower the cutoff")]
    MemoryBudget { degree: usize, words: u64, budget: u64 },
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
