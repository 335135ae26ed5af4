//! Finite abelian p-groups, exactness bookkeeping for fragments of long
//! exact sequences, extension candidates, and the relation ledger used to
//! replay a homotopy-group computation step by step.

mod exact;
mod ledger;
mod pgroup;
mod pi18;

pub use exact::{exactness_check, ExactFragment, ExactnessReport, PositionResult};
pub use ledger::{
    ledger_compose, ComposeResult, Composite, ExactRecord, FactRecord, GeneratorRecord, GroupRecord, ImageSpec, Ledger,
    OrderInfo, RelationRecord, Scalar,
};
pub use pgroup::{extension_candidates, littlewood_richardson, partitions, FinAbPGroup};
pub use pi18::{pi18_report, pi18_report_from_str, resolve_pi18_groups, Pi18Report, SHIPPED_PI18_LEDGER};

use thiserror::Error;

use crate::gfp::GfpError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{order} is not a positive power of {p}")]
    NotPrimePower { order: u64, p: u32 },
    #[error("groups over different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
    #[error("order {order} exceeds the limit {limit}")]
    TooLarge { order: u128, limit: u64 },
    #[error("{0} names {1} summands but has {2}")]
    NameCount(String, usize, usize),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("ledger parse error: {0}")]
    Parse(String),
    #[error("unresolved name {0:?}")]
    Unresolved(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("malformed ledger record: {0}")]
    Malformed(String),
    #[error(transparent)]
    Gfp(#[from] GfpError),
}
