//! Exact computations over `F_p` for tensor Hopf algebras, Dynkin idempotents,
//! loop-space homology of pinch-map fibres, relative James cell bookkeeping
//! and finite abelian p-group exact-sequence arithmetic.

pub mod exec;
pub mod gfp;
pub mod groups;
pub mod james;
pub mod loopfib;
pub mod report;
pub mod symmod;
pub mod tensor;

pub use exec::Exec;
