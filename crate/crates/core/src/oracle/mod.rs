//! Independent ground truth at the monodromy level.
//!
//! Exact cyclotomic field arithmetic, exact linear algebra, the
//! Dettweiler–Reiter realization of middle convolution on matrix tuples,
//! and Jordan-data extraction.  The oracle validates the (λ, ℓ) content of
//! the Hodge calculus — the p-grading has no matrix-level counterpart and
//! is guarded instead by the involution and closure identities.

pub mod cyclotomic;
pub mod matrix;
pub mod tuple;
mod verify;

pub use cyclotomic::{angle_of_root, cyclotomic_polynomial, euler_phi, Cyclo};
pub use matrix::{CMatrix, Subspace};
pub use tuple::{
    compare, dr_convolve, is_absolutely_irreducible, jordan_data, jordan_data_in_order,
    realize_rank_one, twist_tuple, MatrixTuple, Mismatch,
};
pub use verify::{verify_chain, VerifyEntry, VerifyOptions, VerifyReport};

/// Default cap on the cyclotomic order used when building oracle scenarios;
/// can be overridden per call or through `HODGEMC_MAX_CYCLOTOMIC_ORDER`.
pub const DEFAULT_MAX_ORDER: u64 = 60;
