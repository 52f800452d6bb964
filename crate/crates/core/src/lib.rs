//! Exact calculus of local Hodge numerical invariants under middle additive
//! convolution with a Kummer module.
//!
//! The crate manipulates the numerical shadow of an irreducible regular
//! holonomic module on the punctured affine line — nearby-cycle tables
//! ν^p_{x,λ,ℓ}, Hodge numbers h^p and Deligne-extension degrees δ^p — and
//! transports it through middle convolution MC_{λ₀} and rank-one twists.
//! On top of the transforms sit a Katz reduction driver, a hypergeometric
//! constructor, and an independent verification oracle working with exact
//! cyclotomic matrix tuples (Dettweiler–Reiter convolution, Jordan data).
//!
//! Modules:
//!
//! * [`angle`] — exact eigenvalue angles γ ∈ [0,1), λ = exp(−2iπγ);
//! * [`invariants`] — tables, module data, and the derived local invariants;
//! * [`transforms`] — the middle convolution and twist transforms;
//! * [`katz`] — rigidity index, reduction chains, hypergeometric systems;
//! * [`oracle`] — exact cyclotomic linear algebra and the matrix-level
//!   middle convolution used as ground truth;
//! * [`io`] — the JSON document format and reports used by the CLI.

pub mod angle;
pub mod error;
pub mod invariants;
pub mod io;
pub mod katz;
pub mod oracle;
pub mod transforms;

pub use angle::Angle;
pub use error::{Error, Result};
pub use invariants::{
    ConsistencyViolation, FiniteLabel, HodgeTable, ModuleData, PointLocation,
};
pub use transforms::{KummerParameter, TwistParameter};
