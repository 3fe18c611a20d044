//! Exact birational invariants of quotients of the Fano surface of a cubic
//! threefold by finite groups of automorphisms.
//!
//! The crate computes `c₁²`, `c₂`, `q`, `p_g`, `χ`, `h¹¹` and the Albanese
//! fiber genus of the minimal resolution of `S/G` from a scenario file, and
//! replays the blow-down arguments that prove two of the quotients rational.
//! All arithmetic is exact.

pub mod blowdown;
pub mod catalog;
pub mod cyclotomic;
pub mod engine;
pub mod error;
pub mod hj;
pub mod linalg;
pub mod mumford;
pub mod rationality;
pub mod render;
pub mod scalar;
pub mod scenario;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{Field, Rat};

/// Rational matrix, used for intersection forms.
pub type QMatrix = Matrix<Rat>;
/// Cyclotomic matrix, used for group elements.
pub type CycMatrix = Matrix<CycNum>;
