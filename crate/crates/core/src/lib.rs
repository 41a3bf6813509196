//! Exact computations around the Kuga–Satake construction for rational
//! quadratic spaces of K3 type.
//!
//! - [`quadspace`]: diagonalization, signature, discriminant square classes.
//! - [`clifford`]: exact Clifford multiplication and the center of `C⁺(V)`.
//! - [`hodgetype`]: tensor calculus of (fractional) Hodge types.
//! - [`rootspin`]: `B_m`/`D_m` root data, special vertices, spin weights.
//! - [`lifting`]: lifting cocharacters through isogenies of tori.
//! - [`ksclassify`]: simple factors of `H_KS` and torus dimension bounds.

pub mod clifford;
pub mod error;
pub mod hodgetype;
pub mod ksclassify;
pub mod lifting;
pub mod linalg;
pub mod quadspace;
pub mod rational;
pub mod rootspin;

pub use error::{Error, Result};
pub use rational::Q;
