//! Exact computation of equivariant special values `Θ(0)` of Drinfeld modules
//! over `F_q[t]`, twisted by a finite abelian extension with group `G`.
//!
//! Values live in `F_q((1/t))[G]` and are computed to a fixed `t^{-1}`-adic
//! precision by an Euler product over primes and, independently, by a nuclear
//! determinant on a finite quotient of `K_∞/M`. The `volumes` module verifies
//! the equivariant class number formula and the refined Brumer–Stark
//! statement on small extensions.

pub mod algebra;
pub mod drinfeld;
pub mod error;
pub mod euler;
pub mod extensions;
pub mod linalg;
pub mod nuclear;
pub mod special_values;
pub mod volumes;

pub use error::{Error, Result};
