//! Numerics for explicit zero-density and zero-repulsion estimates of
//! Dirichlet and Hecke L-functions.
//!
//! * [`powersum`]: power-sum witnesses for the Kolesnik–Straus and
//!   Lagarias–Montgomery–Odlyzko inequalities.
//! * [`kernels`]: the smoothing weight Ψ and the kernel `E_k`.
//! * [`constants`]: error-bounded derivation of the explicit constants and
//!   the evaluators of the main bounds.
//! * [`dirichlet`]: Dirichlet characters, L-functions, zeros and prime sums.
//! * [`verify`]: checks of the individual inequalities on computed data.

pub mod arith;
pub mod config;
pub mod constants;
pub mod dirichlet;
pub mod error;
pub mod kernels;
pub mod powersum;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
