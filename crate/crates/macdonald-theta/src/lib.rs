//! Exact computation of nonsymmetric Macdonald polynomials in the limits
//! `t → 0` and `t → ∞`, together with the theta-function expansions,
//! Demazure and Demazure-slice characters built from them.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice_weyl`]: root data, weights, finite and extended affine Weyl
//!   groups, λ-sets, the orders `≪`/`≺` and the Bruhat order;
//! - [`char_series`]: truncated q-series, Laurent polynomials in `X_b`, the
//!   operators acting on them, the measure `μ̄` and theta functions;
//! - [`epoly`]: the polynomials `Ē_b`, `E†_b`, `E†*_b`, their norms `h⁰_b`
//!   and a generic-`t` engine used for cross-checks;
//! - [`rr_expansion`]: expansions of `E·θ̂^p` and the resulting coefficient
//!   tables;
//! - [`verify`]: a registry of named checks and table emitters used by the
//!   `rr-verify` command-line tool.

pub mod char_series;
pub mod epoly;
pub mod error;
pub mod lattice_weyl;
pub mod qexp;
pub mod rr_expansion;
pub mod scalar;
pub mod verify;

#[cfg(doctest)]
mod guide;

pub use error::{Error, Result};
pub use qexp::QExp;
pub use scalar::Rat;
