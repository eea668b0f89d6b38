//! Root data and (extended affine) Weyl group combinatorics.
//!
//! Weights are kept in fundamental-weight coordinates, so the coroot pairing
//! `(b, α_i^∨)` is a coordinate read. Simple roots are the columns of the
//! Cartan matrix `A_{ij} = (α_j, α_i^∨)`. Scalar products use the
//! normalization `(α, α) = 2` for short roots, and the affine roots are the
//! twisted ones `[α, ν_α j]` with `α_0 = [−ϑ, 1]` for the highest short root
//! `ϑ`.
//!
//! ```
//! use macdonald_theta::lattice_weyl::{build_root_system, TypeLabel, Weight};
//!
//! let a2 = build_root_system(TypeLabel::A, 2).unwrap();
//! let (b_minus, u) = a2.antidominant(&Weight::new(&[1, -2]));
//! assert_eq!(b_minus, Weight::new(&[-1, -1]));
//! assert_eq!(u.word(), &[1]);
//! ```

mod affine;
mod order;
mod root_system;
mod weight;
mod weyl;

pub use affine::{AffineReducedWord, AffineRoot, AffineWeylElement};
pub use root_system::{build_root_system, PiGroup, RootInfo, RootSystem, TypeLabel, MAX_ENUMERATED_WEYL};
pub use weight::Weight;
pub use weyl::FiniteWeylElement;

