//! Laurent polynomials in `X_b` over truncated q-series, the operators
//! acting on them, the measures `μ̄`/`μ∘` and theta functions.
//!
//! Exponents of `q` live in the lattice of [`QExp`](crate::QExp), so
//! `(b, b)/2` and the `π_r`-actions never leave it. Precision is tracked
//! explicitly: every series knows the largest exponent up to which its
//! coefficients are exact, and arithmetic propagates that cutoff.
//!
//! ```
//! use macdonald_theta::char_series::{mu_bar_circ, CharacterSeries};
//! use macdonald_theta::lattice_weyl::{build_root_system, TypeLabel};
//! use macdonald_theta::QExp;
//!
//! let a1 = build_root_system(TypeLabel::A, 1).unwrap();
//! let mu = mu_bar_circ(&a1, QExp::int(6));
//! let ct = mu.constant_term();
//! assert!(ct.poly().is_one());
//! assert_eq!(ct.cutoff(), Some(QExp::int(6)));
//! # let _ = CharacterSeries::one(1);
//! ```

mod action;
mod generic_t;
mod measure;
mod operators;
mod qpoly;
mod series;
mod theta;

pub use action::{act, act_finite, act_pi, act_w0, star};
pub use generic_t::{eval_rho, eval_sharp, x_at_rho, y_eigenvalue, RationalT, RhoSign};
pub use measure::{
    euler_product, inner_product_bar, mehta_macdonald_constant, mu_bar, mu_bar_circ, mu_circ_generic, pairing,
    root_height, simple_euler_product,
};
pub use operators::{
    demazure, divided_difference, dl_operator, dl_operator_inverse, reflection, tbar_prime, tdag_prime, AffineLevel,
};
pub use qpoly::{QPoly, QSeries};
pub use series::{CharacterSeries, TermRecord};
pub use theta::{theta, theta_hat, ThetaTwist, TwistSpec};
