//! The polynomials `Ē_b = E_b(t → 0)`, `E†_b = E_b(t → ∞)` and
//! `E†*_b = E†_b(X^{-1}; q^{-1})`, their norms `h⁰_b`, the exponent tables
//! `n_c(b)`/`m_c(b)`, and a generic-`t` engine for `E_b` itself.
//!
//! `Ē_b` comes from Demazure operators and is an exact polynomial. `E†*_b`
//! is solved from the pairing `⟨Ē_d E†*_b μ̄∘⟩ = δ_{db}h⁰_b`, and the
//! intertwiner recursion gives a second, independent route to `E†_b`.
//!
//! ```
//! use macdonald_theta::epoly::Engine;
//! use macdonald_theta::lattice_weyl::{build_root_system, TypeLabel, Weight};
//!
//! let a1 = build_root_system(TypeLabel::A, 1).unwrap();
//! let engine = Engine::new(&a1);
//! let e = engine.ebar(&Weight::new(&[-2])).unwrap();
//! assert_eq!(e.body.to_string(), "(1)·X(-2) + (1 + q)·X(0) + (1)·X(2)");
//! ```

mod ebar;
mod engine;
mod generic;
mod linalg;
mod norm;
mod tables;

use std::fmt;

use crate::char_series::{CharacterSeries, RationalT};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;

pub use ebar::{demazure_character, demazure_character_along, ebar_by_orthogonality, ebar_from_demazure};
pub use engine::Engine;
pub use generic::{generic_checks, generic_e, generic_e_star, GenericCheck, GenericEngine, GenericReport};
pub use norm::NormProduct;
pub use tables::{
    mixed_indicator, orbit_exponents, orbit_exponents_step, path_from_antidominant, sigma, xi, MTable, OrbitExponents,
};

/// Which limit (or specialization) a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `Ē_b`, coefficients in `ℤ_{≥0}[q]`.
    Bar,
    /// `E†_b`, coefficients in `ℤ_{≥0}[q^{-1}]`.
    Dag,
    /// `E†*_b`, leading monomial `X_{−b}`.
    DagStar,
    /// `E_b` at a rational `t`, coefficients expanded in `q`.
    GenericT,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::Bar => "bar",
            Flavor::Dag => "dag",
            Flavor::DagStar => "dag_star",
            Flavor::GenericT => "generic_t",
        };
        write!(f, "{s}")
    }
}

/// One of the polynomials above, labelled by its weight.
#[derive(Clone, Debug)]
pub struct EPoly {
    pub body: CharacterSeries,
    pub label: Weight,
    pub flavor: Flavor,
    pub t_spec: Option<RationalT>,
}

impl EPoly {
    /// The weight whose monomial leads: `b`, or `−b` for `E†*_b`.
    pub fn leading_weight(&self) -> Weight {
        match self.flavor {
            Flavor::DagStar => -&self.label,
            _ => self.label.clone(),
        }
    }

    /// Leading coefficient `1`, support in `{c ⪰ b}` (mirrored for
    /// `E†*`), and the positivity of the `t → 0`/`t → ∞` limits.
    pub fn check_invariants(&self, rs: &RootSystem) -> Result<()> {
        let lead = self.leading_weight();
        if !self.body.coeff_poly(&lead).is_one() {
            return Err(Error::Consistency(format!("{} {}: leading coefficient is not 1", self.flavor, self.label)));
        }
        for (w, p) in self.body.terms() {
            let c = if self.flavor == Flavor::DagStar { -w } else { w.clone() };
            if c != self.label && !rs.precedes(&self.label, &c) {
                return Err(Error::Consistency(format!("{} {}: monomial X{w} outside Σ_+", self.flavor, self.label)));
            }
            let positive = p.terms().all(|(e, coef)| {
                let sign_ok = match self.flavor {
                    Flavor::Bar | Flavor::DagStar => *e >= QExp::ZERO,
                    Flavor::Dag => *e <= QExp::ZERO,
                    Flavor::GenericT => true,
                };
                sign_ok && (self.flavor == Flavor::GenericT || (coef.is_integer() && !coef.is_negative() && e.is_integer()))
            });
            if !positive {
                return Err(Error::Consistency(format!(
                    "{} {}: coefficient {p} of X{w} violates positivity",
                    self.flavor, self.label
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}
