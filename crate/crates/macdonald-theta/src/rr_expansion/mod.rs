//! Rogers–Ramanujan type expansions of `E·θ̂^p`.
//!
//! Multiplying `E†*_c` (or `Ē_c`) by a normalized theta function and
//! re-expanding gives explicit one-step kernels ([`step_coefficients`]).
//! Iterating them yields the coefficients `Ξ` of products of theta
//! functions ([`xi_chain`]), which are cross-checked against brute
//! multiplication ([`xi_direct`]). On top of this sit the `A1` closed form,
//! the sums over `P_-` for `c = 0`, and Demazure-slice multiplicities.
//!
//! ```
//! use macdonald_theta::epoly::Engine;
//! use macdonald_theta::lattice_weyl::{build_root_system, TypeLabel, Weight};
//! use macdonald_theta::rr_expansion::{xi_chain, Route};
//! use macdonald_theta::char_series::ThetaTwist;
//! use macdonald_theta::QExp;
//!
//! let a1 = build_root_system(TypeLabel::A, 1).unwrap();
//! let engine = Engine::new(&a1);
//! let zero = Weight::new(&[0]);
//! // One theta function, c = 0: the coefficient of E†*_a/h⁰_a is q^{a²/4}.
//! let xi = xi_chain(&engine, &zero, &Weight::new(&[3]), &[ThetaTwist::Trivial], Route::Dag, QExp::int(4)).unwrap();
//! assert_eq!(xi.value.to_string(), "q^(9/4) + O(q^4+)");
//! ```

mod a1;
mod chain;
mod kernels;
mod modular;
mod slices;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::char_series::{theta_hat, CharacterSeries, QSeries, ThetaTwist};
use crate::epoly::Engine;
use crate::error::Error;
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;

pub use a1::a1_closed_form;
pub use chain::{xi_chain, xi_direct, xi_row};
pub use kernels::{step_coefficients, StepKernel};
pub use modular::{check_modular_twists, modular_sum};
pub use slices::{demazure_character_gch, graded_block, slice_character, slice_multiplicities, SliceTable};

/// Which expansion a chain of kernels follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `E†*_c θ̂ = Σ_b (…) E†*_b/h⁰_b` at every step.
    Dag,
    /// `Ē_c θ̂ = Σ_b (…) Ē_b/h⁰_b` at every step.
    Bar,
    /// Start from `Ē_{c^ι}`, take `switch` bar steps, pass to `E†*` with
    /// the `Ē_{c^ι}θ̂` kernel, then continue with dag steps.
    Mixed { switch: usize },
    /// The mixed chain with the switch kernel
    /// `ξ_{b_{r+1}}(b_r) q^{(b_r^- − b_{r+1}^-)²/2 + (b_r^-, b_{r+1}^-)}` and bar
    /// steps starting from `c`. Kept for comparison only; see the README.
    MixedLiteral { switch: usize },
}

impl Route {
    /// Largest depth-independent sanity check: the switch must happen
    /// within the chain.
    pub fn validate(&self, depth: usize) -> crate::Result<()> {
        match self {
            Route::Mixed { switch } | Route::MixedLiteral { switch } if *switch >= depth => {
                Err(Error::Config(format!("switch index {switch} must be below the depth {depth}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Dag => write!(f, "dag"),
            Route::Bar => write!(f, "bar"),
            Route::Mixed { switch } => write!(f, "mixed-{switch}"),
            Route::MixedLiteral { switch } => write!(f, "mixed-literal-{switch}"),
        }
    }
}

impl FromStr for Route {
    type Err = Error;

    /// `dag`, `bar`, `mixed` (switch 0), `mixed-<r>` or `mixed-literal-<r>`.
    fn from_str(s: &str) -> crate::Result<Route> {
        let bad = || Error::Config(format!("cannot parse route '{s}'"));
        match s {
            "dag" => Ok(Route::Dag),
            "bar" => Ok(Route::Bar),
            "mixed" => Ok(Route::Mixed { switch: 0 }),
            _ => {
                if let Some(r) = s.strip_prefix("mixed-literal-") {
                    Ok(Route::MixedLiteral { switch: r.parse().map_err(|_| bad())? })
                } else if let Some(r) = s.strip_prefix("mixed-") {
                    Ok(Route::Mixed { switch: r.parse().map_err(|_| bad())? })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// The coefficient `Ξ^{c,a}_{p,𝐯}` of `E†*_a/h⁰_a` (or `Ē_a/h⁰_a` on the
/// bar route) in the expansion of `E·θ̂_{v_1}⋯θ̂_{v_p}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionCoefficient {
    pub source: Weight,
    pub target: Weight,
    pub depth: usize,
    pub twists: Vec<String>,
    pub route: Route,
    #[serde(serialize_with = "serialize_display")]
    pub value: QSeries,
    /// Smallest `Σ (b⁻_{k−1} − b⁻_k)²/2` over chains with a nonzero term;
    /// `None` when no chain contributes below the cutoff.
    #[serde(serialize_with = "serialize_opt_display")]
    pub min_energy: Option<QExp>,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn serialize_opt_display<T: fmt::Display, S: serde::Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// `θ̂_v` next to its two expansions from the kernels out of `c = 0`:
/// `Σ_{b ∈ P} q^{b²/2}/(v(b_-)h⁰_b) E†*_b` and `Σ_{b ∈ P_-} q^{b²/2}/(v(−b_-)h⁰_b) Ē_b`.
#[derive(Clone, Debug)]
pub struct ThetaExpansions {
    pub theta_hat: CharacterSeries,
    pub via_dag: CharacterSeries,
    pub via_bar: CharacterSeries,
}

impl ThetaExpansions {
    pub fn compute(engine: &Engine<'_>, twist: &ThetaTwist, cutoff: QExp) -> crate::Result<ThetaExpansions> {
        let rs = engine.root_system();
        let zero = Weight::zero(rs.rank());
        let mut via_dag = CharacterSeries::zero(rs.rank()).with_cutoff(cutoff);
        for k in step_coefficients(engine, &zero, Route::Dag, twist, cutoff)? {
            via_dag = &via_dag + &engine.edag_star_exact(&k.to)?.body.mul_qseries(&k.value);
        }
        let mut via_bar = CharacterSeries::zero(rs.rank()).with_cutoff(cutoff);
        for k in step_coefficients(engine, &zero, Route::Bar, twist, cutoff)? {
            via_bar = &via_bar + &engine.ebar(&k.to)?.body.mul_qseries(&k.value);
        }
        Ok(ThetaExpansions { theta_hat: theta_hat(rs, twist, cutoff), via_dag, via_bar })
    }

    /// The first weight where either expansion differs from `θ̂`.
    pub fn discrepancy(&self) -> Option<(Weight, crate::char_series::QPoly)> {
        self.theta_hat.first_difference(&self.via_dag).or_else(|| self.theta_hat.first_difference(&self.via_bar))
    }
}

/// `θ̂_{v_1} ⋯ θ̂_{v_p}` up to `q^cutoff`; the empty product is `1`.
pub fn theta_hat_product(rs: &RootSystem, twists: &[ThetaTwist], cutoff: QExp) -> CharacterSeries {
    let mut out = CharacterSeries::one(rs.rank());
    for twist in twists {
        out = &out * &theta_hat(rs, twist, cutoff);
    }
    out
}
