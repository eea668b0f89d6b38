//! One-step kernels: the coefficients of `E†*_b/h⁰_b` or `Ē_b/h⁰_b` after
//! multiplying by a single `θ̂_v`.

use serde::Serialize;

use crate::char_series::{QPoly, QSeries, ThetaTwist};
use crate::epoly::{mixed_indicator, xi, Engine};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

use super::Route;

/// The expansion a single step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum StepKind {
    /// `E†*_c θ̂ → E†*_b`, exponent `(b_- − c_-)²/2 + m_c(b)`.
    Dag,
    /// `Ē_c θ̂ → Ē_b`, exponent `(c_- − b_-)²/2 + m_b(c)`.
    Bar,
    /// `Ē_d θ̂ → E†*_b` with `d = c^ι`: `ς_b(w₀u_c^{-1}(b_-)) q^{(b_- − c_-)²/2}`.
    Switch,
    /// `Ē_d θ̂ → E†*_b` read as `ξ_b(d) q^{(d_- − b_-)²/2 + (d_-, b_-)}`.
    LiteralSwitch,
}

/// One transfer coefficient `from → to`, already divided by `h⁰_to`.
#[derive(Clone, Debug, Serialize)]
pub struct StepKernel {
    pub from: Weight,
    pub to: Weight,
    /// The full power of `q` in the numerator (energy plus `m`-term).
    #[serde(serialize_with = "super::serialize_display")]
    pub exponent: QExp,
    /// `(b_- − c_-)²/2`, the part used to prune chains.
    #[serde(serialize_with = "super::serialize_display")]
    pub energy: QExp,
    /// `v(·)^{-1}`: `±1` for characters, `1` on selected cosets.
    pub sign: i64,
    /// `sign · q^exponent / h⁰_to` up to the cutoff.
    #[serde(serialize_with = "super::serialize_display")]
    pub value: QSeries,
}

impl StepKernel {
    /// `sign · q^exponent` without the norm.
    pub fn numerator(&self) -> QPoly {
        QPoly::monomial(self.exponent, Rat::int(self.sign))
    }
}

/// Antidominant `d` with `(d − centre)²/2 ≤ budget`.
pub(crate) fn antidominant_near(rs: &RootSystem, centre: &Weight, budget: QExp) -> Vec<Weight> {
    if budget < QExp::ZERO {
        return Vec::new();
    }
    let bound = &budget.to_rat() * &Rat::int(2);
    let mut out: Vec<Weight> =
        rs.weights_in_ball(&bound).into_iter().map(|x| centre + &x).filter(|d| d.is_antidominant()).collect();
    out.sort();
    out
}

/// The lemma behind chain pruning: a finite `m_x(y)` with `y ∈ P_-` forces
/// `x ∈ P_-` and `m_x(y) = 0`.
fn check_pruning(x: &Weight, y: &Weight, m: i64) -> Result<()> {
    if m < 0 {
        return Err(Error::Consistency(format!("m_{x}({y}) = {m} is negative")));
    }
    if y.is_antidominant() && (!x.is_antidominant() || m != 0) {
        return Err(Error::Consistency(format!("pruning violated: m_{x}({y}) = {m} with {y} in P_-")));
    }
    Ok(())
}

/// The kernels out of `from` whose energy is at most `budget`, each known
/// up to `q^cutoff`.
pub(crate) fn kernels_from(
    engine: &Engine<'_>,
    kind: StepKind,
    from: &Weight,
    twist: &ThetaTwist,
    budget: QExp,
    cutoff: QExp,
) -> Result<Vec<StepKernel>> {
    let rs = engine.root_system();
    // The weight whose antidominant representative the energy is measured from.
    let centre = match kind {
        StepKind::Switch => rs.minus(&rs.iota(from)),
        _ => rs.minus(from),
    };
    let dag_table = if kind == StepKind::Dag { Some(engine.m_table(from)?) } else { None };
    let mut out = Vec::new();
    for target_minus in antidominant_near(rs, &centre, budget) {
        let diff = &target_minus - &centre;
        let energy = rs.half_norm(&diff);
        for b in rs.orbit(&target_minus) {
            let (extra, twist_arg) = match kind {
                StepKind::Dag => {
                    let Some(m) = dag_table.as_ref().expect("built above").m(rs, &b) else { continue };
                    check_pruning(from, &b, m)?;
                    (QExp::int(m), from - &b)
                }
                StepKind::Bar => {
                    let Some(m) = engine.m_table(&b)?.m(rs, from) else { continue };
                    check_pruning(&b, from, m)?;
                    (QExp::int(m), &b - from)
                }
                StepKind::Switch => {
                    let c = rs.iota(from);
                    if !mixed_indicator(rs, &b, &c) {
                        continue;
                    }
                    (QExp::ZERO, &c - &b)
                }
                StepKind::LiteralSwitch => {
                    if !xi(rs, &b, from) {
                        continue;
                    }
                    (rs.pair_exp(&rs.minus(from), &target_minus), -&(from + &b))
                }
            };
            let sign = twist.value(rs, &twist_arg);
            if sign == 0 {
                continue;
            }
            let exponent = energy + extra;
            if exponent > budget {
                continue;
            }
            let inv = engine.h0_poly(&b)?.inverse_series(cutoff - exponent).expect("h0 is a unit");
            let value = QSeries::truncated(inv.shift(exponent).scale(&Rat::int(sign)), cutoff);
            out.push(StepKernel { from: from.clone(), to: b, exponent, energy, sign, value });
        }
    }
    Ok(out)
}

/// The kernels of one step of `route` out of `c` up to `q^cutoff`: dag and
/// bar steps as above, and for the mixed routes the switching step out of
/// `Ē_{c^ι}`, i.e. `from = c^ι`.
pub fn step_coefficients(
    engine: &Engine<'_>,
    c: &Weight,
    route: Route,
    twist: &ThetaTwist,
    cutoff: QExp,
) -> Result<Vec<StepKernel>> {
    let rs = engine.root_system();
    twist.validate(rs)?;
    let (kind, from) = match route {
        Route::Dag => (StepKind::Dag, c.clone()),
        Route::Bar => (StepKind::Bar, c.clone()),
        Route::Mixed { .. } => (StepKind::Switch, rs.iota(c)),
        Route::MixedLiteral { .. } => (StepKind::LiteralSwitch, c.clone()),
    };
    kernels_from(engine, kind, &from, twist, cutoff, cutoff)
}
