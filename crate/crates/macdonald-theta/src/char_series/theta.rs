//! Theta functions `θ_v`, `θ_ϖ` and their normalized versions `θ̂`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::measure::simple_euler_product;
use super::qpoly::QSeries;
use super::series::CharacterSeries;
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// A twist of the theta function: a real character of `Π ≅ P/Q`, or a set
/// of cosets `ϖ ⊆ Π` to sum over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaTwist {
    /// `v = 1′`.
    Trivial,
    /// `v(b) = exp(2πi (b, ω_k^∨))`, which must be `±1` on all of `P`.
    Sign(usize),
    /// `θ_ϖ = Σ_{b ∈ ϖ + Q}`; cosets are named by `r ∈ O` (`0` is `Q`).
    Coset(BTreeSet<usize>),
}

impl ThetaTwist {
    /// Checks that the twist makes sense for `rs`.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        match self {
            ThetaTwist::Trivial => Ok(()),
            ThetaTwist::Sign(k) => {
                if *k == 0 || *k > rs.rank() {
                    return Err(Error::Config(format!("sign index {k} out of range 1..={}", rs.rank())));
                }
                for r in rs.coset_indices() {
                    if r == 0 {
                        continue;
                    }
                    let c = &rs.alpha_coords(&Weight::fundamental(rs.rank(), r))[k - 1];
                    if !(c * &Rat::int(2)).is_integer() {
                        return Err(Error::Config(format!(
                            "character sign:{k} takes non-real values on {}; use coset twists",
                            rs.name()
                        )));
                    }
                }
                Ok(())
            }
            ThetaTwist::Coset(set) => {
                let valid = rs.coset_indices();
                match set.iter().find(|r| !valid.contains(r)) {
                    Some(r) => Err(Error::Config(format!("{r} is not a coset index of {}", rs.name()))),
                    None => Ok(()),
                }
            }
        }
    }

    /// The default sign twist: the first `k` giving a nontrivial real
    /// character.
    pub fn default_sign(rs: &RootSystem) -> Result<ThetaTwist> {
        for k in 1..=rs.rank() {
            let tw = ThetaTwist::Sign(k);
            let nontrivial = || {
                rs.coset_indices().into_iter().filter(|&r| r != 0).any(|r| tw.value(rs, &Weight::fundamental(rs.rank(), r)) < 0)
            };
            if tw.validate(rs).is_ok() && nontrivial() {
                return Ok(tw);
            }
        }
        Err(Error::Config(format!("{} has no nontrivial real character", rs.name())))
    }

    /// Is this a character (as opposed to a coset selection)?
    pub fn is_character(&self) -> bool {
        !matches!(self, ThetaTwist::Coset(_))
    }

    /// `v(b) ∈ {±1}` for character twists; for coset twists `1` on the
    /// selected cosets and `0` elsewhere.
    pub fn value(&self, rs: &RootSystem, b: &Weight) -> i64 {
        match self {
            ThetaTwist::Trivial => 1,
            ThetaTwist::Sign(k) => {
                let c = &rs.alpha_coords(b)[k - 1] * &Rat::int(2);
                let n = c.to_i64().expect("validated real character");
                if n.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
            ThetaTwist::Coset(set) => i64::from(set.contains(&rs.coset(b))),
        }
    }
}

impl fmt::Display for ThetaTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaTwist::Trivial => write!(f, "trivial"),
            ThetaTwist::Sign(k) => write!(f, "sign:{k}"),
            ThetaTwist::Coset(set) => {
                let parts: Vec<String> = set.iter().map(|r| r.to_string()).collect();
                write!(f, "coset:{}", parts.join("+"))
            }
        }
    }
}

/// Parsed twist that may still need a root system to resolve `sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistSpec {
    Resolved(ThetaTwist),
    DefaultSign,
}

impl TwistSpec {
    pub fn resolve(&self, rs: &RootSystem) -> Result<ThetaTwist> {
        let tw = match self {
            TwistSpec::Resolved(t) => t.clone(),
            TwistSpec::DefaultSign => ThetaTwist::default_sign(rs)?,
        };
        tw.validate(rs)?;
        Ok(tw)
    }
}

impl FromStr for TwistSpec {
    type Err = Error;

    /// `trivial`, `sign`, `sign:<k>`, `coset:<r>` or `coset:<r>+<r'>…`.
    fn from_str(s: &str) -> Result<TwistSpec> {
        let bad = || Error::Config(format!("cannot parse twist '{s}'"));
        match s.split_once(':') {
            None if s == "trivial" => Ok(TwistSpec::Resolved(ThetaTwist::Trivial)),
            None if s == "sign" => Ok(TwistSpec::DefaultSign),
            Some(("sign", k)) => Ok(TwistSpec::Resolved(ThetaTwist::Sign(k.parse().map_err(|_| bad())?))),
            Some(("coset", rs)) => {
                let set = rs.split('+').map(|r| r.parse::<usize>().map_err(|_| bad())).collect::<Result<BTreeSet<_>>>()?;
                Ok(TwistSpec::Resolved(ThetaTwist::Coset(set)))
            }
            _ => Err(bad()),
        }
    }
}

/// `θ_v = Σ_b v(b) q^{(b,b)/2} X_b` (or the coset sum) up to `q^cutoff`.
pub fn theta(rs: &RootSystem, twist: &ThetaTwist, cutoff: QExp) -> CharacterSeries {
    let bound = &cutoff.to_rat() * &Rat::int(2);
    let mut out = CharacterSeries::zero(rs.rank()).with_cutoff(cutoff);
    for b in rs.weights_in_ball(&bound) {
        let v = twist.value(rs, &b);
        if v != 0 {
            out.add_term(&b, rs.half_norm(&b), &Rat::int(v));
        }
    }
    out
}

/// `θ̂ = θ · ∏_{i=1}^n (q_i; q_i)_∞^{-1}`.
pub fn theta_hat(rs: &RootSystem, twist: &ThetaTwist, cutoff: QExp) -> CharacterSeries {
    let inv = simple_euler_product(rs, cutoff).inverse_series(cutoff).expect("unit");
    theta(rs, twist, cutoff).mul_qseries(&QSeries::truncated(inv, cutoff))
}
