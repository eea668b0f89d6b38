//! Rational specializations of `t` and evaluation at `q^{±ρ_k}`.

use std::fmt;

use super::qpoly::{QPoly, QSeries};
use super::series::CharacterSeries;
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// A generic rational point for the parameters `t_ν`.
///
/// The base `r` is the square root of `t`: `t_ν^{1/2} = r^{m_ν}` with
/// `m_1` for short roots and `m_2` for long ones. Working with the square
/// root keeps every `t_ν^{±1/2}` that the operators need rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalT {
    base: Rat,
    m_short: i64,
    m_long: i64,
}

impl RationalT {
    pub fn new(base: Rat, m_short: i64, m_long: i64) -> Result<RationalT> {
        if base.is_zero() || base.abs().is_one() {
            return Err(Error::Config(format!("t-base {base} must avoid 0 and ±1")));
        }
        if m_short <= 0 || m_long <= 0 {
            return Err(Error::Config("t-exponents must be positive".into()));
        }
        Ok(RationalT { base, m_short, m_long })
    }

    /// `t_ν^{1/2} = r` for all lengths.
    pub fn uniform(base: Rat) -> Result<RationalT> {
        RationalT::new(base, 1, 1)
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn exponents(&self) -> (i64, i64) {
        (self.m_short, self.m_long)
    }

    fn m(&self, nu: i64) -> i64 {
        if nu == 1 {
            self.m_short
        } else {
            self.m_long
        }
    }

    /// `(t_ν^{1/2})^k`.
    pub fn half_power(&self, nu: i64, k: i64) -> Rat {
        self.base.pow(self.m(nu) * k)
    }

    /// `t_ν`.
    pub fn t(&self, nu: i64) -> Rat {
        self.half_power(nu, 2)
    }

    /// The same point with `t` replaced by `t^{-1}`.
    pub fn inverse(&self) -> RationalT {
        RationalT { base: self.base.recip(), ..self.clone() }
    }
}

impl fmt::Display for RationalT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^(1/2)={} (m_sht={}, m_lng={})", self.base, self.m_short, self.m_long)
    }
}

/// `X_a(q^{ρ_k}) = ∏_ν t_ν^{p_ν(a)}` with
/// `p_ν(a) = ½ Σ_{α>0, ν_α=ν} (α^∨, a)`.
pub fn x_at_rho(rs: &RootSystem, a: &Weight, t: &RationalT) -> Rat {
    let mut out = Rat::one();
    for nu in [1, 2, 3] {
        let twice_p: i64 = rs.positive_roots().filter(|r| r.nu == nu).map(|r| {
            r.coroot.iter().zip(a.coords()).map(|(&k, &l)| k * l as i64).sum::<i64>()
        }).sum();
        if twice_p != 0 {
            out *= &t.half_power(nu, twice_p);
        }
    }
    out
}

/// Which point `q^{±ρ_k}` to evaluate at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoSign {
    Plus,
    Minus,
}

/// `f(q^{±ρ_k})`: substitutes `X_a ↦ ∏_ν t_ν^{±p_ν(a)}`.
pub fn eval_rho(rs: &RootSystem, f: &CharacterSeries, sign: RhoSign, t: &RationalT) -> QSeries {
    let mut acc = QPoly::zero();
    for (a, p) in f.terms() {
        let mut v = x_at_rho(rs, a, t);
        if sign == RhoSign::Minus {
            v = v.recip();
        }
        acc.add_scaled(p, &v, QExp::ZERO, None);
    }
    match f.cutoff() {
        None => QSeries::exact(acc),
        Some(d) => QSeries::truncated(acc, d),
    }
}

/// `b_# = b − u_b^{-1}(ρ_k)`, returned as the pair
/// `(b, u_b)` whose evaluation rule is
/// `X_a(q^{b_#}) = q^{(a,b)} X_{u_b(a)}(q^{ρ_k})^{-1}`.
pub fn eval_sharp(rs: &RootSystem, f: &CharacterSeries, b: &Weight, t: &RationalT) -> QSeries {
    let u = rs.u_of(b);
    let mut acc = QPoly::zero();
    for (a, p) in f.terms() {
        let v = x_at_rho(rs, &rs.apply(&u, a), t).recip();
        acc.add_scaled(p, &v, rs.pair_exp(a, b), None);
    }
    match f.cutoff() {
        None => QSeries::exact(acc),
        Some(d) => {
            // Evaluation shifts exponents by (a, b), which can be negative.
            let low = f.support().map(|a| rs.pair_exp(a, b)).min().unwrap_or(QExp::ZERO);
            QSeries::truncated(acc, d + low)
        }
    }
}

/// `X_a(q^{-b_#})` for a monomial: the joint eigenvalue of `Y_a` on `E_b`.
pub fn y_eigenvalue(rs: &RootSystem, a: &Weight, b: &Weight, t: &RationalT) -> (QExp, Rat) {
    let u = rs.u_of(b);
    (-rs.pair_exp(a, b), x_at_rho(rs, &rs.apply(&u, a), t))
}
