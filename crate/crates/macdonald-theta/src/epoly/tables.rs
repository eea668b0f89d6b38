//! Orbit exponents `n_c(b)`, the table `m_c(b)`, and the Bruhat indicators
//! `ς_b(a)`, `ξ_b(c)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::char_series::CharacterSeries;
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;

/// `n_c(b)` for `b ∈ W(c)`; `None` when `X_b` is absent from `E†_c`.
pub type OrbitExponents = BTreeMap<Weight, Option<i64>>;

/// Reads the orbit part of `E†_c`, insisting that every coefficient is a
/// single power `q^{n}` with `n ≤ 0`.
pub fn orbit_exponents(rs: &RootSystem, c: &Weight, edag: &CharacterSeries) -> Result<OrbitExponents> {
    let mut out = BTreeMap::new();
    for b in rs.orbit(c) {
        let p = edag.coeff_poly(&b);
        let n = if p.is_zero() {
            None
        } else {
            match p.as_monomial() {
                Some((e, coef)) if coef.is_one() && e.is_integer() && e <= QExp::ZERO => Some(e.floor()),
                _ => {
                    return Err(Error::Consistency(format!(
                        "monomiality violated: coefficient of X{b} in E†{c} is {p}"
                    )))
                }
            }
        };
        out.insert(b, n);
    }
    Ok(out)
}

/// One step of the recursion from `c` to `s_i(c)`, `(c, α_i) < 0`:
/// `q^{n_{s_i(c)}(b)}` vanishes when `(b, α_i) ≤ 0` or
/// `n_c(s_i b) = n_c(b)`, and equals `q^{n_c(s_i b)}` otherwise.
pub fn orbit_exponents_step(rs: &RootSystem, c: &Weight, i: usize, n_c: &OrbitExponents) -> OrbitExponents {
    assert!(c.coroot(i) < 0, "step needs (c, α_i) < 0");
    n_c.keys()
        .map(|b| {
            let sb = rs.reflect(i, b);
            let value = if b.coroot(i) <= 0 || n_c[&sb] == n_c[b] { None } else { n_c[&sb] };
            (b.clone(), value)
        })
        .collect()
}

/// The path `b_- = c_0 → c_1 = s_{i_1}(c_0) → ⋯ → b` with `(c_k, α_{i_{k+1}}) < 0`.
pub fn path_from_antidominant(rs: &RootSystem, b: &Weight) -> Vec<(Weight, usize)> {
    let mut steps = Vec::new();
    let mut x = b.clone();
    while let Some(i) = (1..=rs.rank()).find(|&i| x.coroot(i) > 0) {
        let y = rs.reflect(i, &x);
        steps.push((y.clone(), i));
        x = y;
    }
    steps.reverse();
    steps
}

/// `m_c(b) = −n_c(u_b^{-1}(c_-))`, with `None` standing for `+∞`.
#[derive(Clone, Debug, Serialize)]
pub struct MTable {
    pub source: Weight,
    pub source_minus: Weight,
    /// `n_c` on the orbit of `c`.
    pub exponents: OrbitExponents,
}

impl MTable {
    /// Builds the table for `c` from `n_{c_-}` by the recursion.
    pub fn from_base(rs: &RootSystem, c: &Weight, base: &OrbitExponents) -> MTable {
        let mut n = base.clone();
        for (from, i) in path_from_antidominant(rs, c) {
            n = orbit_exponents_step(rs, &from, i, &n);
        }
        MTable { source: c.clone(), source_minus: rs.minus(c), exponents: n }
    }

    /// `m_c(b)`.
    pub fn m(&self, rs: &RootSystem, b: &Weight) -> Option<i64> {
        let target = rs.apply_inverse(&rs.u_of(b), &self.source_minus);
        self.exponents.get(&target).copied().flatten().map(|n| -n)
    }
}

/// `ς_b(a) = 1` iff `u_a ≥ u_b` in the Bruhat order, for `a ∈ W(b)`.
pub fn sigma(rs: &RootSystem, b: &Weight, a: &Weight) -> Result<bool> {
    if rs.minus(a) != rs.minus(b) {
        return Err(Error::Domain(format!("{a} is not in the orbit of {b}")));
    }
    Ok(rs.bruhat_leq(&rs.u_of(b), &rs.u_of(a)))
}

/// `ξ_b(c) = ς_b(u_c^{-1} w₀(b_-))`.
pub fn xi(rs: &RootSystem, b: &Weight, c: &Weight) -> bool {
    let top = rs.apply(rs.w0(), &rs.minus(b));
    let a = rs.apply_inverse(&rs.u_of(c), &top);
    sigma(rs, b, &a).expect("same orbit by construction")
}

/// `ς_b(w₀ u_c^{-1}(b_-))`, the indicator of the mixed kernel.
pub fn mixed_indicator(rs: &RootSystem, b: &Weight, c: &Weight) -> bool {
    let a = rs.apply(rs.w0(), &rs.apply_inverse(&rs.u_of(c), &rs.minus(b)));
    sigma(rs, b, &a).expect("same orbit by construction")
}
