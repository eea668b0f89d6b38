//! Operators built from `G_i = (X_{α_i} − 1)^{-1}(s_i − 1)`.
//!
//! Every operator in the crate is a combination of `s_i` and `G_i`, and
//! `G_i` acts on monomials by a finite geometric sum: with
//! `Z = X_{α_i}` and `k` the affine pairing of the monomial with `α_i^∨`,
//! `s_i(X) = X Z^{−k}` and
//!
//! - `G_i(X) = −Σ_{m=1}^{k} X Z^{−m}` for `k > 0`,
//! - `G_i(X) = 0` for `k = 0`,
//! - `G_i(X) = Σ_{m=0}^{−k−1} X Z^{m}` for `k < 0`.
//!
//! For `i = 0` the root `α_0` is affine and its monomial carries a power of
//! `q`. Two conventions are needed: the polynomial representation of the
//! double affine Hecke algebra uses `X_{α_0} = q X_{−ϑ}` (level zero), the
//! Demazure operators of level-one modules use `X_{α_0} = q^{-1} X_{−ϑ}`
//! with `s_0` acting at level `−1`.

use super::generic_t::RationalT;
use super::series::CharacterSeries;
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// Which action of `s_0` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineLevel {
    /// `X_{α_0} = q X_{−ϑ}`, `s_0(X_b) = X_b X_ϑ^{−(b,ϑ)} q^{(b,ϑ)}`.
    Zero,
    /// `X_{α_0} = q^{-1} X_{−ϑ}`, `s_0` at level `−1`.
    MinusOne,
}

/// `(Z weight, Z q-exponent, k)` for the monomial `X_λ`.
fn reflection_data(rs: &RootSystem, i: usize, level: AffineLevel, lambda: &Weight) -> (Weight, QExp, i64) {
    if i == 0 {
        let theta = rs.theta_short();
        let idx = rs.root_index(theta).expect("highest short root");
        let pairing = rs.coroot_pairing(lambda, idx);
        match level {
            AffineLevel::Zero => (-theta, QExp::int(1), -pairing),
            AffineLevel::MinusOne => (-theta, QExp::int(-1), -1 - pairing),
        }
    } else {
        (rs.simple_root(i), QExp::ZERO, lambda.coroot(i))
    }
}

fn check_affine_exact(i: usize, f: &CharacterSeries) {
    assert!(i != 0 || f.is_exact(), "the affine reflection s_0 needs an exact polynomial");
}

/// `s_i(f)`.
///
/// # Panics
/// For `i = 0` on a truncated series.
pub fn reflection(rs: &RootSystem, i: usize, level: AffineLevel, f: &CharacterSeries) -> CharacterSeries {
    check_affine_exact(i, f);
    let mut out = f.empty_like();
    for (lambda, p) in f.terms() {
        let (z, zq, k) = reflection_data(rs, i, level, lambda);
        out.add_poly(&lambda.add_scaled(&z, -k), &p.shift(zq * -k));
    }
    out
}

/// `G_i(f) = (X_{α_i} − 1)^{-1}(s_i − 1)(f)`.
///
/// # Panics
/// For `i = 0` on a truncated series.
pub fn divided_difference(rs: &RootSystem, i: usize, level: AffineLevel, f: &CharacterSeries) -> CharacterSeries {
    check_affine_exact(i, f);
    let mut out = f.empty_like();
    for (lambda, p) in f.terms() {
        let (z, zq, k) = reflection_data(rs, i, level, lambda);
        if k > 0 {
            let neg = p.scale(&Rat::int(-1));
            for m in 1..=k {
                out.add_poly(&lambda.add_scaled(&z, -m), &neg.shift(zq * -m));
            }
        } else if k < 0 {
            for m in 0..-k {
                out.add_poly(&lambda.add_scaled(&z, m), &p.shift(zq * m));
            }
        }
    }
    out
}

/// Multiplication by `Z = X_{α_i}` in the chosen convention.
fn times_z(rs: &RootSystem, i: usize, level: AffineLevel, f: &CharacterSeries) -> CharacterSeries {
    let (z, zq, _) = reflection_data(rs, i, level, &Weight::zero(rs.rank()));
    f.map_weights(|w| w + &z).shift_q(zq)
}

/// The Demazure–Lusztig operator
/// `T_i = t_i^{1/2} s_i + (t_i^{1/2} − t_i^{−1/2}) G_i` at a rational `t`,
/// in the level-zero convention.
pub fn dl_operator(rs: &RootSystem, i: usize, f: &CharacterSeries, t: &RationalT) -> CharacterSeries {
    let nu = if i == 0 { 1 } else { rs.nu(i) };
    let half = t.half_power(nu, 1);
    let diff = &half - &half.recip();
    let s = reflection(rs, i, AffineLevel::Zero, f).scale(&half);
    let g = divided_difference(rs, i, AffineLevel::Zero, f).scale(&diff);
    &s + &g
}

/// `T_i^{-1} = T_i − (t_i^{1/2} − t_i^{−1/2})`.
pub fn dl_operator_inverse(rs: &RootSystem, i: usize, f: &CharacterSeries, t: &RationalT) -> CharacterSeries {
    let nu = if i == 0 { 1 } else { rs.nu(i) };
    let half = t.half_power(nu, 1);
    let diff = &half - &half.recip();
    &dl_operator(rs, i, f, t) - &f.scale(&diff)
}

/// `(T_i^†)′ = X_{α_i}(X_{α_i} − 1)^{-1}(s_i − 1)`.
pub fn tdag_prime(rs: &RootSystem, i: usize, f: &CharacterSeries) -> CharacterSeries {
    times_z(rs, i, AffineLevel::Zero, &divided_difference(rs, i, AffineLevel::Zero, f))
}

/// The bar intertwiner `T̄_i′ = 1 − G_i`: it fixes `X_b` for
/// `(b, α_i) = 0` and sends `X_b` to `X_b + … + X_{s_i(b)}` for
/// `(b, α_i) > 0`, and it is idempotent.
pub fn tbar_prime(rs: &RootSystem, i: usize, f: &CharacterSeries) -> CharacterSeries {
    f - &divided_difference(rs, i, AffineLevel::Zero, f)
}

/// The Demazure operator `f ↦ (f − X_{α_i} s_i(f))/(1 − X_{α_i}) = f + Z·G_i(f)`.
pub fn demazure(rs: &RootSystem, i: usize, level: AffineLevel, f: &CharacterSeries) -> CharacterSeries {
    f + &times_z(rs, i, level, &divided_difference(rs, i, level, f))
}
