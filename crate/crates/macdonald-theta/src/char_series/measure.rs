//! The measures `μ̄`, `μ̄∘` and `μ∘`, and the constant-term pairing.
//!
//! At `t = 0` each positive root contributes the Jacobi triple product
//! `∏_{j≥0}(1 − z p^j)(1 − z^{-1}p^{j+1}) = (p;p)_∞^{-1} Σ_n (−1)^n p^{n(n−1)/2} z^n`
//! with `z = X_α`, `p = q_α`, so `μ̄` is a finite Laurent polynomial modulo
//! any power of `q` and no weight window is needed.

use std::collections::BTreeMap;

use super::generic_t::RationalT;
use super::qpoly::{QPoly, QSeries};
use super::series::CharacterSeries;
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// `(p; p)_∞ = ∏_{j≥1}(1 − p^j)` with `p = q^step`, up to `q^cutoff`.
pub fn euler_product(step: i64, cutoff: QExp) -> QPoly {
    let mut out = QPoly::one();
    let mut j = 1;
    while QExp::int(step * j) <= cutoff {
        let factor = &QPoly::one() - &QPoly::q_power(QExp::int(step * j));
        out = out.mul_truncated(&factor, Some(cutoff));
        j += 1;
    }
    out
}

/// `∏_{i=1}^n (q_i; q_i)_∞` up to `q^cutoff`: the inverse of `⟨μ̄⟩`.
pub fn simple_euler_product(rs: &RootSystem, cutoff: QExp) -> QPoly {
    let mut out = QPoly::one();
    for i in 1..=rs.rank() {
        out = out.mul_truncated(&euler_product(rs.nu(i), cutoff), Some(cutoff));
    }
    out
}

/// `Σ_n (−1)^n p^{n(n−1)/2} X_α^n` truncated at `q^cutoff`.
fn jacobi_sum(alpha: &Weight, nu: i64, cutoff: QExp) -> CharacterSeries {
    let mut out = CharacterSeries::zero(alpha.rank()).with_cutoff(cutoff);
    // n(n−1)/2 is symmetric under n ↦ 1 − n, so scan outward from 0 and 1.
    let mut n = 0i64;
    loop {
        let e = QExp::int(nu * n * (n - 1) / 2);
        if e > cutoff {
            break;
        }
        for m in if n == 0 { vec![0, 1] } else { vec![n + 1, -n] } {
            let sign = if m.rem_euclid(2) == 0 { Rat::one() } else { Rat::int(-1) };
            let w = Weight::zero(alpha.rank()).add_scaled(alpha, m);
            out.add_term(&w, QExp::int(nu * m * (m - 1) / 2), &sign);
        }
        n += 1;
    }
    out
}

/// `∏_{α>0} Σ_n (−1)^n q_α^{n(n−1)/2} X_α^n`.
fn jacobi_product(rs: &RootSystem, cutoff: QExp) -> CharacterSeries {
    let mut out = CharacterSeries::one(rs.rank()).with_cutoff(cutoff);
    for r in rs.positive_roots() {
        out = &out * &jacobi_sum(&r.weight, r.nu, cutoff);
    }
    out
}

fn positive_euler_product(rs: &RootSystem, cutoff: QExp) -> QPoly {
    let mut out = QPoly::one();
    for r in rs.positive_roots() {
        out = out.mul_truncated(&euler_product(r.nu, cutoff), Some(cutoff));
    }
    out
}

/// `μ̄ = ∏_{α>0}∏_{j≥0}(1 − X_α q_α^j)(1 − X_α^{-1} q_α^{j+1})` up to
/// `q^cutoff`.
pub fn mu_bar(rs: &RootSystem, cutoff: QExp) -> CharacterSeries {
    let inv = positive_euler_product(rs, cutoff).inverse_series(cutoff).expect("unit");
    jacobi_product(rs, cutoff).mul_qseries(&QSeries::truncated(inv, cutoff))
}

/// `μ̄∘ = μ̄ / ⟨μ̄⟩`, normalized to constant term `1`.
pub fn mu_bar_circ(rs: &RootSystem, cutoff: QExp) -> CharacterSeries {
    let numer = simple_euler_product(rs, cutoff);
    let denom = positive_euler_product(rs, cutoff).inverse_series(cutoff).expect("unit");
    let scalar = numer.mul_truncated(&denom, Some(cutoff));
    jacobi_product(rs, cutoff).mul_qseries(&QSeries::truncated(scalar, cutoff))
}

/// `⟨f g μ⟩ = Σ f_a g_b μ_{−a−b}`, without forming the full product.
pub fn pairing(f: &CharacterSeries, g: &CharacterSeries, mu: &CharacterSeries) -> QSeries {
    let vf = f.valuation_bound().unwrap_or(QExp::ZERO);
    let vg = g.valuation_bound().unwrap_or(QExp::ZERO);
    let vm = mu.valuation_bound().unwrap_or(QExp::ZERO);
    let cut = [f.cutoff().map(|d| d + vg + vm), g.cutoff().map(|d| d + vf + vm), mu.cutoff().map(|d| d + vf + vg)]
        .into_iter()
        .flatten()
        .min();
    let mut acc = QPoly::zero();
    for (a, pa) in f.terms() {
        for (b, pb) in g.terms() {
            let target = -&(a + b);
            let pm = mu.coeff_poly(&target);
            if pm.is_zero() {
                continue;
            }
            let fg = pa.mul_truncated(pb, cut.map(|d| d - pm.valuation().unwrap()));
            acc += &fg.mul_truncated(&pm, cut);
        }
    }
    match cut {
        None => QSeries::exact(acc),
        Some(d) => QSeries::truncated(acc, d),
    }
}

/// `⟨f, g⟩ = ⟨f g^* μ∘⟩` at `t = 0`, `g` exact.
pub fn inner_product_bar(f: &CharacterSeries, g: &CharacterSeries, mu_circ: &CharacterSeries) -> Option<QSeries> {
    super::action::star(g).map(|gs| pairing(f, &gs, mu_circ))
}

/// Height `Σ_i k_i` of `γ = Σ_i k_i α_i ∈ Q`.
pub fn root_height(rs: &RootSystem, gamma: &Weight) -> i64 {
    rs.alpha_coords(gamma).iter().map(|c| c.to_i64().expect("weight must lie in Q")).sum()
}

/// `μ∘ = μ/⟨μ⟩` at a rational `t`, with every coefficient of a weight of
/// height in `[−height_bound, height_bound]` exact up to `q^cutoff`.
///
/// Each positive root contributes, by the q-binomial theorem,
/// `Σ_k c_k X_α^k · Σ_k c_k q_α^k X_α^{−k}` with `c_k = t^k (t^{-1};q_α)_k/(q_α;q_α)_k`.
/// The first sum is infinite at `q^0`, hence the height bound. Terms of
/// large positive height are discarded once no later factor can bring
/// them back into range: a unit of negative height costs at least
/// `ν_α / ht(α)` powers of `q`.
pub fn mu_circ_generic(rs: &RootSystem, t: &RationalT, cutoff: QExp, height_bound: i64) -> CharacterSeries {
    let d_int = cutoff.floor().max(0);
    let max_ratio = rs
        .positive_roots()
        .map(|r| Rat::frac(r.alpha_coords.iter().sum::<i64>(), r.nu))
        .max()
        .unwrap();
    let slack = (&max_ratio * &Rat::int(d_int)).to_big_parts();
    let slack = i64::try_from(num_integer::Integer::div_ceil(&slack.0, &slack.1)).unwrap();
    let ceiling = height_bound + slack;

    // Terms are stored by weight with their height for pruning.
    let mut terms: BTreeMap<Weight, QPoly> = BTreeMap::new();
    terms.insert(Weight::zero(rs.rank()), QPoly::one());
    for r in rs.positive_roots() {
        let ht = r.alpha_coords.iter().sum::<i64>();
        let coeffs = qbinomial_coefficients(t.t(r.nu), r.nu, cutoff, ceiling / ht);
        for direction in [1i64, -1] {
            let mut next: BTreeMap<Weight, QPoly> = BTreeMap::new();
            for (w, p) in &terms {
                let h = root_height(rs, w);
                for (k, c) in coeffs.iter().enumerate() {
                    let k = k as i64;
                    if direction == 1 && h + k * ht > ceiling {
                        break;
                    }
                    // X_α^{-k} carries the extra q_α^k.
                    let shift = if direction == 1 { QExp::ZERO } else { QExp::int(r.nu * k) };
                    if shift > cutoff {
                        break;
                    }
                    let term = c.shift(shift).mul_truncated(p, Some(cutoff));
                    if term.is_zero() {
                        continue;
                    }
                    let key = w.add_scaled(&r.weight, direction * k);
                    *next.entry(key).or_default() += &term;
                }
            }
            next.retain(|_, p| !p.is_zero());
            terms = next;
        }
    }
    let zero = Weight::zero(rs.rank());
    let ct = terms.get(&zero).cloned().unwrap_or_default();
    let inv = ct.inverse_series(cutoff).expect("constant term is a unit");
    let mut out = CharacterSeries::zero(rs.rank()).with_cutoff(cutoff);
    for (w, p) in terms {
        if root_height(rs, &w).abs() <= height_bound {
            out.add_poly(&w, &p.mul_truncated(&inv, Some(cutoff)));
        }
    }
    out
}

/// `t^k (t^{-1}; p)_k / (p; p)_k` for `p = q^nu`, `k = 0..=kmax`, up to `q^cutoff`.
fn qbinomial_coefficients(t: Rat, nu: i64, cutoff: QExp, kmax: i64) -> Vec<QPoly> {
    let mut out = vec![QPoly::one()];
    let mut cur = QPoly::one();
    for k in 1..=kmax.max(0) {
        // multiply by (t − p^{k−1}) / (1 − p^k)
        let numer = &QPoly::constant(t.clone()) - &QPoly::q_power(QExp::int(nu * (k - 1)));
        let denom = &QPoly::one() - &QPoly::q_power(QExp::int(nu * k));
        let inv = denom.inverse_series(cutoff).unwrap();
        cur = cur.mul_truncated(&numer, Some(cutoff)).mul_truncated(&inv, Some(cutoff));
        out.push(cur.clone());
    }
    out
}

/// `⟨θ μ∘⟩ = ∏_{α>0}∏_{j≥1} (1 − t_α^{-1} q_α^{(ρ_k,α^∨)+j}) / (1 − q_α^{(ρ_k,α^∨)+j})`
/// where `q_α^{(ρ_k,α^∨)} = X_α(q^{ρ_k})`.
pub fn mehta_macdonald_constant(rs: &RootSystem, t: &RationalT, cutoff: QExp) -> QSeries {
    let mut out = QPoly::one();
    for r in rs.positive_roots() {
        let x = super::generic_t::x_at_rho(rs, &r.weight, t);
        let tinv = t.t(r.nu).recip();
        let mut j = 1;
        while QExp::int(r.nu * j) <= cutoff {
            let e = QExp::int(r.nu * j);
            let numer = &QPoly::one() - &QPoly::monomial(e, &tinv * &x);
            let denom = &QPoly::one() - &QPoly::monomial(e, x.clone());
            out = out.mul_truncated(&numer, Some(cutoff)).mul_truncated(&denom.inverse_series(cutoff).unwrap(), Some(cutoff));
            j += 1;
        }
    }
    QSeries::truncated(out, cutoff)
}
