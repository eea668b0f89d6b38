//! `Ē_b` from Demazure operators, and an independent construction from the
//! orthogonality conditions.
//!
//! The graded character of the thin Demazure module `D_b` is obtained by
//! applying the level-one Demazure operators along a reduced word
//! `π_b = s_{i_1}⋯s_{i_l}π_r` to the extremal vector `q^{−ω_r²/2}X_{−ω_r}`,
//! and `Ē_b = q^{b²/2} w₀(gch D_{b^ι})`.

use crate::char_series::{act_w0, demazure, AffineLevel, CharacterSeries, QPoly};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};

use super::linalg::solve_unitriangular_mod_q;

/// `gch D_b` along the greedy reduced word of `π_b`.
pub fn demazure_character(rs: &RootSystem, b: &Weight) -> CharacterSeries {
    let word = rs.affine_reduced_word(&rs.pi_b(b));
    demazure_character_along(rs, &word.word, word.pi_index)
}

/// `D_{i_1}⋯D_{i_l}(q^{−ω_r²/2} X_{−ω_r})`.
pub fn demazure_character_along(rs: &RootSystem, word: &[usize], pi_index: usize) -> CharacterSeries {
    let mut f = if pi_index == 0 {
        CharacterSeries::one(rs.rank())
    } else {
        let w = Weight::fundamental(rs.rank(), pi_index);
        CharacterSeries::monomial(-&w, QPoly::q_power(-rs.half_norm(&w)))
    };
    for &i in word.iter().rev() {
        f = demazure(rs, i, AffineLevel::MinusOne, &f);
    }
    f
}

/// `Ē_c = q^{c²/2} w₀(gch D_{c^ι})`, checked for the expected leading
/// monomial `X_c`.
pub fn ebar_from_demazure(rs: &RootSystem, c: &Weight) -> Result<CharacterSeries> {
    let gch = demazure_character(rs, &rs.iota(c));
    let out = act_w0(rs, &gch).shift_q(rs.half_norm(c));
    let lead = out.coeff_poly(c);
    if !lead.is_one() {
        return Err(Error::Consistency(format!("Demazure chain for {c} has extremal coefficient {lead}, expected 1")));
    }
    Ok(out)
}

/// `Ē_b` up to `q^cutoff`, solved from `Ē_b − X_b ∈ Σ_+(b)` and
/// `⟨Ē_b X_{−d} μ̄∘⟩ = 0` for every `d ≻ b`.
///
/// Modulo `q` the system has the matrix `⟨X_c X_{−d} ∏_{α>0}(1 − X_α)⟩`,
/// which is unitriangular for dominance, so it is uniquely solvable over
/// power series. Used as an oracle for the Demazure construction.
pub fn ebar_by_orthogonality(rs: &RootSystem, b: &Weight, mu_bar_circ: &CharacterSeries) -> Result<CharacterSeries> {
    let cutoff = mu_bar_circ.cutoff().ok_or_else(|| Error::Config("μ̄∘ must be truncated".into()))?;
    let unknowns: Vec<Weight> = rs.succ_set(b).into_iter().filter(|c| c != b).collect();
    let matrix: Vec<Vec<QPoly>> = unknowns
        .iter()
        .map(|d| unknowns.iter().map(|c| mu_bar_circ.coeff_poly(&(d - c))).collect())
        .collect();
    let rhs: Vec<QPoly> = unknowns.iter().map(|d| -&mu_bar_circ.coeff_poly(&(d - b))).collect();
    let solution = solve_unitriangular_mod_q(matrix, rhs, cutoff)?;
    let mut out = CharacterSeries::x(b).with_cutoff(cutoff);
    for (c, p) in unknowns.iter().zip(solution) {
        out.add_poly(c, &p);
    }
    Ok(out)
}
