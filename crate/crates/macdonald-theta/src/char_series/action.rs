//! The affine Weyl group action on `X_b q^k` and the star involution.

use super::series::CharacterSeries;
use crate::lattice_weyl::{AffineWeylElement, FiniteWeylElement, RootSystem};

/// `w(X_c q^k)`: for `w = t_b u`, `X_c q^k ↦ X_{u(c)} q^{k − (u(c), b)}`.
pub fn act(rs: &RootSystem, w: &AffineWeylElement, f: &CharacterSeries) -> CharacterSeries {
    let mut out = CharacterSeries::zero(f.rank());
    if let Some(d) = f.cutoff() {
        // Translations shift exponents non-uniformly; only exact input keeps
        // a meaningful cutoff unless the translation is trivial.
        assert!(w.translation.is_zero(), "translation action needs an exact series (cutoff {d})");
        out = out.with_cutoff(d);
    }
    for (c, p) in f.terms() {
        let img = rs.apply(&w.finite, c);
        let shift = -rs.pair_exp(&img, &w.translation);
        out.add_poly(&img, &p.shift(shift));
    }
    out
}

/// The finite Weyl group action, which commutes with truncation.
pub fn act_finite(rs: &RootSystem, u: &FiniteWeylElement, f: &CharacterSeries) -> CharacterSeries {
    f.map_weights(|c| rs.apply(u, c))
}

/// `w₀(f)`.
pub fn act_w0(rs: &RootSystem, f: &CharacterSeries) -> CharacterSeries {
    act_finite(rs, rs.w0(), f)
}

/// The length-zero element `π_r`.
pub fn act_pi(rs: &RootSystem, r: usize, f: &CharacterSeries) -> CharacterSeries {
    act(rs, &rs.pi_element(r), f)
}

/// `(X_b q^m)^* = X_{−b} q^{−m}`; `None` for truncated input, whose
/// image would be known only above some exponent.
pub fn star(f: &CharacterSeries) -> Option<CharacterSeries> {
    f.invert_q().map(|g| g.invert_x())
}
