//! Demazure characters, Demazure-slice characters and the graded
//! multiplicities of slices in `D_b ⊗ L^{⊗p}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::char_series::{act_w0, pairing, CharacterSeries, QSeries, ThetaTwist};
use crate::epoly::Engine;
use crate::error::{Error, Result};
use crate::lattice_weyl::Weight;
use crate::qexp::QExp;

use super::{theta_hat_product, xi_row, Route};

/// `gch D_b = q^{−b²/2} w₀(Ē_{b^ι})`, exact.
pub fn demazure_character_gch(engine: &Engine<'_>, b: &Weight) -> Result<CharacterSeries> {
    let rs = engine.root_system();
    let ebar = engine.ebar(&rs.iota(b))?;
    Ok(act_w0(rs, &ebar.body).shift_q(-rs.half_norm(b)))
}

/// `gch 𝔻_c = q^{c²/2} w₀(E†*_{c^ι})/h⁰_c` up to `q^cutoff`.
pub fn slice_character(engine: &Engine<'_>, c: &Weight, cutoff: QExp) -> Result<CharacterSeries> {
    let rs = engine.root_system();
    let shift = rs.half_norm(c);
    let edag_star = engine.edag_star_exact(&rs.iota(c))?;
    let inv = engine.h0_poly(c)?.inverse_series(cutoff - shift).expect("h0 is a unit");
    let body = act_w0(rs, &edag_star.body).mul_qseries(&QSeries::truncated(inv, cutoff - shift));
    Ok(body.shift_q(shift))
}

/// Graded multiplicities of the slices `𝔻_c` in `D_b ⊗ L^{⊗p}`,
/// `p = twists.len()`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceTable {
    pub weight: Weight,
    pub depth: usize,
    pub twists: Vec<String>,
    /// The cutoff of the underlying coefficients `Ξ`.
    #[serde(serialize_with = "super::serialize_display")]
    pub cutoff: QExp,
    /// `c ↦ q^{−(b² + c²)/2} Ξ^{b, c^ι}`, with `Ξ` from the mixed chain
    /// switching at the first step.
    #[serde(serialize_with = "serialize_rows")]
    pub multiplicities: BTreeMap<Weight, QSeries>,
}

fn serialize_rows<S: serde::Serializer>(rows: &BTreeMap<Weight, QSeries>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(rows.len()))?;
    for (w, v) in rows {
        map.serialize_entry(&w.to_string(), &v.to_string())?;
    }
    map.end()
}

impl SliceTable {
    /// `Σ_c mult_c · gch 𝔻_c`, each product known up to `q^{cutoff − b²/2}`.
    pub fn assembled(&self, engine: &Engine<'_>) -> Result<CharacterSeries> {
        let rs = engine.root_system();
        let target = self.cutoff - rs.half_norm(&self.weight);
        let mut out = CharacterSeries::zero(rs.rank()).with_cutoff(target);
        for (c, mult) in &self.multiplicities {
            let Some(low) = mult.poly().valuation() else { continue };
            let slice = slice_character(engine, c, target - low)?;
            out = &out + &slice.mul_qseries(mult);
        }
        Ok(out.with_cutoff(target))
    }

    /// Checks `Σ_c mult_c · gch 𝔻_c = gch D_b · θ̂^p` up to `q^{cutoff − b²/2}`.
    pub fn check_sanity(&self, engine: &Engine<'_>, twists: &[ThetaTwist]) -> Result<()> {
        let rs = engine.root_system();
        let lhs = self.assembled(engine)?;
        let theta = theta_hat_product(rs, twists, self.cutoff);
        let rhs = (&demazure_character_gch(engine, &self.weight)? * &theta).with_cutoff(lhs.cutoff().expect("truncated"));
        match lhs.first_difference(&rhs) {
            None => Ok(()),
            Some((w, d)) => Err(Error::Consistency(format!(
                "slice multiplicities for {} at p = {}: Σ mult·gch 𝔻 − gch D·θ̂^p has {d} at X{w}",
                self.weight, self.depth
            ))),
        }
    }
}

/// The table for `D_b ⊗ L^{⊗p}` up to `q^cutoff` in `Ξ`, with its sanity
/// identity enforced. For `p = 0` the coefficients come straight from
/// `⟨Ē_{b^ι} Ē_a μ̄∘⟩`.
pub fn slice_multiplicities(
    engine: &Engine<'_>,
    b: &Weight,
    twists: &[ThetaTwist],
    cutoff: QExp,
) -> Result<SliceTable> {
    let rs = engine.root_system();
    let xi: BTreeMap<Weight, QSeries> = if twists.is_empty() {
        let ebar = engine.ebar(&rs.iota(b))?;
        let mu = engine.mu_bar_circ(cutoff);
        let mut row = BTreeMap::new();
        let candidates: BTreeSet<Weight> =
            rs.succ_set(&rs.iota(b)).iter().flat_map(|x| rs.orbit(&-x)).collect();
        for a in candidates {
            let value = pairing(&ebar.body, &engine.ebar(&a)?.body, &mu).with_cutoff(cutoff);
            if !value.poly().is_zero() {
                row.insert(a, value);
            }
        }
        row
    } else {
        xi_row(engine, b, twists, Route::Mixed { switch: 0 }, cutoff)?.into_iter().map(|(a, x)| (a, x.value)).collect()
    };
    let shift_b = rs.half_norm(b);
    let multiplicities = xi
        .into_iter()
        .map(|(a, value)| {
            let c = rs.iota(&a);
            let shifted = value.shift(-(shift_b + rs.half_norm(&c)));
            (c, shifted)
        })
        .collect();
    let table = SliceTable {
        weight: b.clone(),
        depth: twists.len(),
        twists: twists.iter().map(|t| t.to_string()).collect(),
        cutoff,
        multiplicities,
    };
    table.check_sanity(engine, twists)?;
    Ok(table)
}

/// `Σ_{c ∈ W(b)} gch 𝔻_c`, which should be `q^{b²/2} Ē_{b_-}/h⁰_{b_-}`.
pub fn graded_block(engine: &Engine<'_>, b: &Weight, cutoff: QExp) -> Result<(CharacterSeries, CharacterSeries)> {
    let rs = engine.root_system();
    let mut lhs = CharacterSeries::zero(rs.rank()).with_cutoff(cutoff);
    for c in rs.orbit(b) {
        lhs = &lhs + &slice_character(engine, &c, cutoff)?;
    }
    let bm = rs.minus(b);
    let shift = rs.half_norm(&bm);
    let inv = engine.h0_poly(&bm)?.inverse_series(cutoff - shift).expect("h0 is a unit");
    let rhs = engine.ebar(&bm)?.body.mul_qseries(&QSeries::truncated(inv.shift(shift), cutoff));
    Ok((lhs, rhs))
}
