//! Laurent polynomials in `X_b` with coefficients in truncated q-series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::qpoly::{QPoly, QSeries};
use crate::lattice_weyl::Weight;
use crate::qexp::QExp;
use crate::scalar::Rat;

/// `Σ_b c_b(q) X_b`, all coefficients known up to a common cutoff.
///
/// The optional window restricts the weights that are tracked at all:
/// products drop every monomial outside it. Windows are only sound when the
/// consumer reads coefficients inside the window and the factors are
/// themselves complete, which is how the crate uses them.
#[derive(Clone, PartialEq, Eq)]
pub struct CharacterSeries {
    rank: usize,
    terms: BTreeMap<Weight, QPoly>,
    cutoff: Option<QExp>,
    window: Option<Arc<BTreeSet<Weight>>>,
}

/// One serialized monomial `coeff · q^qexp · X_weight`.
#[derive(Serialize)]
pub struct TermRecord {
    pub weight: Weight,
    pub qexp: String,
    pub coeff: String,
}

impl CharacterSeries {
    pub fn zero(rank: usize) -> CharacterSeries {
        CharacterSeries { rank, terms: BTreeMap::new(), cutoff: None, window: None }
    }

    pub fn one(rank: usize) -> CharacterSeries {
        CharacterSeries::monomial(Weight::zero(rank), QPoly::one())
    }

    /// `X_b` itself.
    pub fn x(b: &Weight) -> CharacterSeries {
        CharacterSeries::monomial(b.clone(), QPoly::one())
    }

    /// `c(q) X_b`.
    pub fn monomial(b: Weight, coeff: QPoly) -> CharacterSeries {
        let mut out = CharacterSeries::zero(b.rank());
        out.add_poly(&b, &coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, QPoly)>>(rank: usize, it: I) -> CharacterSeries {
        let mut out = CharacterSeries::zero(rank);
        for (w, p) in it {
            out.add_poly(&w, &p);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The zero series with the same cutoff and window.
    pub fn empty_like(&self) -> CharacterSeries {
        CharacterSeries { rank: self.rank, terms: BTreeMap::new(), cutoff: self.cutoff, window: self.window.clone() }
    }

    pub fn cutoff(&self) -> Option<QExp> {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    pub fn window(&self) -> Option<&BTreeSet<Weight>> {
        self.window.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &QPoly)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> + '_ {
        self.terms.keys()
    }

    /// The coefficient of `X_b` as a polynomial (zero if absent).
    pub fn coeff_poly(&self, b: &Weight) -> QPoly {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    /// The coefficient of `X_b` with this series' cutoff attached.
    pub fn coeff(&self, b: &Weight) -> QSeries {
        self.attach(self.coeff_poly(b))
    }

    fn attach(&self, p: QPoly) -> QSeries {
        match self.cutoff {
            None => QSeries::exact(p),
            Some(d) => QSeries::truncated(p, d),
        }
    }

    /// Constant term `⟨f⟩`.
    pub fn constant_term(&self) -> QSeries {
        self.coeff(&Weight::zero(self.rank))
    }

    fn admits(&self, b: &Weight) -> bool {
        self.window.as_ref().is_none_or(|w| w.contains(b))
    }

    /// Adds `p X_b` (respecting window and cutoff).
    pub fn add_poly(&mut self, b: &Weight, p: &QPoly) {
        if p.is_zero() || !self.admits(b) {
            return;
        }
        let p = match self.cutoff {
            Some(d) => p.truncate(d),
            None => p.clone(),
        };
        let entry = self.terms.entry(b.clone()).or_default();
        *entry += &p;
        if entry.is_zero() {
            self.terms.remove(b);
        }
    }

    /// Adds `c q^e X_b`.
    pub fn add_term(&mut self, b: &Weight, e: QExp, c: &Rat) {
        if c.is_zero() || self.cutoff.is_some_and(|d| e > d) || !self.admits(b) {
            return;
        }
        let entry = self.terms.entry(b.clone()).or_default();
        entry.add_term(e, c);
        if entry.is_zero() {
            self.terms.remove(b);
        }
    }

    /// Restricts precision to `cutoff` (never raises it).
    pub fn with_cutoff(&self, cutoff: QExp) -> CharacterSeries {
        let c = self.cutoff.map_or(cutoff, |d| d.min(cutoff));
        let terms = self
            .terms
            .iter()
            .filter_map(|(w, p)| {
                let t = p.truncate(c);
                (!t.is_zero()).then(|| (w.clone(), t))
            })
            .collect();
        CharacterSeries { rank: self.rank, terms, cutoff: Some(c), window: self.window.clone() }
    }

    /// Restricts tracked weights to `window`.
    pub fn with_window(&self, window: Arc<BTreeSet<Weight>>) -> CharacterSeries {
        let terms = self.terms.iter().filter(|(w, _)| window.contains(w)).map(|(w, p)| (w.clone(), p.clone())).collect();
        CharacterSeries { rank: self.rank, terms, cutoff: self.cutoff, window: Some(window) }
    }

    /// Lowest q-exponent that can occur (known terms or the cutoff).
    pub fn valuation_bound(&self) -> Option<QExp> {
        let known = self.terms.values().filter_map(|p| p.valuation()).min();
        match (known, self.cutoff) {
            (Some(a), Some(d)) => Some(a.min(d)),
            (Some(a), None) => Some(a),
            (None, d) => d,
        }
    }

    fn combine_cutoff(a: Option<QExp>, b: Option<QExp>) -> Option<QExp> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    fn combine_window(&self, other: &CharacterSeries) -> Option<Arc<BTreeSet<Weight>>> {
        match (&self.window, &other.window) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w.clone()),
            (Some(a), Some(b)) => Some(Arc::new(a.intersection(b).cloned().collect())),
        }
    }

    pub fn scale(&self, c: &Rat) -> CharacterSeries {
        self.mul_qpoly(&QPoly::constant(c.clone()))
    }

    /// Multiplication by `q^e`.
    pub fn shift_q(&self, e: QExp) -> CharacterSeries {
        CharacterSeries {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, p)| (w.clone(), p.shift(e))).collect(),
            cutoff: self.cutoff.map(|d| d + e),
            window: self.window.clone(),
        }
    }

    /// Multiplication by an exact q-polynomial.
    pub fn mul_qpoly(&self, p: &QPoly) -> CharacterSeries {
        let s = QSeries::exact(p.clone());
        self.mul_qseries(&s)
    }

    /// Multiplication by a (possibly truncated) scalar series.
    pub fn mul_qseries(&self, s: &QSeries) -> CharacterSeries {
        let wrap = CharacterSeries {
            rank: self.rank,
            terms: if s.poly().is_zero() { BTreeMap::new() } else { [(Weight::zero(self.rank), s.poly().clone())].into() },
            cutoff: s.cutoff(),
            window: None,
        };
        self * &wrap
    }

    /// `X_b ↦ X_{φ(b)}` for an arbitrary map on weights.
    pub fn map_weights<F: Fn(&Weight) -> Weight>(&self, f: F) -> CharacterSeries {
        let mut out = CharacterSeries { rank: self.rank, terms: BTreeMap::new(), cutoff: self.cutoff, window: None };
        for (w, p) in &self.terms {
            out.add_poly(&f(w), p);
        }
        out
    }

    /// `X_b ↦ X_{−b}` (q untouched).
    pub fn invert_x(&self) -> CharacterSeries {
        self.map_weights(|w| -w)
    }

    /// `q ↦ q^{-1}`; only defined for exact series.
    pub fn invert_q(&self) -> Option<CharacterSeries> {
        if !self.is_exact() {
            return None;
        }
        Some(CharacterSeries {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, p)| (w.clone(), p.invert_q())).collect(),
            cutoff: None,
            window: self.window.clone(),
        })
    }

    /// Do the two series agree on every coefficient known to both?
    pub fn agrees_with(&self, other: &CharacterSeries) -> bool {
        self.first_difference(other).is_none()
    }

    /// The first weight at which the two series disagree below the common
    /// cutoff, with the difference.
    pub fn first_difference(&self, other: &CharacterSeries) -> Option<(Weight, QPoly)> {
        let cut = CharacterSeries::combine_cutoff(self.cutoff, other.cutoff);
        let keys: BTreeSet<&Weight> = self.terms.keys().chain(other.terms.keys()).collect();
        for w in keys {
            let mut d = &self.coeff_poly(w) - &other.coeff_poly(w);
            if let Some(c) = cut {
                d = d.truncate(c);
            }
            if !d.is_zero() {
                return Some((w.clone(), d));
            }
        }
        None
    }

    /// Highest exponent appearing anywhere.
    pub fn max_degree(&self) -> Option<QExp> {
        self.terms.values().filter_map(|p| p.degree()).max()
    }

    /// Sorted records for serialization.
    pub fn records(&self) -> Vec<TermRecord> {
        let mut out = Vec::new();
        for (w, p) in &self.terms {
            for (e, c) in p.terms() {
                out.push(TermRecord { weight: w.clone(), qexp: e.to_string(), coeff: c.to_string() });
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cutoff": self.cutoff.map(|d| d.to_string()),
            "terms": self.records(),
        })
    }
}

impl std::ops::Add for &CharacterSeries {
    type Output = CharacterSeries;
    fn add(self, rhs: &CharacterSeries) -> CharacterSeries {
        let cutoff = CharacterSeries::combine_cutoff(self.cutoff, rhs.cutoff);
        let mut out = CharacterSeries { rank: self.rank, terms: BTreeMap::new(), cutoff, window: self.combine_window(rhs) };
        for (w, p) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_poly(w, p);
        }
        out
    }
}

impl std::ops::Sub for &CharacterSeries {
    type Output = CharacterSeries;
    fn sub(self, rhs: &CharacterSeries) -> CharacterSeries {
        self + &rhs.scale(&Rat::int(-1))
    }
}

impl std::ops::Neg for &CharacterSeries {
    type Output = CharacterSeries;
    fn neg(self) -> CharacterSeries {
        self.scale(&Rat::int(-1))
    }
}

impl std::ops::Mul for &CharacterSeries {
    type Output = CharacterSeries;
    fn mul(self, rhs: &CharacterSeries) -> CharacterSeries {
        let window = self.combine_window(rhs);
        let zero = |cutoff| CharacterSeries { rank: self.rank, terms: BTreeMap::new(), cutoff, window: window.clone() };
        if (self.is_exact() && self.is_zero()) || (rhs.is_exact() && rhs.is_zero()) {
            return zero(None);
        }
        let va = self.valuation_bound().unwrap_or(QExp::ZERO);
        let vb = rhs.valuation_bound().unwrap_or(QExp::ZERO);
        let cutoff = CharacterSeries::combine_cutoff(self.cutoff.map(|d| d + vb), rhs.cutoff.map(|d| d + va));
        let mut acc: BTreeMap<Weight, QPoly> = BTreeMap::new();
        for (wa, pa) in &self.terms {
            for (wb, pb) in &rhs.terms {
                let w = wa + wb;
                if window.as_ref().is_some_and(|win| !win.contains(&w)) {
                    continue;
                }
                let prod = pa.mul_truncated(pb, cutoff);
                if prod.is_zero() {
                    continue;
                }
                *acc.entry(w).or_default() += &prod;
            }
        }
        acc.retain(|_, p| !p.is_zero());
        CharacterSeries { rank: self.rank, terms: acc, cutoff, window }
    }
}

impl fmt::Display for CharacterSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (w, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})·X{w}")?;
        }
        if let Some(d) = self.cutoff {
            write!(f, " + O(q^{d}+)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharacterSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
