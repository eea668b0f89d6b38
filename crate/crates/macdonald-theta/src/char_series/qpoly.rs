//! Laurent polynomials and truncated Laurent series in `q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::qexp::QExp;
use crate::scalar::Rat;

/// An exact finite sum `Σ c_k q^k` with exponents in the common lattice.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    terms: BTreeMap<QExp, Rat>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn one() -> QPoly {
        QPoly::monomial(QExp::ZERO, Rat::one())
    }

    pub fn constant(c: Rat) -> QPoly {
        QPoly::monomial(QExp::ZERO, c)
    }

    /// `c q^e`.
    pub fn monomial(e: QExp, c: Rat) -> QPoly {
        let mut p = QPoly::zero();
        p.add_term(e, &c);
        p
    }

    /// `q^e`.
    pub fn q_power(e: QExp) -> QPoly {
        QPoly::monomial(e, Rat::one())
    }

    /// `∏_{j=1}^{m} (1 − q^{step·j})`.
    pub fn pochhammer(step: i64, m: i64) -> QPoly {
        let mut out = QPoly::one();
        for j in 1..=m {
            let factor = &QPoly::one() - &QPoly::q_power(QExp::int(step * j));
            out = &out * &factor;
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (QExp, Rat)>>(it: I) -> QPoly {
        let mut p = QPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(QExp::ZERO).is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&QExp, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: QExp) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Lowest exponent present.
    pub fn valuation(&self) -> Option<QExp> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn degree(&self) -> Option<QExp> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: QExp, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor · other`, keeping only exponents `≤ cutoff`.
    pub fn add_scaled(&mut self, other: &QPoly, factor: &Rat, shift: QExp, cutoff: Option<QExp>) {
        if factor.is_zero() {
            return;
        }
        for (&e, c) in &other.terms {
            let e = e + shift;
            if cutoff.is_some_and(|d| e > d) {
                break;
            }
            self.add_term(e, &(c * factor));
        }
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: QExp) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(&k, x)| (k + e, x.clone())).collect() }
    }

    /// Drops every exponent above `cutoff`.
    pub fn truncate(&self, cutoff: QExp) -> QPoly {
        QPoly { terms: self.terms.range(..=cutoff).map(|(&e, c)| (e, c.clone())).collect() }
    }

    /// Product with exponents above `cutoff` discarded.
    pub fn mul_truncated(&self, other: &QPoly, cutoff: Option<QExp>) -> QPoly {
        let mut out = QPoly::zero();
        let (Some(v_self), Some(v_other)) = (self.valuation(), other.valuation()) else {
            return out;
        };
        for (&e, c) in &self.terms {
            if cutoff.is_some_and(|d| e + v_other > d) {
                break;
            }
            out.add_scaled(other, c, e, cutoff);
        }
        let _ = v_self;
        out
    }

    /// `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// `Some((e, c))` if the polynomial is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(QExp, Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c.clone()))
        } else {
            None
        }
    }

    /// Are all exponents integers?
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// Are all coefficients non-negative integers?
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// The series inverse of a polynomial with nonzero lowest coefficient,
    /// correct for exponents `≤ cutoff`.
    pub fn inverse_series(&self, cutoff: QExp) -> Option<QPoly> {
        let (v, lead) = {
            let (e, c) = self.terms.iter().next()?;
            (*e, c.clone())
        };
        let unit = self.shift(-v);
        let lead_inv = lead.recip();
        // Inverse of `unit` up to `cutoff + v`, then shift by `−v`.
        let limit = cutoff + v;
        let mut inv = QPoly::zero();
        if limit < QExp::ZERO {
            return Some(inv);
        }
        // Solve unit · inv = 1 degree by degree over the exponents that can
        // occur, i.e. non-negative combinations of the exponents in `unit`.
        let steps: Vec<(QExp, Rat)> = unit.terms.iter().skip(1).map(|(&e, c)| (e, c.clone())).collect();
        let mut pending: BTreeMap<QExp, Rat> = BTreeMap::new();
        pending.insert(QExp::ZERO, Rat::one());
        while let Some((e, rhs)) = pending.pop_first() {
            if e > limit {
                break;
            }
            if rhs.is_zero() {
                continue;
            }
            let coef = &rhs * &lead_inv;
            for (s, c) in &steps {
                let target = e + *s;
                if target <= limit {
                    let entry = pending.entry(target).or_default();
                    *entry -= &(c * &coef);
                }
            }
            inv.add_term(e, &coef);
        }
        Some(inv.shift(-v))
    }

    /// `Σ c_k x^k` for a rational `x`, only valid for integral exponents.
    pub fn eval_integral(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            assert!(e.is_integer(), "fractional exponent in integral evaluation");
            acc += &(c * &x.pow(e.floor()));
        }
        acc
    }
}

impl std::ops::Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl std::ops::Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl std::ops::Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl std::ops::Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.mul_truncated(rhs, None)
    }
}

impl std::ops::AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl std::ops::SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, &-c);
        }
    }
}

fn write_exp(f: &mut fmt::Formatter<'_>, e: QExp) -> fmt::Result {
    if e == QExp::int(1) {
        write!(f, "q")
    } else if e.is_integer() && e.0 >= 0 {
        write!(f, "q^{e}")
    } else {
        write!(f, "q^({e})")
    }
}

impl fmt::Display for QPoly {
    /// Ascending exponents, e.g. `1 + 2q - q^(1/4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if e == QExp::ZERO {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_exp(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent series known exactly up to an optional cutoff: every
/// coefficient of `q^e` with `e ≤ cutoff` is correct, nothing is known
/// above it. `cutoff = None` means the series is an exact polynomial.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct QSeries {
    poly: QPoly,
    cutoff: Option<QExp>,
}

impl QSeries {
    pub fn exact(poly: QPoly) -> QSeries {
        QSeries { poly, cutoff: None }
    }

    pub fn truncated(poly: QPoly, cutoff: QExp) -> QSeries {
        QSeries { poly: poly.truncate(cutoff), cutoff: Some(cutoff) }
    }

    pub fn zero() -> QSeries {
        QSeries::exact(QPoly::zero())
    }

    pub fn one() -> QSeries {
        QSeries::exact(QPoly::one())
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn into_poly(self) -> QPoly {
        self.poly
    }

    pub fn cutoff(&self) -> Option<QExp> {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    pub fn coeff(&self, e: QExp) -> Rat {
        self.poly.coeff(e)
    }

    /// A lower bound for the valuation of the true series.
    pub fn valuation_bound(&self) -> Option<QExp> {
        self.poly.valuation().or(self.cutoff)
    }

    pub fn with_cutoff(&self, cutoff: QExp) -> QSeries {
        let c = self.cutoff.map_or(cutoff, |d| d.min(cutoff));
        QSeries::truncated(self.poly.clone(), c)
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries { poly: self.poly.scale(c), cutoff: self.cutoff }
    }

    pub fn shift(&self, e: QExp) -> QSeries {
        QSeries { poly: self.poly.shift(e), cutoff: self.cutoff.map(|d| d + e) }
    }

    /// The inverse of a series whose lowest known term is a unit.
    pub fn inverse(&self, cutoff: QExp) -> Option<QSeries> {
        let v = self.poly.valuation()?;
        // 1/f is known up to (cutoff_f − v) − v when f is truncated.
        let eff = match self.cutoff {
            None => cutoff,
            Some(d) => cutoff.min(d - v - v),
        };
        self.poly.inverse_series(eff).map(|p| QSeries::truncated(p, eff))
    }

    /// Do `self` and `other` agree on all exponents known to both?
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let cut = match (self.cutoff, other.cutoff) {
            (None, None) => return self.poly == other.poly,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        self.poly.truncate(cut) == other.poly.truncate(cut)
    }

    fn mul_cutoff(&self, other: &QSeries) -> Option<Option<QExp>> {
        // Returns None if the product is exactly zero.
        let va = self.valuation_bound();
        let vb = other.valuation_bound();
        if (self.is_exact() && self.poly.is_zero()) || (other.is_exact() && other.poly.is_zero()) {
            return None;
        }
        let from_a = self.cutoff.map(|d| d + vb.unwrap_or(QExp::ZERO));
        let from_b = other.cutoff.map(|d| d + va.unwrap_or(QExp::ZERO));
        Some(match (from_a, from_b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        })
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let cutoff = match (self.cutoff, rhs.cutoff) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let p = &self.poly + &rhs.poly;
        match cutoff {
            None => QSeries::exact(p),
            Some(d) => QSeries::truncated(p, d),
        }
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &rhs.scale(&Rat::int(-1))
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        match self.mul_cutoff(rhs) {
            None => QSeries::zero(),
            Some(None) => QSeries::exact(&self.poly * &rhs.poly),
            Some(Some(d)) => QSeries::truncated(self.poly.mul_truncated(&rhs.poly, Some(d)), d),
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)?;
        if let Some(d) = self.cutoff {
            write!(f, " + O(")?;
            write_exp(f, d)?;
            write!(f, "+)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let one_minus_q = &QPoly::one() - &QPoly::q_power(QExp::int(1));
        let inv = one_minus_q.inverse_series(QExp::int(5)).unwrap();
        assert_eq!(inv.len(), 6);
        assert!(inv.terms().all(|(_, c)| c.is_one()));
        let prod = one_minus_q.mul_truncated(&inv, Some(QExp::int(5)));
        assert!(prod.is_one());
    }

    #[test]
    fn truncated_products_track_precision() {
        let a = QSeries::truncated(QPoly::one(), QExp::int(4));
        let b = QSeries::exact(QPoly::q_power(QExp::int(2)));
        let c = &a * &b;
        assert_eq!(c.cutoff(), Some(QExp::int(6)));
        // (1 + O(q^{>4}))(q + O(q^{>3})): the unknown tail of the second
        // factor times 1 starts right above q^3.
        let d = &a * &QSeries::truncated(QPoly::q_power(QExp::int(1)), QExp::int(3));
        assert_eq!(d.cutoff(), Some(QExp::int(3)));
        assert_eq!(d.poly(), &QPoly::q_power(QExp::int(1)));
    }

    #[test]
    fn display() {
        let p = QPoly::from_terms([(QExp::ZERO, Rat::one()), (QExp::int(1), Rat::int(2)), (QExp::ratio(1, 4), Rat::int(-1))]);
        assert_eq!(p.to_string(), "1 - q^(1/4) + 2*q");
    }
}
