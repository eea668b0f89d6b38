//! The closed form of `Ξ^{c,a}_{p,𝐯}` for `A1`, summed over good sequences.

use num_integer::Roots;

use crate::char_series::{QPoly, QSeries, ThetaTwist};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, TypeLabel, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// `|n|′`: `|n|` for `n ≤ 0` and `n − 1` for `n > 0`.
fn norm_degree(n: i64) -> i64 {
    if n > 0 {
        n - 1
    } else {
        -n
    }
}

/// A sequence `c = n_0, n_1, …, n_p = a` is good when no `n_k > 0` is
/// followed by `n_{k+1} ≤ 0`.
fn is_good(seq: &[i64]) -> bool {
    seq.windows(2).all(|w| !(w[0] > 0 && w[1] <= 0))
}

/// `η = |n_r|` for the last `n_r ≤ 0` when `c ≤ 0 < a`, and `0` otherwise.
fn eta(seq: &[i64]) -> i64 {
    let (c, a) = (seq[0], seq[seq.len() - 1]);
    if c <= 0 && a > 0 {
        let last = seq.iter().rposition(|&n| n <= 0).expect("c ≤ 0");
        seq[last].abs()
    } else {
        0
    }
}

struct ClosedForm<'a> {
    rs: &'a RootSystem,
    twists: &'a [ThetaTwist],
    cutoff: QExp,
    /// `4 · cutoff`, the budget for `Σ (|n_{k−1}| − |n_k|)²` with integer exponents.
    budget: i64,
}

impl ClosedForm<'_> {
    fn sign(&self, k: usize, from: i64, to: i64) -> i64 {
        let diff = i32::try_from(to - from).expect("small weight");
        self.twists[k].value(self.rs, &Weight::new(&[diff]))
    }

    /// Extends `seq` (which holds `n_0 … n_k`) to full sequences and adds
    /// their terms; `spent` is the partial `Σ (|n_{j−1}| − |n_j|)²`.
    fn extend(&self, seq: &mut Vec<i64>, spent: i64, target: i64, acc: &mut QPoly) {
        let p = self.twists.len();
        let prev = *seq.last().expect("nonempty");
        if seq.len() == p {
            let d = prev.abs() - target.abs();
            if spent + d * d > self.budget {
                return;
            }
            seq.push(target);
            if is_good(seq) {
                self.add_term(seq, spent + d * d, acc);
            }
            seq.pop();
            return;
        }
        let reach = (self.budget - spent).sqrt();
        for size in (prev.abs() - reach).max(0)..=prev.abs() + reach {
            let d = prev.abs() - size;
            if spent + d * d > self.budget {
                continue;
            }
            let candidates: &[i64] = if size == 0 { &[0] } else { &[-size, size] };
            for &n in candidates {
                seq.push(n);
                self.extend(seq, spent + d * d, target, acc);
                seq.pop();
            }
        }
    }

    fn add_term(&self, seq: &[i64], energy4: i64, acc: &mut QPoly) {
        let exponent = QExp::ratio(energy4, 4) + QExp::int(eta(seq));
        if exponent > self.cutoff {
            return;
        }
        let mut sign = 1;
        for k in 0..self.twists.len() {
            sign *= self.sign(k, seq[k], seq[k + 1]);
        }
        if sign == 0 {
            return;
        }
        let mut denom = QPoly::one();
        for &n in &seq[1..seq.len() - 1] {
            denom = &denom * &QPoly::pochhammer(1, norm_degree(n));
        }
        let inv = denom.inverse_series(self.cutoff - exponent).expect("unit");
        acc.add_scaled(&inv, &Rat::int(sign), exponent, Some(self.cutoff));
    }
}

/// `Ξ^{c,a}_{p,𝐯}` for `A1` as the sum over good sequences
/// `𝐧′ = (n_1, …, n_{p−1})` of
/// `q^{Σ(|n_{k−1}| − |n_k|)²/4 + η} / ∏_k (q;q)_{|n_k|′} · ∏_k v_k(n_k − n_{k−1})`,
/// up to `q^cutoff`; `p = twists.len()`.
pub fn a1_closed_form(rs: &RootSystem, c: i64, a: i64, twists: &[ThetaTwist], cutoff: QExp) -> Result<QSeries> {
    if rs.label() != TypeLabel::A || rs.rank() != 1 {
        return Err(Error::Domain(format!("the closed form is for A1, not {}", rs.name())));
    }
    if twists.is_empty() {
        return Err(Error::Config("the closed form needs at least one theta function".into()));
    }
    for t in twists {
        t.validate(rs)?;
        if !t.is_character() {
            return Err(Error::Domain(format!("the closed form takes sign characters, not {t}")));
        }
    }
    let budget = (cutoff * 4).floor();
    let form = ClosedForm { rs, twists, cutoff, budget };
    let mut acc = QPoly::zero();
    form.extend(&mut vec![c], 0, a, &mut acc);
    Ok(QSeries::truncated(acc, cutoff))
}
