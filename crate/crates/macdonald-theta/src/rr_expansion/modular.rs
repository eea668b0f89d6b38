//! `Ξ^{0,a}_{p,𝐯}` as a sum over `P_-^{p−1}` for `a = 0` or minuscule `−a`.

use crate::char_series::{QPoly, QSeries, ThetaTwist};
use crate::epoly::Engine;
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;
use crate::scalar::Rat;

use super::kernels::antidominant_near;
use super::{xi_chain, Route};

/// Representatives in `P` of `(P ∩ Q^∨)/Q`: the weights `Σ k_i α_i^∨` with
/// `0 ≤ k_i < ν_i` that lie in `P`.
fn coroot_classes(rs: &RootSystem) -> Vec<Weight> {
    let n = rs.rank();
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let mut coords = vec![Rat::int(0); n];
        for i in 0..n {
            let alpha = rs.simple_root(i + 1);
            let scale = Rat::frac(k[i], rs.nu(i + 1));
            for (j, c) in coords.iter_mut().enumerate() {
                *c = &*c + &(&scale * &Rat::int(i64::from(alpha.coords()[j])));
            }
        }
        if coords.iter().all(Rat::is_integer) {
            let ints: Vec<i32> = coords.iter().map(|c| c.to_i64().expect("integer") as i32).collect();
            out.push(Weight::new(&ints));
        }
        // Next multi-index in ∏ [0, ν_i).
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            k[i] += 1;
            if k[i] < rs.nu(i + 1) {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Checks that every twist is trivial on `(P ∩ Q^∨)/Q`: characters take the
/// value `1` there and coset selections are unions of its cosets.
pub fn check_modular_twists(rs: &RootSystem, twists: &[ThetaTwist]) -> Result<()> {
    let classes = coroot_classes(rs);
    for twist in twists {
        twist.validate(rs)?;
        let ok = match twist {
            ThetaTwist::Coset(set) => set.iter().all(|&r| {
                let base = rs.coset_representative(r);
                classes.iter().all(|x| set.contains(&rs.coset(&(&base + x))))
            }),
            _ => classes.iter().all(|x| twist.value(rs, x) == 1),
        };
        if !ok {
            return Err(Error::Domain(format!("{twist} is not trivial on (P ∩ Q^∨)/Q for {}", rs.name())));
        }
    }
    Ok(())
}

fn is_minuscule_dominant(rs: &RootSystem, b: &Weight) -> bool {
    b.is_dominant() && rs.positive_roots().all(|r| rs.coroot_pairing(b, rs.root_index(&r.weight).expect("root")) <= 1)
}

/// `∏_i (q_i; q_i)_{−(α_i^∨, b)}` for antidominant `b`.
fn antidominant_norm(rs: &RootSystem, b: &Weight) -> QPoly {
    (1..=rs.rank()).fold(QPoly::one(), |acc, i| &acc * &QPoly::pochhammer(rs.nu(i), -b.coroot(i)))
}

struct PMinusSum<'a> {
    rs: &'a RootSystem,
    twists: &'a [ThetaTwist],
    target: &'a Weight,
    cutoff: QExp,
}

impl PMinusSum<'_> {
    fn extend(&self, chain: &mut Vec<Weight>, spent: QExp, acc: &mut QPoly) {
        let prev = chain.last().expect("nonempty").clone();
        let step = chain.len() - 1;
        if chain.len() == self.twists.len() {
            let exponent = spent + self.rs.half_norm(&(&prev - self.target));
            if exponent <= self.cutoff {
                chain.push(self.target.clone());
                self.add_term(chain, exponent, acc);
                chain.pop();
            }
            return;
        }
        for next in antidominant_near(self.rs, &prev, self.cutoff - spent) {
            let e = spent + self.rs.half_norm(&(&prev - &next));
            if e > self.cutoff || self.twists[step].value(self.rs, &(&prev - &next)) == 0 {
                continue;
            }
            chain.push(next);
            self.extend(chain, e, acc);
            chain.pop();
        }
    }

    fn add_term(&self, chain: &[Weight], exponent: QExp, acc: &mut QPoly) {
        let mut sign = 1;
        for (k, pair) in chain.windows(2).enumerate() {
            sign *= self.twists[k].value(self.rs, &(&pair[0] - &pair[1]));
        }
        if sign == 0 {
            return;
        }
        let denom = chain[1..chain.len() - 1].iter().fold(QPoly::one(), |d, b| &d * &antidominant_norm(self.rs, b));
        let inv = denom.inverse_series(self.cutoff - exponent).expect("unit");
        acc.add_scaled(&inv, &Rat::int(sign), exponent, Some(self.cutoff));
    }
}

/// `Ξ^{0,a}_{p,𝐯} = Σ_{𝐛′ ∈ P_-^{p−1}} q^{(b_1² + (b_1−b_2)² + ⋯ + (b_{p−1}−a)²)/2} / ∏_k h⁰_{b_k} · ∏ v_k(…)^{-1}`
/// up to `q^cutoff`, asserted equal to the dag chain from `0`.
pub fn modular_sum(engine: &Engine<'_>, twists: &[ThetaTwist], a: &Weight, cutoff: QExp) -> Result<QSeries> {
    let rs = engine.root_system();
    if twists.is_empty() {
        return Err(Error::Config("the sum needs at least one theta function".into()));
    }
    if !a.is_zero() && !is_minuscule_dominant(rs, &-a) {
        return Err(Error::Domain(format!("{a} is neither 0 nor the negative of a minuscule weight")));
    }
    check_modular_twists(rs, twists)?;
    let sum = PMinusSum { rs, twists, target: a, cutoff };
    let mut acc = QPoly::zero();
    sum.extend(&mut vec![Weight::zero(rs.rank())], QExp::ZERO, &mut acc);
    let value = QSeries::truncated(acc, cutoff);
    let chain = xi_chain(engine, &Weight::zero(rs.rank()), a, twists, Route::Dag, cutoff)?;
    if !value.agrees_with(&chain.value) {
        return Err(Error::Consistency(format!("sum over P_- gives {value}, the dag chain {}", chain.value)));
    }
    Ok(value)
}

