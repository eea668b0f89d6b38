//! Oracles shared by the integration tests. They are built from the
//! public primitives (products, pairings, the measure) without going
//! through the expansion machinery they are used to check.
#![allow(dead_code)]

use macdonald_theta::char_series::{pairing, theta_hat, CharacterSeries, QSeries, ThetaTwist};
use macdonald_theta::epoly::Engine;
use macdonald_theta::lattice_weyl::{build_root_system, RootSystem, TypeLabel, Weight};
use macdonald_theta::{QExp, Rat};

pub fn sys(label: TypeLabel, n: usize) -> RootSystem {
    build_root_system(label, n).unwrap()
}

pub fn w(c: &[i32]) -> Weight {
    Weight::new(c)
}

/// Weights with `(b_-, b_-) ≤ bound`.
pub fn window(rs: &RootSystem, bound: i64) -> Vec<Weight> {
    rs.weights_in_ball(&Rat::int(bound))
}

/// `Σ c q^e X_w` from `(weight, [(e, c)])`.
pub fn series(rank: usize, terms: &[(&[i32], &[(i64, i64)])]) -> CharacterSeries {
    let mut out = CharacterSeries::zero(rank);
    for (wt, coeffs) in terms {
        for &(e, c) in *coeffs {
            out.add_term(&w(wt), QExp::int(e), &Rat::int(c));
        }
    }
    out
}

/// The three displayed `E†` polynomials of `A2` along
/// `−ρ → s₁(−ρ) → s₂s₁(−ρ)`.
pub fn a2_displayed() -> Vec<(Weight, CharacterSeries)> {
    vec![
        (
            w(&[-1, -1]),
            series(
                2,
                &[
                    (&[-1, -1], &[(0, 1)]),
                    (&[-2, 1], &[(-1, 1)]),
                    (&[0, 0], &[(-1, 1), (-2, 2)]),
                    (&[1, -2], &[(-1, 1)]),
                    (&[2, -1], &[(-2, 1)]),
                    (&[1, 1], &[(-2, 1)]),
                    (&[-1, 2], &[(-2, 1)]),
                ],
            ),
        ),
        (w(&[1, -2]), series(2, &[(&[1, -2], &[(0, 1)]), (&[2, -1], &[(-1, 1)]), (&[0, 0], &[(-1, 1)])])),
        (w(&[-1, 2]), series(2, &[(&[-1, 2], &[(0, 1)]), (&[1, 1], &[(-1, 1)]), (&[0, 0], &[(0, 1)])])),
    ]
}

/// Which pairing defines the coefficient being checked.
#[derive(Clone, Copy, Debug)]
pub enum Pairing {
    /// `⟨E†*_c θ̂^p Ē_a μ̄∘⟩`
    Dag,
    /// `⟨Ē_c θ̂^p E†*_a μ̄∘⟩`
    Bar,
    /// `⟨Ē_{c^ι} θ̂^p Ē_a μ̄∘⟩`
    Mixed,
}

/// The coefficient `Ξ` by multiplying out the truncated theta functions
/// and reading off a constant term.
pub fn brute_xi(engine: &Engine, c: &Weight, a: &Weight, twists: &[ThetaTwist], kind: Pairing, cutoff: QExp) -> QSeries {
    let rs = engine.root_system();
    let (mut left, right) = match kind {
        Pairing::Dag => (engine.edag_star_exact(c).unwrap().body.clone(), engine.ebar(a).unwrap().body.clone()),
        Pairing::Bar => (engine.ebar(c).unwrap().body.clone(), engine.edag_star_exact(a).unwrap().body.clone()),
        Pairing::Mixed => (engine.ebar(&rs.iota(c)).unwrap().body.clone(), engine.ebar(a).unwrap().body.clone()),
    };
    for twist in twists {
        left = &left * &theta_hat(rs, twist, cutoff);
    }
    pairing(&left, &right, &engine.mu_bar_circ(cutoff)).with_cutoff(cutoff)
}

/// Integer power series in `q^{1/den}`, indexed by the numerator of the
/// exponent; used to hand-roll small `q`-series sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeffs {
    pub den: i64,
    pub values: Vec<i64>,
}

impl Coeffs {
    pub fn zero(den: i64, cutoff: i64) -> Coeffs {
        Coeffs { den, values: vec![0; (cutoff * den + 1) as usize] }
    }

    /// `self += sign · q^{num/den} / ∏_{j=1}^{m} (1 − q^j)`.
    pub fn add_over_pochhammer(&mut self, num: i64, m: i64, sign: i64) {
        let len = self.values.len();
        if num < 0 || num as usize >= len {
            return;
        }
        // Expand 1/∏(1 − q^j) by repeated prefix sums with stride j·den.
        let mut term = vec![0i64; len];
        term[num as usize] = sign;
        for j in 1..=m {
            let stride = (j * self.den) as usize;
            for k in stride..len {
                term[k] += term[k - stride];
            }
        }
        for (v, t) in self.values.iter_mut().zip(term) {
            *v += t;
        }
    }

    pub fn matches(&self, s: &QSeries) -> bool {
        self.mismatch(s).is_none()
    }

    /// The first exponent (as `k/den`) where `s` differs.
    pub fn mismatch(&self, s: &QSeries) -> Option<(i64, i64, Rat)> {
        for (k, &v) in self.values.iter().enumerate() {
            let got = s.coeff(QExp::ratio(k as i64, self.den));
            if got != Rat::int(v) {
                return Some((k as i64, v, got));
            }
        }
        // Nothing off the grid below the cutoff either.
        let limit = QExp::ratio(self.values.len() as i64 - 1, self.den);
        s.poly()
            .terms()
            .find(|(e, c)| **e <= limit && !c.is_zero() && !(**e * self.den).is_integer())
            .map(|(e, c)| (e.floor(), 0, c.clone()))
    }
}
