//! Memoized construction of `Ē`, `E†`, `E†*`, `h⁰` and the `m`-tables for
//! one root system.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::char_series::{mu_bar_circ, star, tdag_prime, CharacterSeries, QPoly};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;

use super::ebar::ebar_from_demazure;
use super::linalg::divide_by_one_minus;
use super::norm::NormProduct;
use super::tables::{orbit_exponents, path_from_antidominant, MTable, OrbitExponents};
use super::{EPoly, Flavor};

/// A write-once map: concurrent readers, duplicate computation allowed.
struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }

    fn get_or_try<F: FnOnce() -> Result<V>>(&self, key: &K, make: F) -> Result<V> {
        if let Some(v) = self.0.read().expect("memo poisoned").get(key) {
            return Ok(v.clone());
        }
        let v = make()?;
        Ok(self.0.write().expect("memo poisoned").entry(key.clone()).or_insert(v).clone())
    }
}

/// How many times the exact `E†*` search may enlarge its cutoff.
const STABILIZATION_ATTEMPTS: usize = 4;

/// Builds and caches every `t → 0`/`t → ∞` object for one root system.
pub struct Engine<'a> {
    rs: &'a RootSystem,
    ebar: Memo<Weight, Arc<EPoly>>,
    h0: Memo<Weight, Arc<(NormProduct, QPoly)>>,
    mu: Memo<QExp, Arc<CharacterSeries>>,
    edag_star_truncated: Memo<(Weight, QExp), Arc<EPoly>>,
    edag_star_exact: Memo<Weight, Arc<EPoly>>,
    base_exponents: Memo<Weight, Arc<OrbitExponents>>,
    m_tables: Memo<Weight, Arc<MTable>>,
}

impl<'a> Engine<'a> {
    pub fn new(rs: &'a RootSystem) -> Engine<'a> {
        Engine {
            rs,
            ebar: Memo::new(),
            h0: Memo::new(),
            mu: Memo::new(),
            edag_star_truncated: Memo::new(),
            edag_star_exact: Memo::new(),
            base_exponents: Memo::new(),
            m_tables: Memo::new(),
        }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    /// `μ̄∘` up to `q^cutoff`.
    pub fn mu_bar_circ(&self, cutoff: QExp) -> Arc<CharacterSeries> {
        self.mu.get_or_try(&cutoff, || Ok(Arc::new(mu_bar_circ(self.rs, cutoff)))).expect("infallible")
    }

    /// `h⁰_b` with both recipes cross-checked.
    pub fn h0(&self, b: &Weight) -> Result<NormProduct> {
        Ok(self.h0_entry(b)?.0.clone())
    }

    /// The expanded polynomial of `h⁰_b`.
    pub fn h0_poly(&self, b: &Weight) -> Result<QPoly> {
        Ok(self.h0_entry(b)?.1.clone())
    }

    fn h0_entry(&self, b: &Weight) -> Result<Arc<(NormProduct, QPoly)>> {
        self.h0.get_or_try(b, || {
            let np = NormProduct::new(self.rs, b)?;
            let poly = np.poly(self.rs);
            Ok(Arc::new((np, poly)))
        })
    }

    /// `Ē_b` from the Demazure chain.
    pub fn ebar(&self, b: &Weight) -> Result<Arc<EPoly>> {
        self.ebar.get_or_try(b, || {
            let body = ebar_from_demazure(self.rs, b)?;
            let e = EPoly { body, label: b.clone(), flavor: Flavor::Bar, t_spec: None };
            Ok(Arc::new(e))
        })
    }

    /// `⟨Ē_d X_{−d′} μ̄∘⟩`.
    fn pairing_entry(&self, ebar_d: &CharacterSeries, d_prime: &Weight, mu: &CharacterSeries, cutoff: QExp) -> QPoly {
        let mut acc = QPoly::zero();
        for (a, p) in ebar_d.terms() {
            let m = mu.coeff_poly(&(d_prime - a));
            if !m.is_zero() {
                acc += &p.mul_truncated(&m, Some(cutoff));
            }
        }
        acc
    }

    /// `E†*_b` up to `q^cutoff` from `⟨Ē_d E†*_b μ̄∘⟩ = δ_{db} h⁰_b`.
    ///
    /// Writing `E†*_b = Σ_{d ⪰ b} ζ_d X_{−d}` and `M_{d,d′} = ⟨Ē_d X_{−d′}μ̄∘⟩`,
    /// the matrix is triangular along `≺` with diagonal `h⁰_d`, so
    /// `ζ_d = −(h⁰_d)^{-1} Σ_{d′ ≺ d} ζ_{d′} M_{d,d′}`.
    pub fn edag_star(&self, b: &Weight, cutoff: QExp) -> Result<Arc<EPoly>> {
        self.edag_star_truncated.get_or_try(&(b.clone(), cutoff), || {
            let mu = self.mu_bar_circ(cutoff);
            let support = self.rs.succ_set(b);
            let mut zeta: Vec<QPoly> = vec![QPoly::one()];
            for d in support.iter().skip(1) {
                let ebar_d = self.ebar(d)?;
                let mut acc = QPoly::zero();
                for (z, d_prime) in zeta.iter().zip(&support) {
                    if !z.is_zero() {
                        let m = self.pairing_entry(&ebar_d.body, d_prime, &mu, cutoff);
                        acc += &z.mul_truncated(&m, Some(cutoff));
                    }
                }
                let h0 = self.h0_poly(d)?;
                let diag = self.pairing_entry(&ebar_d.body, d, &mu, cutoff);
                if diag != h0.truncate(cutoff) {
                    return Err(Error::Consistency(format!("⟨Ē{d} X(-{d}) μ̄∘⟩ = {diag} differs from h0 = {h0}")));
                }
                let inv = h0.inverse_series(cutoff).expect("h0 is a unit");
                zeta.push(-&acc.mul_truncated(&inv, Some(cutoff)));
            }
            let mut body = CharacterSeries::zero(self.rs.rank()).with_cutoff(cutoff);
            for (z, d) in zeta.iter().zip(&support) {
                body.add_poly(&-d, z);
            }
            Ok(Arc::new(EPoly { body, label: b.clone(), flavor: Flavor::DagStar, t_spec: None }))
        })
    }

    /// `E†*_b` as an exact polynomial.
    ///
    /// Starts from `D = l(t_b)` and accepts the result of a run at `D + 2`
    /// when nothing above `q^D` appears and the run at `D` agrees; enlarges
    /// `D` a few times before reporting the offending weight.
    pub fn edag_star_exact(&self, b: &Weight) -> Result<Arc<EPoly>> {
        self.edag_star_exact.get_or_try(b, || {
            let length = -self.rs.two_rho_vee(&self.rs.minus(b));
            let mut d = QExp::int(length.max(1));
            let mut last_bad = b.clone();
            for _ in 0..STABILIZATION_ATTEMPTS {
                let low = self.edag_star(b, d)?;
                let high = self.edag_star(b, d + QExp::int(2))?;
                let overflow = high.body.terms().find(|(_, p)| p.degree().is_some_and(|e| e > d)).map(|(w, _)| w.clone());
                match overflow {
                    None if low.body.agrees_with(&high.body) => {
                        let mut body = CharacterSeries::zero(self.rs.rank());
                        for (w, p) in high.body.terms() {
                            body.add_poly(w, p);
                        }
                        return Ok(Arc::new(EPoly { body, label: b.clone(), flavor: Flavor::DagStar, t_spec: None }));
                    }
                    None => last_bad = b.clone(),
                    Some(w) => last_bad = w,
                }
                d = d * 2 + QExp::int(2);
            }
            Err(Error::CutoffTooSmall { weight: last_bad, cutoff: d.to_string() })
        })
    }

    /// `E†_b = (E†*_b)^*`, exact.
    pub fn edag(&self, b: &Weight) -> Result<EPoly> {
        let es = self.edag_star_exact(b)?;
        let body = star(&es.body).expect("exact polynomial");
        Ok(EPoly { body, label: b.clone(), flavor: Flavor::Dag, t_spec: None })
    }

    /// `E†_b` from `E†_{b_-}` by the intertwiner recursion: for
    /// `(c, α_i) < 0`, `E†_{s_i(c)} = (T_i^†)′(E†_c)`, divided by
    /// `1 − q^{(c, α_i)}` when `u_c(α_i)` is simple.
    pub fn edag_recursive(&self, b: &Weight) -> Result<EPoly> {
        let rs = self.rs;
        let mut cur = self.edag(&rs.minus(b))?.body;
        let simple: Vec<Weight> = (1..=rs.rank()).map(|i| rs.simple_root(i)).collect();
        for (c, i) in path_from_antidominant(rs, b) {
            let image = rs.apply(&rs.u_of(&c), &rs.simple_root(i));
            let stepped = tdag_prime(rs, i, &cur);
            cur = if simple.contains(&image) {
                let e = QExp::int(rs.nu(i) * c.coroot(i));
                let mut out = CharacterSeries::zero(rs.rank());
                for (w, p) in stepped.terms() {
                    let quotient = divide_by_one_minus(p, e).ok_or_else(|| {
                        Error::Consistency(format!("(T†_{i})′(E†{c}) at X{w} is not divisible by 1 - q^({e})"))
                    })?;
                    out.add_poly(w, &quotient);
                }
                out
            } else {
                stepped
            };
        }
        Ok(EPoly { body: cur, label: b.clone(), flavor: Flavor::Dag, t_spec: None })
    }

    /// `n_{c_-}` read from `E†_{c_-}`, with the monomiality check.
    pub fn base_exponents(&self, c_minus: &Weight) -> Result<Arc<OrbitExponents>> {
        self.base_exponents.get_or_try(c_minus, || {
            let edag = self.edag(c_minus)?;
            Ok(Arc::new(orbit_exponents(self.rs, c_minus, &edag.body)?))
        })
    }

    /// `m_c(·)` built from the base case by the recursion.
    pub fn m_table(&self, c: &Weight) -> Result<Arc<MTable>> {
        self.m_tables.get_or_try(c, || {
            let base = self.base_exponents(&self.rs.minus(c))?;
            Ok(Arc::new(MTable::from_base(self.rs, c, &base)))
        })
    }
}
