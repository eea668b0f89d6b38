//! The norms `h⁰_b = ∏ (1 − q_i^j)`.

use std::fmt;

use serde::Serialize;

use crate::char_series::QPoly;
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, Weight};
use crate::qexp::QExp;

/// `h⁰_b` as the multiset of factors `(1 − q_i^j)`, stored as `(i, j)`
/// with `i` a simple index and pairs sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormProduct {
    pub weight: Weight,
    pub factors: Vec<(usize, i64)>,
}

impl NormProduct {
    /// Both recipes for `h⁰_b`, checked against each other.
    ///
    /// The first reads the simple-root entries `[α_i, j]` of `λ′(π_b)`; the
    /// second is `∏_{i=1}^n ∏_{j=1}^{(α_i^∨, b)^✠} (1 − q_i^j)`.
    pub fn new(rs: &RootSystem, b: &Weight) -> Result<NormProduct> {
        let from_lambda = NormProduct::from_lambda_prime(rs, b);
        let from_maltese = NormProduct::from_maltese(rs, b);
        if from_lambda != from_maltese {
            return Err(Error::Consistency(format!(
                "h0 recipes disagree at {b}: λ′ gives {:?}, ✠ gives {:?}",
                from_lambda.factors, from_maltese.factors
            )));
        }
        Ok(from_lambda)
    }

    pub fn from_lambda_prime(rs: &RootSystem, b: &Weight) -> NormProduct {
        let simple: Vec<Weight> = (1..=rs.rank()).map(|i| rs.simple_root(i)).collect();
        let mut factors: Vec<(usize, i64)> = rs
            .lambda_prime(b)
            .into_iter()
            .filter_map(|(idx, j)| {
                let w = &rs.root(idx).weight;
                simple.iter().position(|s| s == w).map(|p| (p + 1, j))
            })
            .collect();
        factors.sort_unstable();
        NormProduct { weight: b.clone(), factors }
    }

    pub fn from_maltese(rs: &RootSystem, b: &Weight) -> NormProduct {
        let mut factors = Vec::new();
        for i in 1..=rs.rank() {
            for j in 1..=rs.maltese(b, i) {
                factors.push((i, j));
            }
        }
        factors.sort_unstable();
        NormProduct { weight: b.clone(), factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// The expanded polynomial.
    pub fn poly(&self, rs: &RootSystem) -> QPoly {
        let mut out = QPoly::one();
        for &(i, j) in &self.factors {
            let factor = &QPoly::one() - &QPoly::q_power(QExp::int(rs.nu(i) * j));
            out = &out * &factor;
        }
        out
    }
}

impl fmt::Display for NormProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(i, j)| format!("(1-q_{i}^{j})")).collect();
        write!(f, "{}", parts.join(""))
    }
}
