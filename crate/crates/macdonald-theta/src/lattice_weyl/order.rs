use std::collections::BTreeSet;

use super::{RootSystem, Weight};

impl RootSystem {
    /// Dominance `b ≪ c`: `c − b ∈ Q_+` and `b ≠ c`.
    pub fn dominance_lt(&self, b: &Weight, c: &Weight) -> bool {
        b != c && self.in_positive_cone(&(c - b))
    }

    /// The order `b ≺ c`: `b_- ≪ c_-`, or `b_- = c_-` and `b ≪ c`.
    pub fn precedes(&self, b: &Weight, c: &Weight) -> bool {
        let (bm, cm) = (self.minus(b), self.minus(c));
        if bm == cm {
            self.dominance_lt(b, c)
        } else {
            self.dominance_lt(&bm, &cm)
        }
    }

    /// A key that strictly increases along `≺`, used to list weights in a
    /// linear extension of the order.
    pub fn order_key(&self, b: &Weight) -> (i64, i64, Weight) {
        (self.two_rho_vee(&self.minus(b)), self.two_rho_vee(b), b.clone())
    }

    /// Antidominant `μ ∈ P_-` with `μ − b_- ∈ Q_+` (including `b_-`).
    pub fn antidominant_above(&self, b: &Weight) -> Vec<Weight> {
        let bm = self.minus(b);
        let bounds: Vec<i64> = self.alpha_coords(&-&bm).iter().map(|c| {
            let (n, d) = c.to_big_parts();
            i64::try_from(num_integer::Integer::div_floor(&n, &d)).unwrap()
        }).collect();
        let n = self.rank();
        let mut out = Vec::new();
        let mut k = vec![0i64; n];
        loop {
            let mut mu = bm.clone();
            for (i, &ki) in k.iter().enumerate() {
                if ki != 0 {
                    mu = mu.add_scaled(&self.simple_root(i + 1), ki);
                }
            }
            if mu.is_antidominant() {
                out.push(mu);
            }
            // odometer over the box
            let mut pos = 0;
            loop {
                if pos == n {
                    out.sort_by_key(|w| self.order_key(w));
                    return out;
                }
                if k[pos] < bounds[pos] {
                    k[pos] += 1;
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `{c : c ⪰ b}`, listed in a linear extension of `≺` (so `b` first).
    pub fn succ_set(&self, b: &Weight) -> Vec<Weight> {
        let bm = self.minus(b);
        let mut set: BTreeSet<Weight> = BTreeSet::new();
        for mu in self.antidominant_above(b) {
            if mu == bm {
                for c in self.orbit(&mu) {
                    if c == *b || self.dominance_lt(b, &c) {
                        set.insert(c);
                    }
                }
            } else {
                set.extend(self.orbit(&mu));
            }
        }
        let mut out: Vec<Weight> = set.into_iter().collect();
        out.sort_by_key(|w| self.order_key(w));
        out
    }

    /// All weights `b` with `(b, b) ≤ bound`, sorted by the order key.
    pub fn weights_in_ball(&self, bound: &crate::scalar::Rat) -> Vec<Weight> {
        // Enumerate antidominant representatives, then orbits.
        let n = self.rank();
        let mut reps = Vec::new();
        let mut frontier = vec![Weight::zero(n)];
        let mut seen: BTreeSet<Weight> = frontier.iter().cloned().collect();
        while let Some(w) = frontier.pop() {
            if &self.pair(&w, &w) > bound {
                continue;
            }
            reps.push(w.clone());
            for i in 1..=n {
                let mut c = w.coords().to_vec();
                c[i - 1] -= 1;
                let next = Weight::new(&c);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut out: Vec<Weight> = reps.iter().flat_map(|r| self.orbit(r)).collect();
        out.sort_by_key(|w| self.order_key(w));
        out
    }
}
