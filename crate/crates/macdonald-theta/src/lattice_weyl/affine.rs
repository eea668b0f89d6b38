use std::fmt;

use super::weyl::FiniteWeylElement;
use super::{RootSystem, Weight};

/// The affine root `[α, ν_α j]`, stored as the finite root `α` (by weight)
/// and the integer `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite_part: Weight,
    pub level: i64,
}

impl fmt::Debug for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.finite_part, self.level)
    }
}

/// `w = t_b·u` in the extended affine Weyl group `Ŵ = W ⋉ P`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    pub translation: Weight,
    pub finite: FiniteWeylElement,
}

impl fmt::Debug for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}·{:?}", self.translation, self.finite)
    }
}

/// A decomposition `w = s_{i_1}⋯s_{i_l}·π_r` with `l = l(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReducedWord {
    /// Indices in `0..=n`; `0` is the affine simple reflection.
    pub word: Vec<usize>,
    /// `r ∈ O` of the trailing length-zero element (`0` for the identity).
    pub pi_index: usize,
}

impl RootSystem {
    /// Is `[α, ν_α j]` a positive affine root?
    pub fn is_positive_affine(&self, root: &AffineRoot) -> bool {
        root.level > 0 || (root.level == 0 && self.root(self.root_index(&root.finite_part).unwrap()).positive)
    }

    /// Translation `t_b`.
    pub fn translation(&self, b: &Weight) -> AffineWeylElement {
        AffineWeylElement { translation: b.clone(), finite: self.weyl_identity() }
    }

    /// Finite element `u` viewed in `Ŵ`.
    pub fn finite_as_affine(&self, u: &FiniteWeylElement) -> AffineWeylElement {
        AffineWeylElement { translation: Weight::zero(self.rank()), finite: u.clone() }
    }

    /// Simple reflection `s_i`, `0 ≤ i ≤ n`, with `s_0 = t_ϑ s_ϑ`.
    pub fn affine_simple(&self, i: usize) -> AffineWeylElement {
        if i == 0 {
            let idx = self.root_index(self.theta_short()).unwrap();
            AffineWeylElement { translation: self.theta_short().clone(), finite: self.root_reflection(idx) }
        } else {
            self.finite_as_affine(&self.simple_reflection(i))
        }
    }

    /// `π_r = t_{ω_r} u_r^{-1}` for `r ∈ O` (`π_0` is the identity).
    pub fn pi_element(&self, r: usize) -> AffineWeylElement {
        if r == 0 {
            return self.translation(&Weight::zero(self.rank()));
        }
        let pos = self.pi_group().minuscule.iter().position(|&m| m == r).expect("minuscule index");
        let u = &self.pi_group().u[pos];
        AffineWeylElement { translation: Weight::fundamental(self.rank(), r), finite: self.weyl_inverse(u) }
    }

    /// `π_b = t_b u_b^{-1}`.
    pub fn pi_b(&self, b: &Weight) -> AffineWeylElement {
        let u = self.u_of(b);
        AffineWeylElement { translation: b.clone(), finite: self.weyl_inverse(&u) }
    }

    pub fn affine_mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let shifted = self.apply(&x.finite, &y.translation);
        AffineWeylElement {
            translation: &x.translation + &shifted,
            finite: self.weyl_mul(&x.finite, &y.finite),
        }
    }

    pub fn affine_inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        let uinv = self.weyl_inverse(&x.finite);
        AffineWeylElement { translation: -&self.apply(&uinv, &x.translation), finite: uinv }
    }

    /// `w([α, ν_α j]) = [u(α), ν_α(j − (b, u(α)^∨))]` for `w = t_b u`.
    pub fn affine_act_root(&self, w: &AffineWeylElement, root: &AffineRoot) -> AffineRoot {
        let idx = self.root_index(&root.finite_part).expect("finite part must be a root");
        let img = self.apply_root(&w.finite, idx);
        AffineRoot {
            finite_part: self.root(img).weight.clone(),
            level: root.level - self.coroot_pairing(&w.translation, img),
        }
    }

    /// The affine action on `P`: `(t_b u)((z)) = b + u(z)`; simple
    /// reflections act by `s_0((z)) = z + (1 − (z, ϑ))ϑ`.
    pub fn affine_act_weight(&self, w: &AffineWeylElement, z: &Weight) -> Weight {
        &w.translation + &self.apply(&w.finite, z)
    }

    /// `λ(w) = R̃_+ ∩ w^{-1}(R̃_-)`.
    pub fn lambda_set(&self, w: &AffineWeylElement) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for (idx, r) in self.roots().iter().enumerate() {
            let img = self.apply_root(&w.finite, idx);
            let k = self.coroot_pairing(&w.translation, img);
            let img_positive = self.root(img).positive;
            let start = if r.positive { 0 } else { 1 };
            // image level j − k is negative, or zero with a negative finite part
            let mut j = start;
            while j < k || (j == k && !img_positive) {
                out.push(AffineRoot { finite_part: r.weight.clone(), level: j });
                j += 1;
            }
        }
        out.sort();
        out
    }

    /// `l(w) = |λ(w)|`, computed without materializing the set.
    pub fn affine_length(&self, w: &AffineWeylElement) -> usize {
        let mut total = 0i64;
        for (idx, r) in self.roots().iter().enumerate() {
            let img = self.apply_root(&w.finite, idx);
            let k = self.coroot_pairing(&w.translation, img);
            let start = if r.positive { 0 } else { 1 };
            let end = if self.root(img).positive { k } else { k + 1 };
            total += (end - start).max(0);
        }
        total as usize
    }

    /// Does `s_i` (`0 ≤ i ≤ n`) shorten `w` from the left, i.e.
    /// `w^{-1}(α_i) ∈ R̃_-`?
    pub fn is_affine_left_descent(&self, w: &AffineWeylElement, i: usize) -> bool {
        let simple = if i == 0 {
            AffineRoot { finite_part: -self.theta_short(), level: 1 }
        } else {
            AffineRoot { finite_part: self.simple_root(i), level: 0 }
        };
        let winv = self.affine_inverse(w);
        !self.is_positive_affine(&self.affine_act_root(&winv, &simple))
    }

    /// Greedy reduced decomposition `w = s_{i_1}⋯s_{i_l} π_r`, always
    /// peeling the smallest-index left descent.
    pub fn affine_reduced_word(&self, w: &AffineWeylElement) -> AffineReducedWord {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..=self.rank()).find(|&i| self.is_affine_left_descent(&cur, i)) {
            cur = self.affine_mul(&self.affine_simple(i), &cur);
            word.push(i);
        }
        let r = self.coset(&cur.translation);
        debug_assert_eq!(cur, self.pi_element(r));
        AffineReducedWord { word, pi_index: r }
    }

    /// `λ′(π_b)`: pairs `(α ∈ R_+, j > 0)` (root index, `j`).
    pub fn lambda_prime(&self, b: &Weight) -> Vec<(usize, i64)> {
        let (bm, u) = self.antidominant(b);
        let mut out = Vec::new();
        for (idx, r) in self.roots().iter().enumerate() {
            if !r.positive {
                continue;
            }
            let bound = -self.coroot_pairing(&bm, idx);
            let pre = self.apply_inverse_root(&u, idx);
            let top = if self.root(pre).positive { bound } else { bound - 1 };
            for j in 1..=top {
                out.push((idx, j));
            }
        }
        out
    }

    /// `(α_i^∨, b)^✠`.
    pub fn maltese(&self, b: &Weight, i: usize) -> i64 {
        let (bm, u) = self.antidominant(b);
        let idx = self.root_index(&self.simple_root(i)).unwrap();
        let pre = self.apply_inverse_root(&u, idx);
        if self.root(pre).positive {
            -bm.coroot(i)
        } else {
            -bm.coroot(i) - 1
        }
    }
}
