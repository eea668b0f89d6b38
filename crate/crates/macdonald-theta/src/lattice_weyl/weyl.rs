use std::cmp::Ordering;
use std::fmt;

use super::{RootSystem, Weight};

/// An element `u` of the finite Weyl group `W`.
///
/// The element is identified by its `canonical_key = u(ρ)`; the stored
/// reduced word is the canonical one obtained by always removing the
/// smallest-index left descent.
#[derive(Clone)]
pub struct FiniteWeylElement {
    word: Vec<u8>,
    key: Weight,
}

impl FiniteWeylElement {
    pub fn identity(rank: usize) -> FiniteWeylElement {
        FiniteWeylElement { word: Vec::new(), key: Weight::new(&vec![1; rank]) }
    }

    /// Reduced word `[i_1, …, i_l]` with `u = s_{i_1}⋯s_{i_l}` (1-based).
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn key(&self) -> &Weight {
        &self.key
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for FiniteWeylElement {}

impl std::hash::Hash for FiniteWeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for FiniteWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteWeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl fmt::Debug for FiniteWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl RootSystem {
    /// Recovers an element from its key `u(ρ)`.
    pub fn weyl_from_key(&self, key: &Weight) -> FiniteWeylElement {
        let mut x = key.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..=self.rank()).find(|&i| x.coroot(i) < 0) {
            x = self.reflect(i, &x);
            word.push(i as u8);
        }
        FiniteWeylElement { word, key: key.clone() }
    }

    pub fn weyl_identity(&self) -> FiniteWeylElement {
        FiniteWeylElement::identity(self.rank())
    }

    /// The simple reflection `s_i` (1-based).
    pub fn simple_reflection(&self, i: usize) -> FiniteWeylElement {
        FiniteWeylElement { word: vec![i as u8], key: self.reflect(i, &self.rho()) }
    }

    /// The reflection `s_α` for the root with index `idx`.
    pub fn root_reflection(&self, idx: usize) -> FiniteWeylElement {
        self.weyl_from_key(&self.reflect_root(idx, &self.rho()))
    }

    /// Element with the given word (not necessarily reduced).
    pub fn weyl_from_word(&self, word: &[usize]) -> FiniteWeylElement {
        let mut x = self.rho();
        for &i in word.iter().rev() {
            x = self.reflect(i, &x);
        }
        self.weyl_from_key(&x)
    }

    /// `u(b)`.
    pub fn apply(&self, u: &FiniteWeylElement, b: &Weight) -> Weight {
        let mut x = b.clone();
        for &i in u.word.iter().rev() {
            x = self.reflect(i as usize, &x);
        }
        x
    }

    /// `u^{-1}(b)`.
    pub fn apply_inverse(&self, u: &FiniteWeylElement, b: &Weight) -> Weight {
        let mut x = b.clone();
        for &i in u.word.iter() {
            x = self.reflect(i as usize, &x);
        }
        x
    }

    /// Image `u(α)` of the root with index `idx`, as a root index.
    pub fn apply_root(&self, u: &FiniteWeylElement, idx: usize) -> usize {
        let img = self.apply(u, &self.root(idx).weight);
        self.root_index(&img).expect("W permutes roots")
    }

    /// `u^{-1}(α)` as a root index.
    pub fn apply_inverse_root(&self, u: &FiniteWeylElement, idx: usize) -> usize {
        let img = self.apply_inverse(u, &self.root(idx).weight);
        self.root_index(&img).expect("W permutes roots")
    }

    /// Product `u·v`.
    pub fn weyl_mul(&self, u: &FiniteWeylElement, v: &FiniteWeylElement) -> FiniteWeylElement {
        self.weyl_from_key(&self.apply(u, &v.key))
    }

    pub fn weyl_inverse(&self, u: &FiniteWeylElement) -> FiniteWeylElement {
        self.weyl_from_key(&self.apply_inverse(u, &self.rho()))
    }

    /// Is `s_i` a left descent of `u`, i.e. `l(s_i u) < l(u)`?
    pub fn is_left_descent(&self, u: &FiniteWeylElement, i: usize) -> bool {
        u.key.coroot(i) < 0
    }

    /// Bruhat order `u ≤ w`, decided by the lifting property.
    pub fn bruhat_leq(&self, u: &FiniteWeylElement, w: &FiniteWeylElement) -> bool {
        let mut u_key = u.key.clone();
        let mut w = w.clone();
        let mut u_len = u.length();
        loop {
            if u_len > w.length() {
                return false;
            }
            if w.is_identity() {
                return u_len == 0;
            }
            let s = w.word[0] as usize;
            if u_key.coroot(s) < 0 {
                u_key = self.reflect(s, &u_key);
                u_len -= 1;
            }
            w = FiniteWeylElement { word: w.word[1..].to_vec(), key: self.reflect(s, &w.key) };
        }
    }

    /// `(b_-, u_b)`: the antidominant representative of `W b` and the
    /// minimal-length element with `u_b(b) = b_-`.
    pub fn antidominant(&self, b: &Weight) -> (Weight, FiniteWeylElement) {
        let mut x = b.clone();
        let mut key = self.rho();
        while let Some(i) = (1..=self.rank()).find(|&i| x.coroot(i) > 0) {
            x = self.reflect(i, &x);
            key = self.reflect(i, &key);
        }
        (x, self.weyl_from_key(&key))
    }

    /// Antidominant representative `b_-`.
    pub fn minus(&self, b: &Weight) -> Weight {
        let mut x = b.clone();
        while let Some(i) = (1..=self.rank()).find(|&i| x.coroot(i) > 0) {
            x = self.reflect(i, &x);
        }
        x
    }

    /// Dominant representative `b_+`.
    pub fn plus(&self, b: &Weight) -> Weight {
        -&self.minus(&-b)
    }

    /// `u_b`.
    pub fn u_of(&self, b: &Weight) -> FiniteWeylElement {
        self.antidominant(b).1
    }
}
