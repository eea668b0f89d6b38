use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use smallvec::SmallVec;

/// An integral weight `b = Σ l_i ω_i`, stored by its fundamental-weight
/// coordinates `(l_1, …, l_n)`, so that `(b, α_i^∨) = l_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(SmallVec<[i32; 8]>);

impl Weight {
    pub fn new(coords: &[i32]) -> Weight {
        Weight(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Weight {
        Weight(SmallVec::from_elem(0, rank))
    }

    /// The fundamental weight `ω_i` (1-based index).
    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    /// `(b, α_i^∨)` for a 1-based simple index.
    pub fn coroot(&self, i: usize) -> i64 {
        self.0[i - 1] as i64
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// All coordinates `≤ 0`.
    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&x| x <= 0)
    }

    /// All coordinates `≥ 0`.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        let coords = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| i32::try_from(a as i64 + k * b as i64).expect("weight overflow"))
            .collect();
        Weight(coords)
    }

    pub(crate) fn set(&mut self, i: usize, v: i32) {
        self.0[i] = v;
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&x| -x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `l1,l2,…`, optionally wrapped in parentheses.
impl FromStr for Weight {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Weight> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Err(crate::Error::Config("empty weight".into()));
        }
        let coords = inner
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|_| crate::Error::Config(format!("bad weight coordinate `{x}` in `{s}`"))))
            .collect::<crate::Result<Vec<i32>>>()?;
        Ok(Weight::new(&coords))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}
