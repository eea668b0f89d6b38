//! Fractional exponents of `q`.
//!
//! Every supported root system has its exponents in `(1/(2e))ℤ` with `2e`
//! dividing [`QExp::UNIT`], so a single fixed denominator serves all of them
//! and exponent arithmetic stays in plain integers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;

use crate::scalar::Rat;

/// An exponent of `q`, stored as an integer multiple of `1/UNIT`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QExp(pub i64);

impl QExp {
    /// Common denominator: `lcm` of all `2e` over the supported types.
    pub const UNIT: i64 = 10080;

    pub const ZERO: QExp = QExp(0);

    pub fn int(n: i64) -> QExp {
        QExp(n * Self::UNIT)
    }

    /// `num/den`; panics if the value is not representable.
    pub fn ratio(num: i64, den: i64) -> QExp {
        let scaled = num * Self::UNIT;
        assert!(scaled % den == 0, "exponent {num}/{den} outside the exponent lattice");
        QExp(scaled / den)
    }

    /// Converts an exact rational exponent.
    pub fn from_rat(r: &Rat) -> Option<QExp> {
        let (n, d) = r.to_big_parts();
        let scaled = n * num_bigint::BigInt::from(Self::UNIT);
        let (quo, rem) = scaled.div_rem(&d);
        if rem != num_bigint::BigInt::from(0) {
            return None;
        }
        i64::try_from(quo).ok().map(QExp)
    }

    pub fn to_rat(self) -> Rat {
        Rat::frac(self.0, Self::UNIT)
    }

    pub fn is_integer(self) -> bool {
        self.0 % Self::UNIT == 0
    }

    /// Numerator and denominator of the reduced fraction.
    pub fn parts(self) -> (i64, i64) {
        let g = self.0.gcd(&Self::UNIT);
        (self.0 / g, Self::UNIT / g)
    }

    /// Largest integer not exceeding the exponent.
    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.0, &Self::UNIT)
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl AddAssign for QExp {
    fn add_assign(&mut self, rhs: QExp) {
        self.0 += rhs.0;
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl Mul<i64> for QExp {
    type Output = QExp;
    fn mul(self, k: i64) -> QExp {
        QExp(self.0 * k)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.parts();
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
