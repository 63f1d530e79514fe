//! Exact rational scalars.
//!
//! [`Q`] wraps `Ratio<i64>` and routes every arithmetic operation through the
//! checked variants, so an overflow aborts loudly instead of wrapping. The
//! quantities handled by this crate (levels, structure constants, mode
//! indices, binomials of small arguments) stay far inside the `i64` range;
//! anything that can grow without bound (Weyl dimension products) uses
//! `BigRational` locally instead.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number with overflow-checked arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Q(Ratio<i64>);

#[cold]
fn overflow(op: &str) -> ! {
    panic!("rational overflow in {op}")
}

impl Q {
    pub const ZERO: Q = Q(Ratio::new_raw(0, 1));
    pub const ONE: Q = Q(Ratio::new_raw(1, 1));

    /// `num/den` in lowest terms. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Q {
        Q(Ratio::from_integer(n))
    }

    pub fn half() -> Q {
        Q::new(1, 2)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        Q(self.0.recip())
    }

    /// Integer value if this is an integer.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::ONE;
        for _ in 0..e {
            acc *= *self;
        }
        acc
    }

    pub fn inner(&self) -> Ratio<i64> {
        self.0
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Q {
        Q::int(n as i64)
    }
}

impl From<usize> for Q {
    fn from(n: usize) -> Q {
        Q::int(i64::try_from(n).unwrap_or_else(|_| overflow("conversion")))
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0.checked_add(&rhs.0).unwrap_or_else(|| overflow("add")))
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0.checked_sub(&rhs.0).unwrap_or_else(|| overflow("sub")))
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0.checked_mul(&rhs.0).unwrap_or_else(|| overflow("mul")))
    }
}

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(self.0.checked_div(&rhs.0).unwrap_or_else(|| overflow("div")))
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        if *self.0.numer() == i64::MIN {
            overflow("neg");
        }
        Q(-self.0)
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, rhs: Q) {
        *self = *self + rhs;
    }
}

impl SubAssign for Q {
    fn sub_assign(&mut self, rhs: Q) {
        *self = *self - rhs;
    }
}

impl MulAssign for Q {
    fn mul_assign(&mut self, rhs: Q) {
        *self = *self * rhs;
    }
}

impl DivAssign for Q {
    fn div_assign(&mut self, rhs: Q) {
        *self = *self / rhs;
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Q> for Q {
    fn sum<I: Iterator<Item = &'a Q>>(iter: I) -> Q {
        iter.fold(Q::ZERO, |a, b| a + *b)
    }
}

impl Product for Q {
    fn product<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::ONE, |a, b| a * b)
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        // Cross-multiplication in i128 cannot overflow for i64 operands.
        let l = *self.0.numer() as i128 * *other.0.denom() as i128;
        let r = *other.0.numer() as i128 * *self.0.denom() as i128;
        l.cmp(&r)
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Q {
    fn one() -> Q {
        Q::ONE
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a string is not of the form `p` or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseQError(pub String);

impl fmt::Display for ParseQError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational number: {:?}", self.0)
    }
}

impl std::error::Error for ParseQError {}

impl FromStr for Q {
    type Err = ParseQError;
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let t = s.trim();
        let err = || ParseQError(s.to_string());
        match t.split_once('/') {
            None => t.parse::<i64>().map(Q::int).map_err(|_| err()),
            Some((n, d)) => {
                let n = n.trim().parse::<i64>().map_err(|_| err())?;
                let d = d.trim().parse::<i64>().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Ok(Q::new(n, d))
            }
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand constructor used throughout the crate.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// Binomial coefficient `C(n, k)` for integer `n` (possibly negative) and `k ≥ 0`.
pub fn binom(n: i64, k: u32) -> Q {
    let mut acc = Q::ONE;
    for i in 0..k as i64 {
        acc = acc * Q::int(n - i) / Q::int(i + 1);
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Q {
    (1..=n as i64).map(Q::int).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            let x: Q = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("4/6".parse::<Q>().unwrap(), q(2, 3));
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(q(-7, 2) < q(-3, 1));
        assert!(q(1, 3) > q(1, 4));
        assert_eq!(q(2, 4).cmp(&q(1, 2)), Ordering::Equal);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), Q::int(10));
        assert_eq!(binom(-1, 3), Q::int(-1));
        assert_eq!(binom(3, 5), Q::ZERO);
        assert_eq!(factorial(5), Q::int(120));
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Q::int(i64::MAX);
        let _ = big + big;
    }
}
