//! Exact rational numbers.
//!
//! [`Rational`] wraps [`num_rational::BigRational`], which already keeps every
//! value in lowest terms with a positive denominator. The wrapper adds the
//! JSON representation used by reports (`{"num": "3", "den": "4"}`), parsing
//! of `p/q` literals and a few helpers the rest of the crate needs.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `num / den` for machine integers. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    /// `num / den` for big integers. Panics if `den == 0`.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    /// The integer `n` as a rational.
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    /// Lossy conversion, used only for human-readable summaries.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Borrow the underlying `num` value.
    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn from_big(v: BigRational) -> Self {
        Rational(v)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n.into())
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q` with decimal integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(0, format!("not a rational literal: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::parse(0, format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from_bigints(num, den))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        let num: BigInt = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::from_bigints(num, den))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $amethod(&mut self, rhs: Rational) {
                self.0.$amethod(rhs.0);
            }
        }
        impl $atr<&Rational> for Rational {
            fn $amethod(&mut self, rhs: &Rational) {
                self.0.$amethod(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]`; among integers the smallest one is returned.
///
/// Uses the continued-fraction descent of the Stern–Brocot tree.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Result<Rational> {
    if lo > hi {
        return Err(Error::contract(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(simplest_rec(lo, hi))
}

fn simplest_rec(lo: &Rational, hi: &Rational) -> Rational {
    let c = Rational::from(lo.ceil());
    if &c <= hi {
        return c;
    }
    // lo and hi lie strictly inside (n, n+1).
    let n = Rational::from(lo.floor());
    let inner = simplest_rec(&(hi - &n).recip(), &(lo - &n).recip());
    n + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = Rational::new(6, -8);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let z = Rational::new(0, 5);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "3/4", "-5/8", "242/111", "7"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let q = Rational::new(131, 242);
        let v = serde_json::to_value(&q).unwrap();
        assert_eq!(v, serde_json::json!({"num": "131", "den": "242"}));
        let back: Rational = serde_json::from_value(v).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn simplest_rational_examples() {
        let q = |a, b| Rational::new(a, b);
        assert_eq!(simplest_in_interval(&q(71, 200), &q(73, 200)).unwrap(), q(4, 11));
        assert_eq!(simplest_in_interval(&q(1, 3), &q(2, 3)).unwrap(), q(1, 2));
        assert_eq!(simplest_in_interval(&q(1, 3), &q(1, 3)).unwrap(), q(1, 3));
        assert_eq!(simplest_in_interval(&q(-7, 3), &q(5, 2)).unwrap(), q(-2, 1));
        assert!(simplest_in_interval(&q(1, 2), &q(1, 3)).is_err());
    }

    /// Independent check: brute-force scan of denominators.
    #[test]
    fn simplest_rational_matches_scan() {
        for a in 1..40i64 {
            for b in a..(a + 15) {
                let lo = Rational::new(a, 37);
                let hi = Rational::new(b, 37);
                let got = simplest_in_interval(&lo, &hi).unwrap();
                let mut want = None;
                'outer: for den in 1..=37i64 {
                    for num in 0..=(2 * den) {
                        let c = Rational::new(num, den);
                        if c >= lo && c <= hi {
                            want = Some(c);
                            break 'outer;
                        }
                    }
                }
                assert_eq!(Some(got), want, "interval [{a}/37, {b}/37]");
            }
        }
    }
}
