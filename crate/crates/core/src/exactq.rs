//! Exact rational arithmetic and the small amount of number theory the rest of
//! the crate needs.
//!
//! [`Rat`] wraps a reduced `BigRational`. Its textual form is always
//! `"num/den"` (`"0/1"`, `"-1/4"`, `"3/1"`), and that is also how it
//! serializes, so machine-readable output never loses exactness.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// `num/den`, reduced. Fails only when `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    /// Shorthand for small literal fractions. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Rat::new(num, den).expect("zero denominator")
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// `self / other`; the only division the type exposes.
    pub fn divide(&self, other: &Rat) -> Result<Rat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: i64) -> Result<Rat> {
        self.divide(&Rat::int(n))
    }

    pub fn mul_int(&self, n: i64) -> Rat {
        Rat(&self.0 * BigRational::from_integer(n.into()))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The representative of `self` modulo 1 lying in `[-1/2, 1/2)`.
    pub fn frac_center(&self) -> Rat {
        let half = Rat::frac(1, 2);
        let shifted = self + &half;
        let r = &shifted - &Rat::int(shifted.floor());
        &r - &half
    }

    /// Exact decimal rendering truncated toward zero after `digits` places.
    /// For human-facing output only.
    pub fn approx_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (self.numer().abs() * &scale) / self.denom();
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{}/{}", self.numer(), self.denom()))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `"a/b"` or a bare integer `"a"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseRat(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                Rat::new(n, d)
            }
            None => Ok(Rat::int(t.parse::<BigInt>().map_err(|_| err())?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// A finite multiset of rationals, stored sorted so that equality of
/// multisets is equality of the underlying vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatMultiset(Vec<Rat>);

impl RatMultiset {
    pub fn new(mut values: Vec<Rat>) -> Self {
        values.sort();
        RatMultiset(values)
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> RatMultiset {
        RatMultiset::new(self.0.iter().map(|x| -x).collect())
    }

    pub fn scaled(&self, n: i64) -> RatMultiset {
        RatMultiset::new(self.0.iter().map(|x| x.mul_int(n)).collect())
    }

    /// `M == -M`.
    pub fn is_antisymmetric(&self) -> bool {
        *self == self.negated()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn min(&self) -> Option<&Rat> {
        self.0.first()
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().sum()
    }
}

impl FromIterator<Rat> for RatMultiset {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatMultiset::new(iter.into_iter().collect())
    }
}

impl fmt::Display for RatMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Result of the extended Euclidean algorithm: `a*x + b*y == g`, `g >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egcd<T> {
    pub g: T,
    pub x: T,
    pub y: T,
}

pub fn egcd<T>(a: T, b: T) -> Result<Egcd<T>>
where
    T: Integer + Signed + Clone,
{
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let e = a.extended_gcd(&b);
    // Normalize to a positive gcd.
    if e.gcd.is_negative() {
        Ok(Egcd { g: -e.gcd, x: -e.x, y: -e.y })
    } else {
        Ok(Egcd { g: e.gcd, x: e.x, y: e.y })
    }
}

/// Inverse of `a` modulo `m` (`m >= 1`), in `[0, m)`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = egcd(a.rem_euclid(m), m).ok()?;
    if e.g != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r("1/2") + r("-1/2"), r("0/1"));
        assert_eq!((r("1/2") + r("-1/2")).to_string(), "0/1");
        assert_eq!(r("3/4") + r("-1/4"), r("1/2"));
        assert_eq!(r("-1/6") * r("3/1"), r("-1/2"));
        assert_eq!(-r("2/3"), r("-2/3"));
        assert_eq!(r("1/3") - r("1/2"), r("-1/6"));
        assert!(r("-1/2") < r("-1/3"));
    }

    #[test]
    fn reduced_form_and_sign() {
        let x = Rat::new(6, -8).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(4));
        assert_eq!(x.to_string(), "-3/4");
        assert_eq!(Rat::int(5).to_string(), "5/1");
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(Rat::one().divide(&Rat::zero()), Err(Error::DivisionByZero));
        assert_eq!(Rat::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(r("1/2").divide(&r("-1/4")).unwrap(), r("-2"));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        assert_eq!(r(" -7 / 21 ").to_string(), "-1/3");
        assert_eq!(r("4"), Rat::int(4));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
        assert!("1/2/3".parse::<Rat>().is_err());
        let json = serde_json::to_string(&r("-1/4")).unwrap();
        assert_eq!(json, "\"-1/4\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r("-1/4"));
    }

    #[test]
    fn egcd_examples() {
        assert_eq!(egcd(4i64, 2).unwrap().g, 2);
        let e = egcd(5i64, 3).unwrap();
        assert_eq!(e.g, 1);
        assert_eq!(5 * e.x + 3 * e.y, 1);
        assert_eq!(egcd(12i64, 0).unwrap().g, 12);
        let e = egcd(-12i64, 0).unwrap();
        assert_eq!(e.g, 12);
        assert_eq!(-12 * e.x, 12);
        assert_eq!(egcd(0i64, 0), Err(Error::ZeroGcd));
        let e = egcd(BigInt::from(-35), BigInt::from(21)).unwrap();
        assert_eq!(e.g, BigInt::from(7));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(0, 1), Some(0));
    }

    #[test]
    fn frac_center_examples() {
        assert_eq!(r("1/2").frac_center(), r("-1/2"));
        assert_eq!(r("3/4").frac_center(), r("-1/4"));
        assert_eq!(r("-7/3").frac_center(), r("-1/3"));
        assert_eq!(r("-1/2").frac_center(), r("-1/2"));
        assert_eq!(r("5").frac_center(), r("0"));
    }

    #[test]
    fn approximate_decimal() {
        assert_eq!(r("-1/4").approx_decimal(4), "-0.2500");
        assert_eq!(r("2/3").approx_decimal(3), "0.666");
        assert_eq!(r("-7/3").approx_decimal(2), "-2.33");
        assert_eq!(r("-1/1000").approx_decimal(2), "0.00");
    }

    #[test]
    fn multiset_basics() {
        let m: RatMultiset = [r("1/2"), r("0"), r("-1/2"), r("0")].into_iter().collect();
        assert!(m.is_antisymmetric());
        assert_eq!(m.to_string(), "{-1/2, 0/1, 0/1, 1/2}");
        assert_eq!(m.max(), Some(&r("1/2")));
        let n: RatMultiset = [r("1"), r("0")].into_iter().collect();
        assert!(!n.is_antisymmetric());
    }
}
