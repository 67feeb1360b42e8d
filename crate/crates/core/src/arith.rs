//! The universal scalar: an arbitrary-precision rational, always in lowest
//! terms with positive denominator. Serializes as the string `"p/q"`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number. `BigRational` keeps the value in lowest terms with
/// a positive denominator, which gives a unique representation per value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(numer: N, denom: D) -> Self {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), d))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Self {
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Integer power with an `i64` exponent (negative exponents invert).
    pub fn pow_i(&self, exp: i64) -> Self {
        if exp == 0 {
            return Rational::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Rational::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Midpoint of two rationals, exact.
    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        (a + b) / Rational::from_int(2)
    }

    /// Parses either `"p/q"` or a decimal literal such as `"0.25"` or
    /// `"1e-8"`; decimals are converted to exact fractions over powers of 10.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|e| Error::Parse(format!("numerator {p:?}: {e}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|e| Error::Parse(format!("denominator {q:?}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            return Ok(Rational::new(p, q));
        }
        // decimal / scientific form
        let (mantissa, exp10) = match s.split_once(['e', 'E']) {
            Some((m, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|err| Error::Parse(format!("exponent {e:?}: {err}")))?;
                (m, e)
            }
            None => (s, 0i64),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        let negative = int_part.starts_with('-');
        let digits: String = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("not a rational literal: {s:?}")));
        }
        let n = BigInt::from_str(&digits).map_err(|e| Error::Parse(e.to_string()))?;
        let n = if negative { -n } else { n };
        let shift = exp10 - frac_part.len() as i64;
        let ten = Rational::from_int(10);
        Ok(Rational::from_int(n) * ten.pow_i(shift))
    }

    /// Decimal rendering truncated toward minus infinity at `digits` places.
    pub fn to_decimal_floor(&self, digits: u32) -> String {
        self.to_decimal(digits, false)
    }

    /// Decimal rendering rounded toward plus infinity at `digits` places.
    pub fn to_decimal_ceil(&self, digits: u32) -> String {
        self.to_decimal(digits, true)
    }

    fn to_decimal(&self, digits: u32, round_up: bool) -> String {
        let scale = BigInt::from(10).pow(digits);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let units = if round_up {
            scaled.ceil().to_integer()
        } else {
            scaled.floor().to_integer()
        };
        let negative = units.sign() == Sign::Minus;
        let mag = units.abs();
        let (int, frac) = mag.div_rem(&scale);
        let frac_str = format!("{:0>width$}", frac.to_string(), width = digits as usize);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac_str}")
        }
    }

    /// Lossy conversion for human-facing trend reports only; never used in
    /// any decision or certificate.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl DivAssign<&Rational> for Rational {
    fn div_assign(&mut self, rhs: &Rational) {
        self.0 /= &rhs.0;
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self == &Rational::from_int(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Rational::from_int(*other))
    }
}

/// Shorthand used pervasively in tests and strategy code.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(-4, -6);
        assert_eq!(r.to_string(), "2/3");
        let r = Rational::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Rational::parse("3/4").unwrap(), rat(3, 4));
        assert_eq!(Rational::parse("0.25").unwrap(), rat(1, 4));
        assert_eq!(Rational::parse("1e-8").unwrap(), Rational::new(1, 100_000_000i64));
        assert_eq!(Rational::parse("-1.5e1").unwrap(), Rational::from_int(-15));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat(1, 3).to_decimal_floor(4), "0.3333");
        assert_eq!(rat(1, 3).to_decimal_ceil(4), "0.3334");
        assert_eq!(rat(-1, 3).to_decimal_floor(2), "-0.34");
        assert_eq!(rat(1, 2).to_decimal_ceil(3), "0.500");
    }

    #[test]
    fn pow_i() {
        assert_eq!(rat(2, 3).pow_i(3), rat(8, 27));
        assert_eq!(rat(2, 3).pow_i(-2), rat(9, 4));
        assert_eq!(rat(5, 7).pow_i(0), Rational::one());
    }
}
