//! Canonical base-3 digit expansions of rationals in [0, 1].
//!
//! When a number has two expansions (one ending in repeated 0s, one in
//! repeated 2s) the terminating one is returned; consumers that care about
//! the dual expansion (ternary-Cantor membership) handle it explicitly.

use crate::arith::Rational;
use crate::error::Error;

/// Base-3 expansion of `x ∈ [0,1]` truncated to `n` digits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TernaryDigits {
    /// The right endpoint 1, whose canonical expansion is `1.000…` — kept
    /// apart so the fractional-digit invariant `x − Σdᵢ3⁻ⁱ ∈ [0, 3⁻ⁿ)`
    /// holds for every other value.
    One,
    Digits {
        digits: Vec<u8>,
        /// True when `x·3ⁿ` is an integer, i.e. the truncation is exact.
        exact: bool,
    },
}

/// First `n` canonical base-3 digits of `x`.
pub fn ternary_digits(x: &Rational, n: usize) -> Result<TernaryDigits, Error> {
    if x.is_negative() || x > &Rational::one() {
        return Err(Error::Domain(format!("{x} outside [0,1]")));
    }
    if x == &Rational::one() {
        return Ok(TernaryDigits::One);
    }
    let three = Rational::from_int(3);
    let mut rem = x.clone();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        let t = &rem * &three;
        let d = t.floor();
        // rem < 1 throughout, so the digit is 0, 1, or 2.
        let d_u8 = u8::try_from(&d).expect("digit in 0..=2");
        digits.push(d_u8);
        rem = t - Rational::from_int(d);
    }
    Ok(TernaryDigits::Digits {
        digits,
        exact: rem.is_zero(),
    })
}

/// Exact value `Σ dᵢ·3⁻ⁱ` of a finite digit word.
pub fn value_of_digits(digits: &[u8]) -> Rational {
    let third = Rational::new(1, 3);
    let mut acc = Rational::zero();
    for &d in digits.iter().rev() {
        acc = (acc + Rational::from_int(i64::from(d))) * &third;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn one_third_terminates() {
        assert_eq!(
            ternary_digits(&rat(1, 3), 4).unwrap(),
            TernaryDigits::Digits { digits: vec![1, 0, 0, 0], exact: true }
        );
    }

    #[test]
    fn three_quarters_repeats() {
        // 3/4 = 0.202020…₃
        assert_eq!(
            ternary_digits(&rat(3, 4), 6).unwrap(),
            TernaryDigits::Digits { digits: vec![2, 0, 2, 0, 2, 0], exact: false }
        );
    }

    #[test]
    fn right_endpoint_is_special() {
        assert_eq!(ternary_digits(&Rational::one(), 3).unwrap(), TernaryDigits::One);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(ternary_digits(&rat(-1, 2), 3).is_err());
        assert!(ternary_digits(&rat(3, 2), 3).is_err());
    }

    #[test]
    fn digits_value_roundtrip() {
        let x = rat(17, 81);
        if let TernaryDigits::Digits { digits, exact } = ternary_digits(&x, 4).unwrap() {
            assert!(exact);
            assert_eq!(value_of_digits(&digits), x);
        } else {
            panic!("expected digits");
        }
    }
}
