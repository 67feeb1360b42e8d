//! Enumeration of reduced fractions with bounded denominator inside a
//! window, via the simplest-fraction (Stern–Brocot) descent and
//! neighbor-walking in the Farey sequence. A window of length L contains
//! only O(Q²L) fractions of denominator ≤ Q, so this stays cheap even when
//! the admissible denominators themselves range over astronomically large
//! values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::Rational;
use crate::interval::Interval;

/// The fraction with the smallest denominator in the closed interval
/// `[lo, hi]` (ties by smallest numerator magnitude are irrelevant: the
/// minimal-denominator fraction in an interval is unique unless the
/// denominator is 1, where we take the smallest integer in range).
pub fn simplest_fraction_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    let a = lo.ceil();
    if Rational::from_int(a.clone()) <= *hi {
        return Rational::from_int(a);
    }
    // No integer inside: recurse on the flipped fractional parts.
    let fl = lo.floor();
    let fl_rat = Rational::from_int(fl);
    let inner = simplest_fraction_in(&(hi - &fl_rat).recip(), &(lo - &fl_rat).recip());
    fl_rat + inner.recip()
}

/// Successor of the reduced fraction `p/q` (with `q ≤ n`) in the Farey
/// sequence of order `n`: the unique `r/s` with `qr − ps = 1` and
/// `n − q < s ≤ n`.
pub fn next_farey(x: &Rational, n: &BigInt) -> Rational {
    let (p, q) = (x.numer().clone(), x.denom().clone());
    assert!(&q <= n, "fraction not in Farey sequence of this order");
    if q.is_one() {
        return Rational::new(&p * n + 1, n.clone());
    }
    // s ≡ −p⁻¹ (mod q), taken as large as possible but ≤ n.
    let inv = mod_inverse(&p, &q);
    let s0 = (&q - inv).mod_floor(&q);
    let s = &s0 + &q * ((n - &s0).div_floor(&q));
    let r = (BigInt::one() + &p * &s) / &q;
    Rational::new(r, s)
}

/// Predecessor of `p/q` in the Farey sequence of order `n`: the unique
/// `r/s` with `ps − qr = 1` and `n − q < s ≤ n`.
pub fn prev_farey(x: &Rational, n: &BigInt) -> Rational {
    let (p, q) = (x.numer().clone(), x.denom().clone());
    assert!(&q <= n, "fraction not in Farey sequence of this order");
    if q.is_one() {
        return Rational::new(&p * n - 1, n.clone());
    }
    let inv = mod_inverse(&p, &q);
    let s = &inv + &q * ((n - &inv).div_floor(&q));
    let r = (&p * &s - BigInt::one()) / &q;
    Rational::new(r, s)
}

/// All reduced fractions `p/q` with `1 ≤ q ≤ max_den` inside the closed
/// window, in increasing order.
pub fn fractions_in_window(window: &Interval, max_den: &BigInt) -> Vec<Rational> {
    assert!(max_den.is_positive());
    let seed = simplest_fraction_in(window.lo(), window.hi());
    if seed.denom() > max_den {
        return Vec::new(); // any other in-window fraction has a larger denominator
    }
    let mut left = Vec::new();
    let mut x = seed.clone();
    loop {
        let prev = prev_farey(&x, max_den);
        if &prev < window.lo() {
            break;
        }
        left.push(prev.clone());
        x = prev;
    }
    left.reverse();
    left.push(seed.clone());
    let mut x = seed;
    loop {
        let next = next_farey(&x, max_den);
        if &next > window.hi() {
            break;
        }
        left.push(next.clone());
        x = next;
    }
    left
}

/// Inverse of `p` modulo `q` (gcd(p, q) = 1, q > 1), in `[1, q)`.
fn mod_inverse(p: &BigInt, q: &BigInt) -> BigInt {
    let e = p.extended_gcd(q);
    assert!(e.gcd.is_one(), "arguments must be coprime");
    e.x.mod_floor(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    /// Brute-force oracle for small bounds.
    fn oracle(window: &Interval, max_den: i64) -> Vec<Rational> {
        let mut out = Vec::new();
        for q in 1..=max_den {
            let p_lo = (window.lo() * &rat(q, 1)).ceil();
            let p_hi = (window.hi() * &rat(q, 1)).floor();
            let mut p = p_lo;
            while p <= p_hi {
                let x = Rational::new(p.clone(), q);
                if x.denom() == &BigInt::from(q) {
                    out.push(x);
                }
                p += 1;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn simplest_examples() {
        assert_eq!(simplest_fraction_in(&rat(2, 7), &rat(1, 3)), rat(1, 3));
        assert_eq!(simplest_fraction_in(&rat(4, 10), &rat(6, 10)), rat(1, 2));
        assert_eq!(simplest_fraction_in(&rat(-3, 2), &rat(7, 2)), rat(-1, 1));
    }

    #[test]
    fn farey_neighbors_order_5() {
        let n = BigInt::from(5);
        assert_eq!(next_farey(&rat(1, 2), &n), rat(3, 5));
        assert_eq!(prev_farey(&rat(1, 2), &n), rat(2, 5));
        assert_eq!(next_farey(&rat(0, 1), &n), rat(1, 5));
        assert_eq!(prev_farey(&rat(1, 1), &n), rat(4, 5));
    }

    #[test]
    fn window_enumeration_matches_oracle() {
        let cases = [
            (Interval::new(rat(1, 5), rat(2, 3)), 7i64),
            (Interval::new(rat(0, 1), rat(1, 1)), 5),
            (Interval::new(rat(-1, 3), rat(1, 4)), 6),
            (Interval::new(rat(9, 20), rat(11, 20)), 12),
        ];
        for (window, q) in cases {
            assert_eq!(
                fractions_in_window(&window, &BigInt::from(q)),
                oracle(&window, q),
                "window [{}, {}], q ≤ {q}",
                window.lo(),
                window.hi()
            );
        }
    }

    #[test]
    fn large_order_small_window() {
        // Only a handful of fractions of denominator ≤ 10^6 live in a
        // window of width 10^-11.
        let c = rat(355, 113_000); // ~ π/1000, arbitrary
        let w = Interval::from_center_radius(&c, &Rational::new(1, 100_000_000_000i64));
        let out = fractions_in_window(&w, &BigInt::from(1_000_000i64));
        assert!(out.contains(&c));
        assert!(out.len() <= 3);
    }
}
