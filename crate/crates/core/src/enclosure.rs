//! Certified enclosures of real quantities: closed rational intervals
//! guaranteed to contain the true value. Logarithms, exponentials, powers
//! and roots are computed from truncated series with explicit tail bounds
//! and outward rounding — no floating point is involved, so soundness is
//! unconditional and results are bit-reproducible.
//!
//! The `prec` argument is a working precision in bits: enclosures shrink
//! as it grows, and callers that need a specific width refine in a loop
//! (see [`Enc::refine_to_width`]).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` certified to contain a real value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Enc {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enc {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enc { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Enc { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    /// The value is certainly ≤ `x`.
    pub fn certainly_le(&self, x: &Rational) -> bool {
        &self.hi <= x
    }

    /// The value is certainly ≥ `x`.
    pub fn certainly_ge(&self, x: &Rational) -> bool {
        &self.lo >= x
    }

    pub fn add(&self, other: &Enc) -> Enc {
        Enc::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Enc) -> Enc {
        Enc::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Enc {
        Enc::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, other: &Enc) -> Enc {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().cloned().reduce(Rational::min).unwrap();
        let hi = candidates.into_iter().reduce(Rational::max).unwrap();
        Enc::new(lo, hi)
    }

    pub fn scale(&self, c: &Rational) -> Enc {
        if c.is_negative() {
            Enc::new(c * &self.hi, c * &self.lo)
        } else {
            Enc::new(c * &self.lo, c * &self.hi)
        }
    }

    /// Reciprocal; requires the enclosure to exclude 0.
    pub fn recip(&self) -> Result<Enc> {
        if !(self.lo.is_positive() || self.hi.is_negative()) {
            return Err(Error::Domain("enclosure straddles 0, cannot invert".into()));
        }
        Ok(Enc::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Enc) -> Result<Enc> {
        Ok(self.mul(&other.recip()?))
    }

    /// Rounds endpoints outward onto the grid of denominator 2^bits,
    /// trading at most 2·2⁻ᵇⁱᵗˢ of width for small representations.
    pub fn round_out(&self, bits: u32) -> Enc {
        let scale = Rational::from_int(2).pow_i(i64::from(bits));
        let lo = Rational::new((&self.lo * &scale).floor(), 1) / &scale;
        let hi = Rational::new((&self.hi * &scale).ceil(), 1) / &scale;
        Enc::new(lo, hi)
    }

    /// Certified decimal rendering: (floor of lo, ceiling of hi).
    pub fn decimal(&self, digits: u32) -> (String, String) {
        (self.lo.to_decimal_floor(digits), self.hi.to_decimal_ceil(digits))
    }

    /// Re-evaluates `f` at doubling precisions until the enclosure is no
    /// wider than `target`.
    pub fn refine_to_width<F>(mut f: F, target: &Rational, start_prec: u32) -> Result<Enc>
    where
        F: FnMut(u32) -> Result<Enc>,
    {
        let mut prec = start_prec;
        loop {
            let enc = f(prec)?;
            if &enc.width() <= target {
                return Ok(enc);
            }
            if prec > 1 << 16 {
                return Err(Error::ResourceCap(format!(
                    "enclosure did not reach width {target} by precision {prec}"
                )));
            }
            prec *= 2;
        }
    }
}

fn pow2(bits: i64) -> Rational {
    Rational::from_int(2).pow_i(bits)
}

/// `ln 2` via `2·atanh(1/3)`.
pub fn ln_2(prec: u32) -> Enc {
    atanh_series(&Rational::new(1, 3), prec).scale(&Rational::from_int(2)).round_out(prec)
}

/// Natural logarithm of a positive rational.
///
/// Argument reduction `x = m·2^e` with `m ∈ [3/4, 3/2)` keeps the series
/// variable `z = (m−1)/(m+1)` inside `[−1/7, 1/5]`.
pub fn ln_enc(x: &Rational, prec: u32) -> Result<Enc> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive value {x}")));
    }
    let mut m = x.clone();
    let mut e: i64 = 0;
    let three_halves = Rational::new(3, 2);
    let three_quarters = Rational::new(3, 4);
    let two = Rational::from_int(2);
    while m >= three_halves {
        m = m / &two;
        e += 1;
    }
    while m < three_quarters {
        m = m * &two;
        e -= 1;
    }
    // Snap m onto a dyadic grid so series denominators stay bounded; the
    // induced argument error |Δln| ≤ Δm / min(m) ≤ (4/3)·2⁻ᵍ.
    let guard = prec + 8;
    let grid = pow2(i64::from(guard));
    let m_lo = Rational::new((&m * &grid).floor(), 1) / &grid;
    let slack = Rational::new(2, 1) / &grid; // ≥ (4/3)·2⁻ᵍ, covers both endpoints
    let z = (&m_lo - Rational::one()) / (&m_lo + Rational::one());
    let core = atanh_series(&z, prec).scale(&Rational::from_int(2));
    let widened = Enc::new(&core.lo - &slack, &core.hi + &slack);
    let result = if e == 0 {
        widened
    } else {
        widened.add(&ln_2(prec + 4).scale(&Rational::from_int(e)))
    };
    Ok(result.round_out(prec))
}

/// Enclosure of `atanh(z)` for `|z| ≤ 1/4ish` by the odd power series with
/// the geometric tail bound `|z|^(2K+1) / ((2K+1)(1−z²))`.
fn atanh_series(z: &Rational, prec: u32) -> Enc {
    let z_abs = z.abs();
    assert!(z_abs < Rational::new(1, 2), "series argument too large");
    let z2 = z * z;
    let target_tail = pow2(-i64::from(prec) - 4);
    let mut term = z.clone(); // z^(2k+1)
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        sum += &(&term / &Rational::from_int(2 * k + 1));
        term = &term * &z2;
        k += 1;
        // Remaining tail ≤ |term| / ((2k+1)(1−z²))
        let tail = term.abs() / (Rational::from_int(2 * k + 1) * (Rational::one() - &z2));
        if tail < target_tail {
            return Enc::new(&sum - &tail, &sum + &tail);
        }
    }
}

/// Exponential of a rational: series on `y/2^s` with `|y/2^s| ≤ 1/2`,
/// then `s` squarings with outward rounding.
pub fn exp_point(y: &Rational, prec: u32) -> Enc {
    // Scale down until |r| ≤ 1/2.
    let mut s: u32 = 0;
    let half = Rational::new(1, 2);
    let mut bound = y.abs();
    while bound > half {
        bound = bound / Rational::from_int(2);
        s += 1;
    }
    let working = prec + 2 * s + 16;
    let r_exact = y / &pow2(i64::from(s));
    // Dyadic snap: |exp(r) − exp(r')| ≤ e^(1/2)·|r − r'| ≤ 2·2⁻ʷ.
    let grid = pow2(i64::from(working));
    let r = Rational::new((&r_exact * &grid).floor(), 1) / &grid;
    let slack = Rational::from_int(2) / &grid;
    let mut enc = exp_series_small(&r, working);
    enc = Enc::new(&enc.lo - &slack, &enc.hi + &slack);
    for _ in 0..s {
        // exp is positive, so squaring maps [a,b] to [a², b²].
        debug_assert!(enc.lo.is_positive());
        enc = Enc::new(&enc.lo * &enc.lo, &enc.hi * &enc.hi).round_out(working);
    }
    enc.round_out(prec)
}

/// Series for `exp(r)`, `|r| ≤ 1/2`; tail after K terms ≤ 2·|r|^K/K!.
fn exp_series_small(r: &Rational, prec: u32) -> Enc {
    let target_tail = pow2(-i64::from(prec) - 4);
    let mut term = Rational::one(); // r^k / k!
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        sum += &term;
        k += 1;
        term = &term * r / Rational::from_int(k);
        let tail = term.abs() * Rational::from_int(2);
        if tail < target_tail {
            return Enc::new(&sum - &tail, &sum + &tail);
        }
    }
}

/// Exponential of an enclosure (exp is monotone).
pub fn exp_enc(y: &Enc, prec: u32) -> Enc {
    let y = y.round_out(prec + 8); // keep endpoint denominators tame
    let lo = exp_point(&y.lo, prec);
    let hi = exp_point(&y.hi, prec);
    Enc::new(lo.lo, hi.hi)
}

/// `base^c` for positive rational base and rational exponent: exact when
/// the exponent is an integer, else `exp(c·ln base)`.
pub fn pow_enc(base: &Rational, c: &Rational, prec: u32) -> Result<Enc> {
    if !base.is_positive() {
        return Err(Error::Domain(format!("power of non-positive base {base}")));
    }
    if c.is_integer() {
        let e = i64::try_from(&c.floor())
            .map_err(|_| Error::Domain("integer exponent out of range".into()))?;
        return Ok(Enc::point(base.pow_i(e)));
    }
    Ok(exp_enc(&ln_enc(base, prec + 8)?.scale(c), prec))
}

/// `base^c` with an enclosed exponent.
pub fn pow_enc_exponent(base: &Rational, c: &Enc, prec: u32) -> Result<Enc> {
    if !base.is_positive() {
        return Err(Error::Domain(format!("power of non-positive base {base}")));
    }
    let ln_base = ln_enc(base, prec + 8)?;
    Ok(exp_enc(&ln_base.mul(c), prec))
}

/// Certified square root of a non-negative rational, width ≤ 2⁻ᵖʳᵉᶜ.
pub fn sqrt_enc(x: &Rational, prec: u32) -> Result<Enc> {
    nth_root_enc(x, 2, prec)
}

/// Certified n-th root (n ≥ 1) of a non-negative rational via exact
/// integer roots: `s = ⌊(x·2^(n·prec))^(1/n)⌋` gives
/// `s/2^prec ≤ x^(1/n) < (s+1)/2^prec`.
pub fn nth_root_enc(x: &Rational, n: u32, prec: u32) -> Result<Enc> {
    if x.is_negative() {
        return Err(Error::Domain(format!("root of negative value {x}")));
    }
    if n == 0 {
        return Err(Error::Domain("0th root undefined".into()));
    }
    let shift = i64::from(n) * i64::from(prec);
    let scaled = x * &pow2(shift);
    let floor: BigInt = scaled.floor();
    let s = floor.nth_root(n);
    let denom = pow2(i64::from(prec));
    let lo = Rational::new(s.clone(), 1) / &denom;
    let hi = Rational::new(s + 1, 1) / &denom;
    Ok(Enc::new(lo, hi))
}

/// Enclosure of `ln(a)/ln(b)` for positive rationals (b ≠ 1).
pub fn log_ratio(a: &Rational, b: &Rational, prec: u32) -> Result<Enc> {
    let la = ln_enc(a, prec)?;
    let lb = ln_enc(b, prec)?;
    la.div(&lb)
}
