//! Middle-ε Cantor sets: construction intervals, removed gaps, and exact
//! membership machinery (endpoint decision, tri-state interval
//! intersection, exact ternary-Cantor intersection).

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Hard cap on construction-stage enumeration (2^n intervals).
pub const MAX_ENUMERATION_STAGE: usize = 22;

/// The middle-ε Cantor set on [0,1]: every construction interval keeps its
/// two outer subintervals of relative length λ = (1−ε)/2 and loses the
/// open middle of relative length ε.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CantorSpec {
    epsilon: Rational,
    lambda: Rational,
}

impl CantorSpec {
    pub fn new(epsilon: Rational) -> Result<Self> {
        if !epsilon.is_positive() || epsilon >= Rational::one() {
            return Err(Error::Domain(format!("epsilon {epsilon} outside (0,1)")));
        }
        let lambda = (Rational::one() - &epsilon) / Rational::from_int(2);
        Ok(CantorSpec { epsilon, lambda })
    }

    /// The ternary Cantor set (ε = 1/3).
    pub fn ternary() -> Self {
        CantorSpec::new(Rational::new(1, 3)).expect("1/3 is in range")
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    /// Child contraction ratio λ = (1−ε)/2.
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Left and right children of a construction interval.
    pub fn children(&self, j: &Interval) -> (Interval, Interval) {
        let len = j.length();
        let step = &self.lambda * &len;
        (
            Interval::new(j.lo().clone(), j.lo() + &step),
            Interval::new(j.hi() - &step, j.hi().clone()),
        )
    }

    /// Closed hull of the open middle interval removed from `j`.
    pub fn gap_hull(&self, j: &Interval) -> Interval {
        let (l, r) = self.children(j);
        Interval::new(l.hi().clone(), r.lo().clone())
    }

    /// All 2^n construction intervals of stage `n`, left to right.
    pub fn stage_intervals(&self, n: usize) -> Result<Vec<(StageAddress, Interval)>> {
        if n > MAX_ENUMERATION_STAGE {
            return Err(Error::ResourceCap(format!(
                "stage {n} exceeds enumeration cap {MAX_ENUMERATION_STAGE}"
            )));
        }
        let mut level = vec![(StageAddress::root(), Interval::unit())];
        for _ in 0..n {
            let mut next = Vec::with_capacity(level.len() * 2);
            for (addr, j) in &level {
                let (l, r) = self.children(j);
                next.push((addr.child(Side::L), l));
                next.push((addr.child(Side::R), r));
            }
            level = next;
        }
        Ok(level)
    }

    /// Closed hulls of all gaps removed at stages 0..=n, with stage labels;
    /// 2^{n+1} − 1 entries.
    pub fn gaps_up_to(&self, n: usize) -> Result<Vec<(usize, Interval)>> {
        if n > MAX_ENUMERATION_STAGE {
            return Err(Error::ResourceCap(format!(
                "stage {n} exceeds enumeration cap {MAX_ENUMERATION_STAGE}"
            )));
        }
        let mut gaps = Vec::new();
        let mut level = vec![Interval::unit()];
        for stage in 0..=n {
            let mut next = Vec::with_capacity(level.len() * 2);
            for j in &level {
                let (l, r) = self.children(j);
                gaps.push((stage, Interval::new(l.hi().clone(), r.lo().clone())));
                next.push(l);
                next.push(r);
            }
            level = next;
        }
        Ok(gaps)
    }

    /// Tri-state intersection test of a closed interval with the set,
    /// resolved by descending at most `depth` construction stages.
    pub fn interval_meets(&self, i: &Interval, depth: usize) -> Result<MeetsVerdict> {
        let unit = Interval::unit();
        if !unit.contains(i) {
            return Err(Error::Domain(format!(
                "interval [{}, {}] not inside [0,1]",
                i.lo(),
                i.hi()
            )));
        }
        Ok(self.meets_rec(i, &unit, 0, depth))
    }

    fn meets_rec(&self, i: &Interval, j: &Interval, stage: usize, depth: usize) -> MeetsVerdict {
        // Construction-interval endpoints belong to the set forever.
        if i.contains_point(j.lo()) {
            return MeetsVerdict::NonemptyCertified { witness: j.lo().clone() };
        }
        if i.contains_point(j.hi()) {
            return MeetsVerdict::NonemptyCertified { witness: j.hi().clone() };
        }
        let (l, r) = self.children(j);
        let gap = Interval::new(l.hi().clone(), r.lo().clone());
        if gap.lo() < i.lo() && i.hi() < gap.hi() {
            return MeetsVerdict::EmptyCertified { gap };
        }
        if i.contains_point(gap.lo()) {
            return MeetsVerdict::NonemptyCertified { witness: gap.lo().clone() };
        }
        if i.contains_point(gap.hi()) {
            return MeetsVerdict::NonemptyCertified { witness: gap.hi().clone() };
        }
        if stage == depth {
            return MeetsVerdict::Unknown;
        }
        // No child endpoint lies in the connected interval `i`, so `i` sits
        // strictly inside exactly one child (it is not inside the gap).
        if i.hi() < gap.lo() {
            self.meets_rec(i, &l, stage + 1, depth)
        } else {
            self.meets_rec(i, &r, stage + 1, depth)
        }
    }

    /// Exact decision: is `x` an endpoint of some construction interval?
    /// Returns the address of a construction interval having `x` as an
    /// endpoint, or `None`.
    ///
    /// Descends the construction while renormalizing `x` to the unit
    /// coordinate of the current interval. With λ = a/b in lowest terms:
    /// once a prime common to the denominator of `x` and to `a` appears,
    /// that prime's power in the denominator grows at every further step,
    /// so `x` can never reach an endpoint value; otherwise denominators
    /// divide the original one and the orbit is finite, so a repeated state
    /// decides non-membership.
    pub fn is_endpoint(&self, x: &Rational) -> Result<Option<StageAddress>> {
        if x.is_negative() || x > &Rational::one() {
            return Err(Error::Domain(format!("{x} outside [0,1]")));
        }
        let lambda = &self.lambda;
        let one_minus_lambda = Rational::one() - lambda;
        let lambda_numer = lambda.numer().clone();
        let mut addr = StageAddress::root();
        let mut cur = x.clone();
        let mut seen: HashSet<Rational> = HashSet::new();
        loop {
            if cur.is_zero() || cur == Rational::one() {
                return Ok(Some(addr));
            }
            if &cur == lambda {
                return Ok(Some(addr.child(Side::L)));
            }
            if cur == one_minus_lambda {
                return Ok(Some(addr.child(Side::R)));
            }
            if lambda < &cur && cur < one_minus_lambda {
                return Ok(None); // inside the removed open middle
            }
            if cur.denom().gcd(&lambda_numer) > 1u8.into() {
                return Ok(None);
            }
            if !seen.insert(cur.clone()) {
                return Ok(None); // periodic orbit that never reaches an endpoint
            }
            if &cur < lambda {
                cur = &cur / lambda;
                addr = addr.child(Side::L);
            } else {
                cur = (&cur - &one_minus_lambda) / lambda;
                addr = addr.child(Side::R);
            }
        }
    }
}

/// Result of a depth-bounded interval-vs-set intersection test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum MeetsVerdict {
    /// The interval lies inside the open interior of this removed gap.
    EmptyCertified { gap: Interval },
    /// The interval contains this construction endpoint, which is in the set.
    NonemptyCertified { witness: Rational },
    Unknown,
}

/// Position of a construction interval: the left/right choices from [0,1].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StageAddress(Vec<Side>);

impl StageAddress {
    pub fn root() -> Self {
        StageAddress(Vec::new())
    }

    pub fn child(&self, side: Side) -> Self {
        let mut word = self.0.clone();
        word.push(side);
        StageAddress(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sides(&self) -> &[Side] {
        &self.0
    }

    /// The construction interval this address names.
    pub fn interval(&self, spec: &CantorSpec) -> Interval {
        let mut j = Interval::unit();
        for side in &self.0 {
            let (l, r) = spec.children(&j);
            j = match side {
                Side::L => l,
                Side::R => r,
            };
        }
        j
    }
}

impl fmt::Display for StageAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "·");
        }
        for side in &self.0 {
            match side {
                Side::L => write!(f, "L")?,
                Side::R => write!(f, "R")?,
            }
        }
        Ok(())
    }
}

/// Exact intersection test against the ternary Cantor set `C`: computes the
/// least element of `C` that is ≥ `i.lo` and compares it with `i.hi`.
/// Returns the witness point on success.
pub fn intersects_ternary_cantor(i: &Interval) -> (bool, Option<Rational>) {
    let lo = i.lo().clone().max(Rational::zero());
    let hi = i.hi().clone().min(Rational::one());
    if lo > hi {
        return (false, None);
    }
    let y = least_ternary_cantor_geq(&lo);
    if y <= hi {
        (true, Some(y))
    } else {
        (false, None)
    }
}

/// Least element of the ternary Cantor set that is ≥ `lo ∈ [0,1]`.
///
/// Scans the canonical base-3 digits of `lo`. While digits stay in {0,2}
/// the prefix is compatible with membership; the first digit 1 either
/// reveals `lo ∈ C` through its dual expansion (when nothing follows) or
/// forces the minimal bump: raise that digit to 2 and zero the tail. A
/// repeated remainder means the digit stream is periodic over {0,2}, so
/// `lo` itself is in the set.
fn least_ternary_cantor_geq(lo: &Rational) -> Rational {
    assert!(!lo.is_negative() && lo <= &Rational::one());
    if lo == &Rational::one() {
        return Rational::one();
    }
    let three = Rational::from_int(3);
    let mut rem = lo.clone();
    let mut prefix_value = Rational::zero();
    let mut place = Rational::new(1, 3);
    let mut seen: HashSet<Rational> = HashSet::new();
    loop {
        let t = &rem * &three;
        let digit = t.floor();
        let r = t - Rational::from_int(digit.clone());
        match u8::try_from(&digit).expect("digit in 0..=2") {
            1 => {
                if r.is_zero() {
                    // lo = prefix.1 = prefix.0222…, all digits in {0,2}.
                    return lo.clone();
                }
                // Minimal raise: prefix.2000…
                return prefix_value + place * Rational::from_int(2);
            }
            d @ (0 | 2) => {
                if r.is_zero() {
                    return lo.clone(); // terminating expansion over {0,2}
                }
                if !seen.insert(r.clone()) {
                    return lo.clone(); // periodic expansion over {0,2}
                }
                prefix_value += &(&place * &Rational::from_int(i64::from(d)));
                place = place * Rational::new(1, 3);
                rem = r;
            }
            _ => unreachable!("remainder stays below 1"),
        }
    }
}
