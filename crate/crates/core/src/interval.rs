//! Closed intervals on the line and closed sup-norm balls in the plane,
//! with exact relational predicates (containment, intersection, gap
//! distance). These are the moves of both players and the carriers of all
//! certificates.

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::Error;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

/// How two closed intervals sit relative to each other.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntervalRelation {
    /// No common point.
    pub disjoint: bool,
    /// Exactly one common point (shared endpoint), interiors disjoint.
    pub touching: bool,
    /// The second interval is contained in the first.
    pub contained: bool,
    /// Distance between the sets: `max(0, J.lo − I.hi, I.lo − J.hi)`.
    pub gap: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn try_new(lo: Rational, hi: Rational) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_center_radius(center: &Rational, radius: &Rational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Interval::new(center - radius, center + radius)
    }

    pub fn unit() -> Self {
        Interval::new(Rational::zero(), Rational::one())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn center(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn radius(&self) -> Rational {
        (&self.hi - &self.lo) / Rational::from_int(2)
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Point in the open interior.
    pub fn interior_contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Closed-set intersection: touching counts.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Distance between the two closed sets (0 when they intersect).
    pub fn gap_to(&self, other: &Interval) -> Rational {
        let a = &other.lo - &self.hi;
        let b = &self.lo - &other.hi;
        a.max(b).max(Rational::zero())
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Image under the affine map `x ↦ scale·x + shift` (scale may be
    /// negative, which swaps the endpoints).
    pub fn affine_image(&self, scale: &Rational, shift: &Rational) -> Interval {
        let a = scale * &self.lo + shift;
        let b = scale * &self.hi + shift;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn relate(&self, other: &Interval) -> IntervalRelation {
        let gap = self.gap_to(other);
        let disjoint = gap.is_positive();
        // Touching: the sets meet but their open interiors do not, i.e. the
        // overlap degenerates to at most a single shared point.
        let overlap_lo = self.lo.clone().max(other.lo.clone());
        let overlap_hi = self.hi.clone().min(other.hi.clone());
        let touching = !disjoint && overlap_lo >= overlap_hi;
        IntervalRelation {
            disjoint,
            touching,
            contained: self.contains(other),
            gap,
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // ["p/q", "r/s"] per the wire format for intervals.
        (&self.lo, &self.hi).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lo, hi): (Rational, Rational) = Deserialize::deserialize(deserializer)?;
        Interval::try_new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Closed ball in the plane under the supremum norm (an axis-aligned
/// square), i.e. `{x : |x − c|_∞ ≤ r}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Ball2 {
    pub center: (Rational, Rational),
    pub radius: Rational,
}

impl Ball2 {
    pub fn new(center: (Rational, Rational), radius: Rational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Ball2 { center, radius }
    }

    /// Sup-norm distance from the center to a point.
    pub fn center_dist(&self, p: &(Rational, Rational)) -> Rational {
        let dx = (&self.center.0 - &p.0).abs();
        let dy = (&self.center.1 - &p.1).abs();
        dx.max(dy)
    }

    pub fn contains_point(&self, p: &(Rational, Rational)) -> bool {
        self.center_dist(p) <= self.radius
    }

    pub fn contains(&self, other: &Ball2) -> bool {
        self.center_dist(&other.center) + &other.radius <= self.radius
    }

    pub fn intersects(&self, other: &Ball2) -> bool {
        self.center_dist(&other.center) <= &self.radius + &other.radius
    }
}

/// A player ball in either ambient dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "dim", content = "ball")]
pub enum Ball {
    #[serde(rename = "1")]
    Line(Interval),
    #[serde(rename = "2")]
    Plane(Ball2),
}

impl Ball {
    pub fn radius(&self) -> Rational {
        match self {
            Ball::Line(i) => i.radius(),
            Ball::Plane(b) => b.radius.clone(),
        }
    }

    pub fn contains(&self, other: &Ball) -> bool {
        match (self, other) {
            (Ball::Line(a), Ball::Line(b)) => a.contains(b),
            (Ball::Plane(a), Ball::Plane(b)) => a.contains(b),
            _ => false,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            Ball::Line(i) => Some(i),
            Ball::Plane(_) => None,
        }
    }

    /// Image under `x ↦ scale·x + shift` applied coordinatewise (for the
    /// plane the same scalar map is applied to both coordinates).
    pub fn affine_image(&self, scale: &Rational, shift: &Rational) -> Ball {
        match self {
            Ball::Line(i) => Ball::Line(i.affine_image(scale, shift)),
            Ball::Plane(b) => Ball::Plane(Ball2::new(
                (scale * &b.center.0 + shift, scale * &b.center.1 + shift),
                scale.abs() * &b.radius,
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn relate_separated() {
        let r = iv((0, 1), (1, 1)).relate(&iv((2, 1), (3, 1)));
        assert!(r.disjoint && !r.touching && !r.contained);
        assert_eq!(r.gap, rat(1, 1));
    }

    #[test]
    fn relate_shared_endpoint() {
        let r = iv((0, 1), (1, 1)).relate(&iv((1, 1), (2, 1)));
        assert!(!r.disjoint && r.touching && !r.contained);
        assert!(r.gap.is_zero());
    }

    #[test]
    fn relate_nested() {
        let r = iv((0, 1), (1, 1)).relate(&iv((1, 4), (1, 2)));
        assert!(!r.disjoint && !r.touching && r.contained);
        assert!(r.gap.is_zero());
    }

    #[test]
    fn gap_is_symmetric() {
        let i = iv((0, 1), (1, 3));
        let j = iv((1, 2), (2, 1));
        assert_eq!(i.gap_to(&j), j.gap_to(&i));
        assert_eq!(i.gap_to(&j), rat(1, 6));
    }

    #[test]
    fn affine_image_flips() {
        let i = iv((0, 1), (1, 2));
        let img = i.affine_image(&rat(-2, 1), &rat(1, 1));
        assert_eq!(img, iv((0, 1), (1, 1)));
    }

    #[test]
    fn ball2_sup_norm() {
        let b = Ball2::new((rat(0, 1), rat(0, 1)), rat(1, 1));
        assert!(b.contains_point(&(rat(1, 1), rat(1, 1))));
        assert!(!b.contains_point(&(rat(1, 1), rat(9, 8))));
        let small = Ball2::new((rat(1, 2), rat(1, 2)), rat(1, 2));
        assert!(b.contains(&small));
        assert!(b.intersects(&Ball2::new((rat(2, 1), rat(0, 1)), rat(1, 1))));
        assert!(!b.intersects(&Ball2::new((rat(3, 1), rat(0, 1)), rat(1, 2))));
    }

    #[test]
    fn interval_serde_roundtrip() {
        let i = iv((1, 3), (2, 3));
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"["1/3","2/3"]"#);
        let back: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
    }
}
