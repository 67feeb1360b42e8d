//! Exact continued fractions: expansion and evaluation, cylinder
//! intervals for bounded-quotient sets, longest common prefix over an
//! interval, and the folding map `p/q ↦ p/q − 1/(3q²)` with its "good
//! rational" class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Finite continued fraction `[a0; a1, …, ar]` with positive partial
/// quotients. Full expansions are kept canonical (`ar ≥ 2` when r ≥ 1),
/// which makes the rational ↔ word correspondence one-to-one; prefix words
/// produced by interval analysis may end in 1.
///
/// Serializes as a list of decimal strings `["a0", "a1", …]` so arbitrary
/// precision survives the JSON round trip.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CFWord {
    pub a0: BigInt,
    pub quotients: Vec<BigInt>,
}

impl Serialize for CFWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut words = Vec::with_capacity(self.quotients.len() + 1);
        words.push(self.a0.to_string());
        words.extend(self.quotients.iter().map(BigInt::to_string));
        words.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CFWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let words: Vec<String> = Deserialize::deserialize(deserializer)?;
        let mut it = words.into_iter();
        let a0 = it
            .next()
            .ok_or_else(|| D::Error::custom("continued fraction needs an integer part"))?
            .parse::<BigInt>()
            .map_err(D::Error::custom)?;
        let quotients = it
            .map(|w| w.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if quotients.iter().any(|a| !a.is_positive()) {
            return Err(D::Error::custom("partial quotients must be positive"));
        }
        Ok(CFWord { a0, quotients })
    }
}

impl CFWord {
    pub fn new<I: Into<BigInt>>(a0: I, quotients: Vec<i64>) -> Result<Self> {
        let quotients: Vec<BigInt> = quotients.into_iter().map(BigInt::from).collect();
        if quotients.iter().any(|a| !a.is_positive()) {
            return Err(Error::Domain("partial quotients must be positive".into()));
        }
        Ok(CFWord { a0: a0.into(), quotients })
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        match self.quotients.last() {
            None => true,
            Some(last) => last >= &BigInt::from(2),
        }
    }

    /// Rewrites `[…, a, 1]` as `[…, a+1]` (and `[a0; 1]` as `[a0+1]`),
    /// producing the canonical form of the same value.
    pub fn normalize(mut self) -> Self {
        if self.quotients.last().map_or(false, |a| a.is_one()) {
            self.quotients.pop();
            match self.quotients.last_mut() {
                Some(a) => *a += 1,
                None => self.a0 += 1,
            }
        }
        debug_assert!(self.is_canonical());
        self
    }

    /// Convergents `p_i/q_i` for i = 0..=r (including the integer part).
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (self.a0.clone(), BigInt::one());
        let mut out = vec![(p.clone(), q.clone())];
        for a in &self.quotients {
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push((p.clone(), q.clone()));
        }
        out
    }

    /// Value of the word extended by one more quotient `a`.
    pub fn value_extended(&self, a: &BigInt) -> Rational {
        let conv = self.convergents();
        let (p, q) = conv.last().expect("at least the integer part");
        let (p_prev, q_prev) = if conv.len() >= 2 {
            conv[conv.len() - 2].clone()
        } else {
            (BigInt::one(), BigInt::zero())
        };
        Rational::new(a * p + p_prev, a * q + q_prev)
    }
}

impl std::fmt::Display for CFWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, a) in self.quotients.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { ";" } else { "," })?;
        }
        write!(f, "]")
    }
}

/// Canonical continued-fraction expansion of a rational (Euclid).
pub fn cf_expand(x: &Rational) -> CFWord {
    let a0 = x.floor();
    let mut frac = x - &Rational::from_int(a0.clone());
    let mut quotients = Vec::new();
    while !frac.is_zero() {
        let inv = frac.recip();
        let a = inv.floor();
        frac = inv - Rational::from_int(a.clone());
        quotients.push(a);
    }
    let w = CFWord { a0, quotients };
    debug_assert!(w.is_canonical(), "Euclid yields a final quotient ≥ 2");
    w
}

/// Exact value of a finite continued fraction.
pub fn cf_value(w: &CFWord) -> Rational {
    let mut acc: Option<Rational> = None;
    for a in w.quotients.iter().rev() {
        let term = match acc {
            None => Rational::from_int(a.clone()),
            Some(tail) => Rational::from_int(a.clone()) + tail.recip(),
        };
        acc = Some(term);
    }
    match acc {
        None => Rational::from_int(w.a0.clone()),
        Some(tail) => Rational::from_int(w.a0.clone()) + tail.recip(),
    }
}

/// Enclosing interval for all numbers in (0,1) whose expansion begins
/// `[0; ω, a, …]` with `a ≤ n`: the hull of `[0;ω,1]` and `[0;ω,n+1]`.
pub fn cylinder_interval(omega: &[u64], n: u64) -> Result<Interval> {
    if omega.is_empty() {
        return Err(Error::Domain("cylinder word must be nonempty".into()));
    }
    if omega.iter().any(|&a| a == 0 || a > n) {
        return Err(Error::Domain(format!("cylinder letters must lie in 1..={n}")));
    }
    let w = CFWord {
        a0: BigInt::zero(),
        quotients: omega.iter().map(|&a| BigInt::from(a)).collect(),
    };
    let e1 = w.value_extended(&BigInt::one());
    let e2 = w.value_extended(&BigInt::from(n + 1));
    Ok(if e1 <= e2 {
        Interval::new(e1, e2)
    } else {
        Interval::new(e2, e1)
    })
}

/// Closed hull of the full cylinder of a prefix word `[0; ω]`: the hull of
/// the last convergent `p_r/q_r` and the mediant `(p_r+p_{r−1})/(q_r+q_{r−1})`.
pub fn cylinder_closure(w: &CFWord) -> Interval {
    let conv = w.convergents();
    let (p, q) = conv.last().expect("nonempty").clone();
    let (pp, qp) = if conv.len() >= 2 {
        conv[conv.len() - 2].clone()
    } else {
        (BigInt::one(), BigInt::zero())
    };
    let a = Rational::new(p.clone(), q.clone());
    let b = Rational::new(p + pp, q + qp);
    if a <= b {
        Interval::new(a, b)
    } else {
        Interval::new(b, a)
    }
}

/// Longest word ω such that the canonical expansion of every `x ∈ I`
/// begins `[0; ω]`, obtained by running Euclid on both endpoints in
/// lockstep until the quotients disagree or an endpoint's expansion ends.
/// The result is certified: `I` is contained in the closed cylinder of ω.
pub fn cf_prefix_of_interval(i: &Interval) -> Result<CFWord> {
    if !(i.lo().is_positive() && i.hi() < &Rational::one() && i.lo() < i.hi()) {
        return Err(Error::Domain(format!(
            "interval [{}, {}] must lie in (0,1) with positive length",
            i.lo(),
            i.hi()
        )));
    }
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut u = i.lo().clone();
    let mut v = i.hi().clone();
    loop {
        if u.is_zero() {
            break; // the lower endpoint's expansion has terminated
        }
        // Quotient of every x ∈ [u, v] ⊂ (0, 1): a(x) = floor(1/x), which is
        // monotonically decreasing in x.
        let au = u.recip().floor();
        let av = v.recip().floor();
        if au != av {
            break;
        }
        let a_rat = Rational::from_int(au.clone());
        let (nu, nv) = (v.recip() - &a_rat, u.recip() - &a_rat);
        quotients.push(au);
        u = nu;
        v = nv;
    }
    let mut w = CFWord { a0: BigInt::zero(), quotients };
    // Trim until the containment certificate holds (normally a no-op).
    while !w.is_empty() && !cylinder_closure(&w).contains(i) {
        w.quotients.pop();
    }
    Ok(w)
}

/// The folding map `f(p/q) = p/q − 1/(3q²)` (in lowest terms of x).
pub fn folding_step(x: &Rational) -> Rational {
    let q = Rational::from_int(x.denom().clone());
    x - Rational::one() / (Rational::from_int(3) * &q * &q)
}

/// A rational in (0,1) whose denominator is a power of 3 and whose
/// expansion has the constrained shape `[0; 1, 1, a₃, …, a_h]` with h odd,
/// h ≥ 5, `a_h ≥ 2`, and `a_i ≤ 3` for i ≥ 3 — the class preserved by the
/// folding map.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GoodRational {
    pub value: Rational,
    pub cf: CFWord,
    pub power_of_3_exponent: u32,
}

/// Checks all goodness conditions; returns the witness record on success.
pub fn is_good(x: &Rational) -> Option<GoodRational> {
    if !x.is_positive() || x >= &Rational::one() {
        return None;
    }
    let exponent = power_of_3_exponent(x.denom())?;
    let cf = cf_expand(x);
    let h = cf.len();
    if h < 5 || h % 2 == 0 {
        return None;
    }
    let one = BigInt::one();
    let three = BigInt::from(3);
    if cf.quotients[0] != one || cf.quotients[1] != one {
        return None;
    }
    if cf.quotients[2..].iter().any(|a| a > &three) {
        return None;
    }
    if !cf.is_canonical() {
        return None;
    }
    Some(GoodRational { value: x.clone(), cf, power_of_3_exponent: exponent })
}

fn power_of_3_exponent(q: &BigInt) -> Option<u32> {
    let three = BigInt::from(3);
    let mut q = q.clone();
    let mut exp = 0u32;
    while q > BigInt::one() {
        let (div, rem) = q.div_rem(&three);
        if !rem.is_zero() {
            return None;
        }
        q = div;
        exp += 1;
    }
    Some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn word(qs: Vec<i64>) -> CFWord {
        CFWord::new(0, qs).unwrap()
    }

    #[test]
    fn expand_17_27() {
        assert_eq!(cf_expand(&rat(17, 27)), word(vec![1, 1, 1, 2, 3]));
    }

    #[test]
    fn expand_zero() {
        let w = cf_expand(&rat(0, 1));
        assert!(w.is_empty());
        assert!(w.a0.is_zero());
    }

    #[test]
    fn value_17_27() {
        assert_eq!(cf_value(&word(vec![1, 1, 1, 2, 3])), rat(17, 27));
    }

    #[test]
    fn value_half() {
        assert_eq!(cf_value(&word(vec![2])), rat(1, 2));
    }

    #[test]
    fn normalizer_merges_trailing_one() {
        let non_canonical = word(vec![1, 1, 1, 2, 2, 1]);
        assert_eq!(cf_value(&non_canonical), rat(17, 27));
        assert_eq!(non_canonical.normalize(), word(vec![1, 1, 1, 2, 3]));
    }

    #[test]
    fn expand_matches_long_division_oracle() {
        // Independent oracle: plain integer Euclid on (p, q).
        let oracle = |mut p: i64, mut q: i64| -> Vec<i64> {
            let mut out = Vec::new();
            while q != 0 {
                out.push(p.div_euclid(q));
                let r = p.rem_euclid(q);
                p = q;
                q = r;
            }
            out
        };
        for (p, q) in [(1376i64, 2187i64), (17, 27), (355, 1130)] {
            let qs = oracle(p, q);
            let w = cf_expand(&rat(p, q));
            assert_eq!(BigInt::from(qs[0]), w.a0);
            let rest: Vec<BigInt> = qs[1..].iter().map(|&a| BigInt::from(a)).collect();
            assert_eq!(rest, w.quotients);
        }
    }

    #[test]
    fn cylinder_one_two() {
        // endpoints [0;1,1] = 1/2 and [0;1,3] = 3/4
        assert_eq!(
            cylinder_interval(&[1], 2).unwrap(),
            Interval::new(rat(1, 2), rat(3, 4))
        );
    }

    #[test]
    fn cylinder_two_two() {
        // endpoints [0;2,1] = 1/3 and [0;2,3] = 3/7
        assert_eq!(
            cylinder_interval(&[2], 2).unwrap(),
            Interval::new(rat(1, 3), rat(3, 7))
        );
    }

    #[test]
    fn cylinder_nesting() {
        let outer = cylinder_interval(&[1], 2).unwrap();
        let inner = cylinder_interval(&[1, 2], 2).unwrap();
        assert!(outer.contains(&inner));
    }

    #[test]
    fn prefix_inside_cylinder_of_two() {
        let w = cf_prefix_of_interval(&Interval::new(rat(41, 100), rat(42, 100))).unwrap();
        assert!(!w.is_empty());
        assert_eq!(w.quotients[0], BigInt::from(2));
    }

    #[test]
    fn prefix_dual_expansion_boundary() {
        // 1/2 = [0;2] disagrees with 3/4 = [0;1,3] at the first quotient.
        let w = cf_prefix_of_interval(&Interval::new(rat(1, 2), rat(3, 4))).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn prefix_around_17_27() {
        let eps = rat(1, 1_000_000_000);
        let i = Interval::new(rat(17, 27) - &eps, rat(17, 27) + &eps);
        let w = cf_prefix_of_interval(&i).unwrap();
        assert!(w.len() >= 4);
        let expected = [1i64, 1, 1, 2];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(w.quotients[k], BigInt::from(*e));
        }
        assert!(cylinder_closure(&w).contains(&i));
    }

    #[test]
    fn folding_instances() {
        assert_eq!(folding_step(&rat(17, 27)), rat(1376, 2187));
        assert_eq!(folding_step(&rat(1, 3)), rat(8, 27));
        assert_eq!(folding_step(&rat(0, 1)), rat(-1, 3));
    }

    #[test]
    fn goodness_instances() {
        assert!(is_good(&rat(17, 27)).is_some());
        let folded = folding_step(&rat(17, 27));
        let g = is_good(&folded).expect("image of a good rational is good");
        assert_eq!(g.power_of_3_exponent, 7);
        assert!(is_good(&rat(1, 2)).is_none());
    }
}
