//! Dimension estimators and bound calculators: the cover estimator for
//! bounded-quotient numbers inside the ternary Cantor set, exact/enclosed
//! logarithm-ratio lower bounds, the potential-game dimension bound with
//! its admissibility condition, the independence heuristic, and the
//! survivor-tree empirical diagnostic.

use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::cantor::intersects_ternary_cantor;
use crate::contfrac::cylinder_interval;
use crate::enclosure::{log_ratio, pow_enc, Enc};
use crate::error::{Error, Result};
use crate::games::{GameKind, GameParams, Obstacle, ObstacleClass, Transcript};
use crate::interval::{Ball, Interval};
use crate::strategies::AliceStrategy;

// ---------------------------------------------------------------------------
// Cover estimator
// ---------------------------------------------------------------------------

/// Box-counting estimate of the dimension of F_n ∩ C from an exact
/// cylinder cover at scale ε.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub scale: Rational,
    /// Number of type-(A) leaves: cylinders meeting C whose length first
    /// drops below the scale.
    pub count: u64,
    /// log(count) / log(scale⁻¹), certified to width ≤ 10⁻⁶.
    pub estimate: Enc,
    /// The type-(A) cover itself (cylinder words).
    pub cover: Vec<Vec<u64>>,
    /// FNV-1a digest of the serialized cover, for manifest pinning.
    pub manifest_digest: String,
    /// Pruned cylinders certifiably disjoint from C.
    pub pruned: u64,
    /// Expanded internal nodes (including the root).
    pub expanded: u64,
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Depth-first cover of F_n ∩ C at scale ε: every infinite quotient word
/// gets exactly one classified prefix — type (A) when its cylinder meets
/// C and first shrinks below ε, type (B) when the cylinder is certifiably
/// disjoint from C (exact ternary descent).
pub fn hd_estimate_fn_cap_cantor(n: u64, scale: Rational) -> Result<DimensionEstimate> {
    if n < 2 {
        return Err(Error::Config("need quotient bound n >= 2".into()));
    }
    if !scale.is_positive() || scale >= Rational::one() {
        return Err(Error::Config(format!("scale {scale} outside (0,1)")));
    }
    let mut cover: Vec<Vec<u64>> = Vec::new();
    let mut pruned: u64 = 0;
    let mut expanded: u64 = 1; // the empty root word
    let mut stack: Vec<Vec<u64>> = (1..=n).map(|a| vec![a]).collect();
    let mut visited: u64 = 0;
    while let Some(word) = stack.pop() {
        visited += 1;
        if visited > 5_000_000 {
            return Err(Error::ResourceCap(format!(
                "cover exceeded 5e6 nodes (progress: {} leaves, {} prunes)",
                cover.len(),
                pruned
            )));
        }
        let iv = cylinder_interval(&word, n)?;
        if !intersects_ternary_cantor(&iv).0 {
            pruned += 1;
            continue;
        }
        if iv.length() < scale {
            cover.push(word);
            continue;
        }
        expanded += 1;
        for a in 1..=n {
            let mut child = word.clone();
            child.push(a);
            stack.push(child);
        }
    }
    // Partition accounting: every generated child was classified or
    // expanded, so the cover plus the prunes tile the word space.
    let classified = cover.len() as u64 + pruned;
    if n * expanded != classified + (expanded - 1) {
        return Err(Error::Pipeline("cover partition accounting failed".into()));
    }
    cover.sort();
    let count = cover.len() as u64;
    if count == 0 {
        return Err(Error::Pipeline("empty cover: the intersection estimate is vacuous".into()));
    }
    let estimate = enclose_log_ratio(&Rational::from_int(count as i64), &scale.recip())?;
    let digest_bytes = serde_json::to_vec(&cover)?;
    let manifest_digest = format!("{:016x}", fnv1a64(&digest_bytes));
    Ok(DimensionEstimate {
        scale,
        count,
        estimate,
        cover,
        manifest_digest,
        pruned,
        expanded,
    })
}

/// log(a)/log(b) certified to width ≤ 10⁻⁶ (point enclosure when a = 1).
fn enclose_log_ratio(a: &Rational, b: &Rational) -> Result<Enc> {
    if a == &Rational::one() {
        return Ok(Enc::point(Rational::zero()));
    }
    let target = Rational::new(1, 1_000_000i64);
    let mut prec = 64;
    loop {
        let e = log_ratio(a, b, prec)?;
        if e.width() <= target {
            return Ok(e);
        }
        if prec >= 1 << 14 {
            return Err(Error::ResourceCap("log-ratio enclosure failed to tighten".into()));
        }
        prec *= 2;
    }
}

// ---------------------------------------------------------------------------
// Formula bounds
// ---------------------------------------------------------------------------

/// Lower dimension bound log(N − k)/log(β⁻¹) for a game with N children
/// and k deletions per node. Exact when N − k and β⁻¹ share an integer
/// base; otherwise a certified enclosure of width ≤ 10⁻⁹.
pub fn hd_lower_formula(n: u64, k: u64, beta: Rational) -> Result<Enc> {
    if n <= k {
        return Err(Error::Domain(format!("bound vacuous: N = {n} <= k = {k}")));
    }
    if !beta.is_positive() || beta >= Rational::one() {
        return Err(Error::Domain(format!("beta {beta} outside (0,1)")));
    }
    let r = n - k;
    if r == 1 {
        return Ok(Enc::point(Rational::zero()));
    }
    let inv = beta.recip();
    if inv.denom() == &num_bigint::BigInt::from(1) {
        if let Ok(b_int) = u64::try_from(&inv.floor()) {
            if let Some(exact) = common_base_log(r, b_int) {
                return Ok(Enc::point(exact));
            }
        }
    }
    let target = Rational::new(1, 1_000_000_000i64);
    let mut prec = 64;
    loop {
        let e = log_ratio(&Rational::from_int(r as i64), &inv, prec)?;
        if e.width() <= target {
            return Ok(e);
        }
        if prec >= 1 << 14 {
            return Err(Error::ResourceCap("log-ratio enclosure failed to tighten".into()));
        }
        prec *= 2;
    }
}

/// log(r)/log(b) as an exact rational when r = g^i and b = g^j for a
/// common integer base g.
fn common_base_log(r: u64, b: u64) -> Option<Rational> {
    fn power_exponent(mut x: u64, g: u64) -> Option<i64> {
        let mut e = 0i64;
        while x > 1 {
            if x % g != 0 {
                return None;
            }
            x /= g;
            e += 1;
        }
        Some(e)
    }
    if b < 2 {
        return None;
    }
    for g in 2..=r.min(b).min(4096) {
        if let (Some(i), Some(j)) = (power_exponent(r, g), power_exponent(b, g)) {
            if i > 0 && j > 0 {
                return Some(Rational::new(i, j));
            }
        }
    }
    None
}

/// The potential-game dimension bound δ − K₁·α^η/|log β| together with
/// its admissibility condition α^c ≤ (1/K₂)(1 − β^{η−c}).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PotentialBound {
    pub bound: Enc,
    /// Some(true/false) when the condition is certified either way; None
    /// when the enclosures cannot separate the two sides.
    pub condition_satisfied: Option<bool>,
    /// Certified positivity of the bound, evaluated when the condition
    /// holds and K₂ > ηK₁/δ (where the bound form promises it).
    pub positivity_certified: Option<bool>,
}

pub fn potential_hd_bound(
    delta: Rational,
    eta: Rational,
    alpha: Rational,
    beta: Rational,
    c: Rational,
    k1: Rational,
    k2: Rational,
) -> Result<PotentialBound> {
    if c >= eta {
        return Err(Error::Config(format!("need c < eta, got c = {c}, eta = {eta}")));
    }
    if !beta.is_positive() || beta > rat(1, 4) {
        return Err(Error::Config(format!("beta {beta} outside (0, 1/4]")));
    }
    if alpha.is_negative() || !delta.is_positive() || !k2.is_positive() || k1.is_negative() {
        return Err(Error::Config("need alpha >= 0, delta > 0, K1 >= 0, K2 > 0".into()));
    }
    if alpha.is_zero() {
        return Ok(PotentialBound {
            bound: Enc::point(delta),
            condition_satisfied: Some(true),
            positivity_certified: Some(true),
        });
    }
    let prec = 128;
    let log_beta_inv = crate::enclosure::ln_enc(&beta.recip(), prec)?;
    let alpha_eta = pow_enc(&alpha, &eta, prec)?;
    let bound = Enc::point(delta.clone())
        .sub(&alpha_eta.scale(&k1).div(&log_beta_inv)?);
    // Perfect-power cases collapse to points, so exact boundary
    // comparisons of the admissibility condition are decidable.
    let pow_or_point = |base: &Rational, e: &Rational| -> Result<Enc> {
        match exact_rational_pow(base, e) {
            Some(v) => Ok(Enc::point(v)),
            None => pow_enc(base, e, prec),
        }
    };
    let lhs = pow_or_point(&alpha, &c)?;
    let beta_pow = pow_or_point(&beta, &(&eta - &c))?;
    let rhs = Enc::point(Rational::one()).sub(&beta_pow).scale(&k2.recip());
    let condition_satisfied = if lhs.hi <= rhs.lo {
        Some(true)
    } else if rhs.hi < lhs.lo {
        Some(false)
    } else {
        None
    };
    let mut positivity_certified = None;
    if condition_satisfied == Some(true) && &k2 * &delta > &eta * &k1 {
        if bound.lo.is_positive() {
            positivity_certified = Some(true);
        } else if !bound.hi.is_positive() {
            return Err(Error::Pipeline(
                "bound certified non-positive where the bound form promises \
                 positivity — this would falsify the bound"
                    .into(),
            ));
        }
    }
    Ok(PotentialBound { bound, condition_satisfied, positivity_certified })
}

/// x^c as an exact rational when c = p/q and x is a perfect q-th power.
fn exact_rational_pow(x: &Rational, c: &Rational) -> Option<Rational> {
    if !x.is_positive() {
        return None;
    }
    if c.is_zero() {
        return Some(Rational::one());
    }
    let q = u32::try_from(c.denom()).ok()?;
    let p = i64::try_from(c.numer()).ok()?;
    let rn = x.numer().nth_root(q);
    let rd = x.denom().nth_root(q);
    if &num_traits::pow(rn.clone(), q as usize) != x.numer()
        || &num_traits::pow(rd.clone(), q as usize) != x.denom()
    {
        return None;
    }
    Some(Rational::new(rn, rd).pow_i(p))
}

/// Heuristic dimension of an intersection of independent sets:
/// max(0, d₁ + d₂ − d).
pub fn independence_heuristic(d1: Rational, d2: Rational, d: u32) -> Result<Rational> {
    let dim = Rational::from_int(i64::from(d));
    if d1.is_negative() || d2.is_negative() || d1 > dim || d2 > dim {
        return Err(Error::Config("component dimensions must lie in [0, d]".into()));
    }
    Ok(Rational::zero().max(&d1 + &d2 - dim))
}

// ---------------------------------------------------------------------------
// Survivor tree
// ---------------------------------------------------------------------------

/// Configuration of the survivor-tree diagnostic on [0,1] with Lebesgue
/// ambient measure. Grid balls shrink by β each turn; levels group N
/// turns; a node survives while its accumulated obstacle potential stays
/// under the (γ·radius)^c threshold.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurvivorConfig {
    pub beta: Rational,
    /// Turns per level (N).
    pub group: usize,
    /// Threshold coefficient γ.
    pub gamma: Rational,
    /// Potential exponent c.
    pub c: Rational,
    pub levels: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LevelStats {
    pub level: usize,
    /// Grid balls examined at this level (#D_j).
    pub candidates: u64,
    /// Balls under the potential threshold (#D_j').
    pub survivors: u64,
    /// Minimum surviving-children count over the level's parents.
    pub min_branching: u64,
    /// survivors / parents.
    pub mean_branching: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurvivorReport {
    pub config: SurvivorConfig,
    pub stats: Vec<LevelStats>,
    pub final_survivors: u64,
    /// log(#D_L') / (L·N·log β⁻¹), certified.
    pub dimension: Enc,
}

struct Node {
    transcript: Transcript,
    /// Obstacles from the node's path that still intersect its ball.
    ledger: Vec<Obstacle>,
}

/// Runs the survivor-tree diagnostic: β-adic grids of maximal
/// half-radius-separated centers, 3ρ-separated level families, Alice's
/// strategy replayed along every descent path, and the γ-threshold
/// potential filter. `alice = None` plays the trivial strategy (no
/// deletions): every node survives and the empirical dimension approaches
/// 1 up to grid rounding.
pub fn survivor_tree(
    mut alice: Option<&mut dyn AliceStrategy>,
    config: &SurvivorConfig,
) -> Result<SurvivorReport> {
    if config.beta > rat(1, 4) || !config.beta.is_positive() {
        return Err(Error::Config("beta must lie in (0, 1/4]".into()));
    }
    if config.group == 0 || config.levels == 0 {
        return Err(Error::Config("need group >= 1 and levels >= 1".into()));
    }
    if !config.c.is_positive() || !config.gamma.is_positive() {
        return Err(Error::Config("need c > 0 and gamma > 0".into()));
    }
    let rho0 = rat(1, 2);
    let params = match alice.as_deref() {
        Some(s) => s.declared().clone(),
        None => GameParams {
            kind: GameKind::Potential { c: config.c.clone() },
            alpha: rat(1, 4),
            beta: config.beta.clone(),
            rho: rho0.clone(),
            obstacle_class: ObstacleClass::Points,
            dimension: 1,
            deferred_avoidance: false,
        },
    };
    let mut root_transcript = Transcript::new(params)?;
    root_transcript
        .bob_moves
        .push(Ball::Line(Interval::new(Rational::zero(), Rational::one())));
    let mut current = vec![Node { transcript: root_transcript, ledger: Vec::new() }];
    let prec = 64;
    let mut stats = Vec::new();
    let mut examined: u64 = 0;

    for level in 1..=config.levels {
        let turn_base = (level - 1) * config.group;
        let child_radius = &rho0 * config.beta.pow_i((turn_base + config.group) as i64);
        let threshold = pow_enc(&(&config.gamma * &child_radius), &config.c, prec)?;
        let spacing = &child_radius / rat(2, 1);
        let step = rat(3, 1) * &child_radius; // 6 lattice spacings: exact 3ρ separation
        let mut next: Vec<Node> = Vec::new();
        let mut min_branching = u64::MAX;
        let mut candidates: u64 = 0;
        let parents = current.len() as u64;
        for node in &mut current {
            // Alice's answer to the node's last ball is shared by all of
            // its children.
            let shared: Vec<Obstacle> = match alice.as_deref_mut() {
                Some(s) => s.respond(&node.transcript)?,
                None => Vec::new(),
            };
            let parent_ball = node
                .transcript
                .bob_moves
                .last()
                .expect("nonempty")
                .as_interval()
                .expect("line game")
                .clone();
            let mut surviving_children: u64 = 0;
            // Grid children: lattice multiples of ρ_child/2 whose ball
            // fits inside the parent, thinned to exact 3ρ separation.
            let first = {
                let min_center = parent_ball.lo() + &child_radius;
                let k = (&min_center / &spacing).ceil();
                Rational::from_int(k) * &spacing
            };
            let max_center = parent_ball.hi() - &child_radius;
            let mut center = first;
            while center <= max_center {
                candidates += 1;
                examined += 1;
                if examined > 5_000_000 {
                    return Err(Error::ResourceCap(
                        "survivor tree exceeded 5e6 grid balls".into(),
                    ));
                }
                let mut t = node.transcript.clone();
                t.alice_moves.push(shared.clone());
                let mut fresh: Vec<Obstacle> = shared.clone();
                for s in 1..=config.group {
                    let radius = &rho0 * config.beta.pow_i((turn_base + s) as i64);
                    t.bob_moves
                        .push(Ball::Line(Interval::from_center_radius(&center, &radius)));
                    if s < config.group {
                        if let Some(strategy) = alice.as_deref_mut() {
                            let obs = strategy.respond(&t)?;
                            fresh.extend(obs.iter().cloned());
                            t.alice_moves.push(obs);
                        } else {
                            t.alice_moves.push(Vec::new());
                        }
                    }
                }
                let ball = Ball::Line(Interval::from_center_radius(&center, &child_radius));
                let inherited: Vec<Obstacle> = node
                    .ledger
                    .iter()
                    .chain(fresh.iter())
                    .filter(|o| o.intersects_ball(&ball))
                    .cloned()
                    .collect();
                let mut phi = Enc::point(Rational::zero());
                for obs in &inherited {
                    phi = phi.add(&pow_enc(&obs.thickness, &config.c, prec)?);
                }
                let survived = phi.hi <= threshold.lo;
                if survived {
                    surviving_children += 1;
                    next.push(Node { transcript: t, ledger: inherited });
                }
                center = center + &step;
            }
            min_branching = min_branching.min(surviving_children);
        }
        let survivors = next.len() as u64;
        stats.push(LevelStats {
            level,
            candidates,
            survivors,
            min_branching: if min_branching == u64::MAX { 0 } else { min_branching },
            mean_branching: Rational::new(survivors as i64, parents.max(1) as i64),
        });
        if next.is_empty() {
            return Err(Error::SearchExhausted(format!(
                "all grid balls eliminated at level {level}"
            )));
        }
        current = next;
    }

    let final_survivors = current.len() as u64;
    let denominator_base = config
        .beta
        .recip()
        .pow_i((config.levels * config.group) as i64);
    let dimension =
        enclose_log_ratio(&Rational::from_int(final_survivors as i64), &denominator_base)?;
    Ok(SurvivorReport {
        config: config.clone(),
        stats,
        final_survivors,
        dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::alice_ba1;

    #[test]
    fn cover_estimator_coarse_scale() {
        let est = hd_estimate_fn_cap_cantor(2, rat(1, 2)).unwrap();
        // Both length-1 cylinders meet C and are already below scale 1/2.
        assert_eq!(est.count, 2);
        assert!(est.estimate.contains(&Rational::one()));
        assert_eq!(est.cover, vec![vec![1], vec![2]]);
        assert_eq!(est.manifest_digest.len(), 16);
    }

    #[test]
    fn cover_estimator_monotone_in_scale() {
        let coarse = hd_estimate_fn_cap_cantor(2, rat(1, 100)).unwrap();
        let fine = hd_estimate_fn_cap_cantor(2, rat(1, 10_000)).unwrap();
        assert!(fine.count >= coarse.count);
    }

    #[test]
    fn lower_formula_examples() {
        let e = hd_lower_formula(4, 2, rat(1, 4)).unwrap();
        assert_eq!(e.lo, rat(1, 2));
        assert_eq!(e.hi, rat(1, 2));
        let e = hd_lower_formula(2, 1, rat(1, 3)).unwrap();
        assert_eq!(e, Enc::point(Rational::zero()));
        // log 2 / log 3 ≈ 0.6309
        let e = hd_lower_formula(3, 1, rat(1, 3)).unwrap();
        assert!(e.lo > rat(6309, 10_001) && e.hi < rat(6310, 10_000));
        assert!(hd_lower_formula(2, 2, rat(1, 4)).is_err());
    }

    #[test]
    fn lower_formula_monotonicity() {
        let mut prev = hd_lower_formula(3, 2, rat(1, 4)).unwrap();
        for n in 4..10u64 {
            let next = hd_lower_formula(n, 2, rat(1, 4)).unwrap();
            assert!(next.hi >= prev.lo, "monotone in N");
            prev = next;
        }
        let more_deletions = hd_lower_formula(9, 5, rat(1, 4)).unwrap();
        let fewer_deletions = hd_lower_formula(9, 2, rat(1, 4)).unwrap();
        assert!(more_deletions.lo <= fewer_deletions.hi);
    }

    #[test]
    fn potential_bound_cases() {
        // α = 0 limit
        let b = potential_hd_bound(
            rat(1, 1),
            rat(1, 1),
            rat(0, 1),
            rat(1, 4),
            rat(1, 2),
            rat(1, 1),
            rat(1, 1),
        )
        .unwrap();
        assert_eq!(b.bound, Enc::point(rat(1, 1)));
        assert_eq!(b.condition_satisfied, Some(true));
        // Exact boundary: α = 1/16, c = 1/2 → α^c = 1/4; pick K₂ with
        // (1/K₂)(1 − β^{1/2}) = 1/4 at β = 1/4 → K₂ = 2.
        let b = potential_hd_bound(
            rat(1, 1),
            rat(1, 1),
            rat(1, 16),
            rat(1, 4),
            rat(1, 2),
            rat(1, 1),
            rat(2, 1),
        )
        .unwrap();
        assert_eq!(b.condition_satisfied, Some(true));
        assert_eq!(b.positivity_certified, Some(true));
        assert!(b.bound.lo > rat(9, 10)); // 1 − (1/16)/log 4 ≈ 0.955
        // Condition certifiably false for large α.
        let b = potential_hd_bound(
            rat(1, 1),
            rat(1, 1),
            rat(1, 2),
            rat(1, 4),
            rat(1, 2),
            rat(1, 1),
            rat(100, 1),
        )
        .unwrap();
        assert_eq!(b.condition_satisfied, Some(false));
        assert!(potential_hd_bound(
            rat(1, 1),
            rat(1, 2),
            rat(1, 16),
            rat(1, 4),
            rat(1, 2),
            rat(1, 1),
            rat(1, 1)
        )
        .is_err()); // c = η rejected
    }

    #[test]
    fn independence_examples() {
        assert_eq!(
            independence_heuristic(rat(531, 1000), rat(631, 1000), 1).unwrap(),
            rat(162, 1000)
        );
        assert_eq!(
            independence_heuristic(rat(1, 3), rat(2, 3), 1).unwrap(),
            Rational::zero()
        );
        assert_eq!(independence_heuristic(rat(1, 1), rat(1, 1), 1).unwrap(), rat(1, 1));
        assert!(independence_heuristic(rat(3, 2), rat(0, 1), 1).is_err());
    }

    #[test]
    fn survivor_tree_trivial_alice() {
        let config = SurvivorConfig {
            beta: rat(1, 4),
            group: 2,
            gamma: rat(1, 4),
            c: rat(1, 2),
            levels: 3,
        };
        let report = survivor_tree(None, &config).unwrap();
        // No deletions: every candidate survives.
        for level in &report.stats {
            assert_eq!(level.candidates, level.survivors);
        }
        // Dimension within the grid-rounding slack of 1.
        let slack = Rational::new(1i64, (config.group * config.levels) as i64);
        assert!(&Rational::one() - &report.dimension.lo <= slack);
        assert!(report.dimension.hi <= Rational::one());
    }

    #[test]
    fn survivor_tree_gamma_monotone() {
        let base = SurvivorConfig {
            beta: rat(1, 4),
            group: 3,
            gamma: rat(1, 4),
            c: rat(1, 2),
            levels: 1,
        };
        let mut alice = alice_ba1(rat(1, 66), rat(1, 4)).unwrap();
        let generous = survivor_tree(Some(&mut alice), &base).unwrap();
        let strict_config = SurvivorConfig { gamma: rat(1, 64), ..base.clone() };
        let strict = survivor_tree(Some(&mut alice), &strict_config).unwrap();
        assert!(strict.final_survivors <= generous.final_survivors);
        assert!(generous.final_survivors <= generous.stats[0].candidates);
        // The deletion strategy removes something at this resolution.
        assert!(generous.final_survivors < generous.stats[0].candidates);
    }
}
