//! Certificate-producing pipelines: arithmetic progressions inside
//! middle-ε Cantor sets, the bounded-quotient/ternary intersection point,
//! the bounded-quotient sumset window, the folding construction inside
//! F₉ ∩ C, and the progression-length budget. Every pipeline emits a
//! serializable certificate that an independent auditor re-checks from
//! the serialized data alone.

use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::cantor::{CantorSpec, MeetsVerdict, StageAddress};
use crate::contfrac::{cf_expand, cf_prefix_of_interval, folding_step, is_good, CFWord};
use crate::enclosure::{ln_enc, pow_enc_exponent, Enc};
use crate::error::{Error, Result};
use crate::games::{run_match, GameKind, GameParams, MatchResult, Obstacle, ObstacleClass, Status};
use crate::interval::{Ball, Interval};
use crate::strategies::{
    alice_fn, alice_meps, bob_construction_survival, bob_subdivision, combine_alice, lift,
    AliceStrategy, CombineMode, Conjugation,
};
use crate::ternary::{ternary_digits, value_of_digits, TernaryDigits};

// ---------------------------------------------------------------------------
// Certificate types
// ---------------------------------------------------------------------------

/// The set a certificate speaks about.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "set")]
pub enum SetTag {
    /// Middle-ε Cantor set.
    Meps { epsilon: Rational },
    /// Continued-fraction partial quotients all ≤ n.
    BoundedQuotients { n: u64 },
}

/// How one element's membership is certified.
///
/// Game-produced elements get *enclosure* proofs: the element is the
/// midpoint of a nested-interval enclosure that (a) cleared the whole
/// obstacle ledger and (b) certifiably meets the target set. This is the
/// finite-depth reading of "the outcome of the game lies in the set".
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "proof")]
pub enum MembershipProof {
    /// The element is exactly a construction endpoint.
    Endpoint { address: StageAddress },
    /// Nested intervals + cleared ledger + certified intersection with the
    /// Cantor set at the recorded descent depth.
    Enclosure {
        nested: Vec<Interval>,
        ledger: Vec<Obstacle>,
        meets_depth: usize,
    },
    /// Nested intervals + cleared ledger + a certified common
    /// continued-fraction prefix of the final interval.
    QuotientPrefix {
        nested: Vec<Interval>,
        ledger: Vec<Obstacle>,
        prefix: CFWord,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct APCertificate {
    pub set: SetTag,
    /// Strictly increasing, exactly equally spaced.
    pub elements: Vec<Rational>,
    /// Common difference of the progression.
    pub gap: Rational,
    /// One proof per element, in order.
    pub proofs: Vec<MembershipProof>,
    /// Game / search depth used by the producer.
    pub depth: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PointCertificate {
    /// Nested interval chain ending in the certified enclosure.
    pub nested: Vec<Interval>,
    pub ledger: Vec<Obstacle>,
    /// Certified common continued-fraction prefix of the final interval.
    pub cf_prefix: CFWord,
    /// Ternary digits certifying a Cantor-set cylinder, when applicable.
    pub ternary_prefix: Option<Vec<u8>>,
    /// Exact per-step length ratio of the chain, when constant.
    pub ratio: Option<Rational>,
    /// Every certified partial quotient must be ≤ this.
    pub quotient_bound: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SumsetCertificate {
    pub t: Rational,
    pub x_enclosure: Interval,
    pub nested: Vec<Interval>,
    pub ledger: Vec<Obstacle>,
    /// Certified CF prefix of the x-enclosure.
    pub x_prefix: CFWord,
    /// Certified CF prefix of the (t − x)-enclosure.
    pub complement_prefix: CFWord,
    pub quotient_bound: u64,
}

/// Output of the progression-length budget calculation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BudgetRecord {
    /// Largest progression length fitting the budget (0 = budget empty).
    pub k: u64,
    /// Enclosure of the exponent c = 1 − 1/log(α⁻¹).
    pub c: Enc,
    /// Enclosure of α^c (the per-step cost).
    pub alpha_pow: Enc,
    /// Enclosure of the available budget (1/K₂)(1 − β^{1−c}).
    pub budget: Enc,
    /// Enclosure of k·α·log(α⁻¹), the trend-reporting ratio.
    pub trend: Enc,
}

/// Diagnostics of a progression certificate against the upper-bound
/// arguments (no pass/fail semantics — reporting only).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct APDiagnostics {
    /// Smallest construction interval containing the progression (Cantor
    /// certificates only).
    pub interval: Option<Interval>,
    /// Its removed middle gap.
    pub gap_interval: Option<Interval>,
    /// |I| / |J| = 1/ε.
    pub interval_gap_ratio: Option<Rational>,
    /// gap ≥ |J| held?
    pub gap_dominates: Option<bool>,
    /// k − 1 ≤ |I|/|J| held?
    pub length_bound_ok: Option<bool>,
    /// Longest common CF prefix of the extreme elements (bounded-quotient
    /// certificates only).
    pub common_prefix: Option<CFWord>,
    /// Branching quotients after the common prefix.
    pub branch_letters: Option<(Option<String>, Option<String>)>,
    /// diam(elements) / gap.
    pub diameter_over_gap: Rational,
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn line_chain(result: &MatchResult) -> Vec<Interval> {
    result
        .transcript
        .bob_moves
        .iter()
        .map(|b| b.as_interval().expect("1-dimensional match").clone())
        .collect()
}

/// Certifies `i` meets the Cantor set, retrying at doubling descent depth;
/// a certified-empty verdict is a hard pipeline failure (the game claimed
/// otherwise).
fn certified_meets(spec: &CantorSpec, i: &Interval) -> Result<usize> {
    let mut depth = 64usize;
    loop {
        match spec.interval_meets(i, depth)? {
            MeetsVerdict::NonemptyCertified { .. } => return Ok(depth),
            MeetsVerdict::EmptyCertified { gap } => {
                return Err(Error::Pipeline(format!(
                    "enclosure [{}, {}] certifiably misses the target set \
                     (inside removed gap [{}, {}])",
                    i.lo(),
                    i.hi(),
                    gap.lo(),
                    gap.hi()
                )))
            }
            MeetsVerdict::Unknown => {
                if depth >= 1 << 14 {
                    return Err(Error::ResourceCap(
                        "intersection verdict unresolved at maximum descent depth".into(),
                    ));
                }
                depth *= 2;
            }
        }
    }
}

fn require_cleared(result: &MatchResult, what: &str) -> Result<()> {
    if result.transcript.status != Status::DepthReached {
        return Err(Error::Pipeline(format!(
            "{what}: match ended early with status {:?} ({} obstacles on the ledger)",
            result.transcript.status,
            result.ledger.len()
        )));
    }
    if !result.cleared {
        let blocking: Vec<String> = result
            .ledger
            .iter()
            .filter(|o| o.intersects_ball(&result.enclosure))
            .map(|o| format!("turn {}: thickness {}", o.turn_created, o.thickness))
            .collect();
        return Err(Error::Pipeline(format!(
            "{what}: final enclosure not cleared; blocking obstacles: [{}]",
            blocking.join("; ")
        )));
    }
    Ok(())
}

fn map_intervals(chain: &[Interval], scale: &Rational, shift: &Rational) -> Vec<Interval> {
    chain.iter().map(|i| i.affine_image(scale, shift)).collect()
}

fn map_ledger(ledger: &[Obstacle], scale: &Rational, shift: &Rational) -> Vec<Obstacle> {
    ledger.iter().map(|o| o.affine_image(scale, shift)).collect()
}

fn all_quotients_le(w: &CFWord, bound: u64) -> bool {
    use num_bigint::BigInt;
    let b = BigInt::from(bound);
    w.quotients.iter().all(|q| q <= &b)
}

// ---------------------------------------------------------------------------
// 3-term progression on the middle-ε Cantor set
// ---------------------------------------------------------------------------

/// Certifies a 3-term arithmetic progression `{a, (a+t)/2, t}` on M_ε by
/// playing the 2-fold intersection strategy (the set and its double
/// reflected through `a`) against an equal-spacing Bob on the unit-window
/// sixth farthest from `a`. Requires ε ≤ 1/49 so the combined deletion
/// budget fits the boundary identity 2·(1/4) + 3·(1/6) = 1.
pub fn certify_ap3_meps(epsilon: Rational, a: Rational, depth: usize) -> Result<APCertificate> {
    if !epsilon.is_positive() || epsilon > rat(1, 49) {
        return Err(Error::Config(format!("epsilon {epsilon} outside (0, 1/49]")));
    }
    let spec = CantorSpec::new(epsilon.clone())?;
    let a_addr = spec
        .is_endpoint(&a)?
        .ok_or_else(|| Error::Config(format!("{a} is not a construction endpoint")))?;

    let beta = rat(1, 6);
    let make_sub = || -> Result<Box<dyn AliceStrategy>> {
        let s = alice_meps(spec.clone(), beta.clone())?;
        let lifted = GameParams {
            alpha: rat(1, 4),
            rho: rat(1, 24),
            ..s.declared().clone()
        };
        Ok(Box::new(lift(Box::new(s), lifted)?))
    };
    // Second target: 2·M_ε − a, reached through the similarity x ↦ 2x − a.
    let mut combined = combine_alice(
        vec![
            (make_sub()?, Conjugation::identity()),
            (make_sub()?, Conjugation { scale: rat(2, 1), shift: -&a }),
        ],
        CombineMode::AbsoluteSum,
    )?;
    let window = if a <= rat(1, 2) {
        Interval::new(rat(5, 6), rat(1, 1))
    } else {
        Interval::new(rat(0, 1), rat(1, 6))
    };
    let params = GameParams { deferred_avoidance: true, ..combined.declared().clone() };
    let mut bob = bob_subdivision(3, beta, rat(1, 4), window)?;
    let result = run_match(params, &mut combined, &mut bob, depth)?;
    require_cleared(&result, "3-term progression pipeline")?;

    let chain = line_chain(&result);
    let enclosure = chain.last().expect("nonempty chain").clone();
    let t = enclosure.center();
    let mid = Rational::midpoint(&a, &t);

    // t ∈ M_ε (direct) and (a+t)/2 ∈ M_ε (the reflected target, pulled
    // back through x ↦ (x+a)/2).
    let t_meets = certified_meets(&spec, &enclosure)?;
    let half = rat(1, 2);
    let a_half = &a / rat(2, 1);
    let mid_chain = map_intervals(&chain, &half, &a_half);
    let mid_ledger = map_ledger(&result.ledger, &half, &a_half);
    let mid_meets = certified_meets(&spec, mid_chain.last().expect("nonempty"))?;

    let mut triples = vec![
        (a.clone(), MembershipProof::Endpoint { address: a_addr }),
        (
            mid,
            MembershipProof::Enclosure {
                nested: mid_chain,
                ledger: mid_ledger,
                meets_depth: mid_meets,
            },
        ),
        (
            t,
            MembershipProof::Enclosure {
                nested: chain,
                ledger: result.ledger,
                meets_depth: t_meets,
            },
        ),
    ];
    triples.sort_by(|x, y| x.0.cmp(&y.0));
    let gap = &triples[1].0 - &triples[0].0;
    if !gap.is_positive() || &triples[2].0 - &triples[1].0 != gap {
        return Err(Error::Pipeline("produced elements are not a progression".into()));
    }
    let (elements, proofs) = triples.into_iter().unzip();
    Ok(APCertificate { set: SetTag::Meps { epsilon }, elements, gap, proofs, depth })
}

// ---------------------------------------------------------------------------
// 4-term progression via the self-similarity pair search
// ---------------------------------------------------------------------------

/// Certifies the symmetric 4-term progression
/// `{1/2−3t, 1/2−t, 1/2+t, 1/2+3t}` on M_ε by finding t > 0 with both
/// u = 1/2 + t and 3u − 1 in M_ε. An exact endpoint pair is preferred
/// (all four proofs become endpoint proofs); otherwise a synchronized
/// pair-tree descent yields nested-interval proofs.
pub fn certify_newhouse_ap4(epsilon: Rational, depth: usize) -> Result<APCertificate> {
    if !epsilon.is_positive() || epsilon > rat(1, 3) {
        return Err(Error::Config(format!("epsilon {epsilon} outside (0, 1/3]")));
    }
    let spec = CantorSpec::new(epsilon.clone())?;
    let half = rat(1, 2);
    let two_thirds = rat(2, 3);

    // Phase 1: exact endpoint pair u, 3u−1 (bounded enumeration).
    if let Some(u) = newhouse_exact_pair(&spec, &half, &two_thirds, depth.min(12))? {
        let t = &u - &half;
        let elements = vec![
            &half - rat(3, 1) * &t,
            &half - &t,
            &half + &t,
            &half + rat(3, 1) * &t,
        ];
        let mut proofs = Vec::new();
        for e in &elements {
            let addr = spec.is_endpoint(e)?.ok_or_else(|| {
                Error::Pipeline(format!("symmetry violated: {e} is not an endpoint"))
            })?;
            proofs.push(MembershipProof::Endpoint { address: addr });
        }
        let gap = rat(2, 1) * &t;
        return Ok(APCertificate { set: SetTag::Meps { epsilon }, elements, gap, proofs, depth });
    }

    // Phase 2: synchronized descent through pairs (A, B) of construction
    // intervals with (3A − 1) ∩ B ≠ ∅.
    let unit = Interval::unit();
    let (a_chain, b_chain) = newhouse_pair_dfs(&spec, &unit, &unit, &half, &two_thirds, depth)
        .ok_or_else(|| {
            Error::SearchExhausted(format!(
                "no surviving interval pair at depth {depth} (not a disproof)"
            ))
        })?;
    let a_n = a_chain.last().expect("nonempty").clone();
    let b_n = b_chain.last().expect("nonempty").clone();
    let image = a_n.affine_image(&rat(3, 1), &rat(-1, 1));
    let w = image
        .intersection(&b_n)
        .ok_or_else(|| Error::Pipeline("pair invariant broken".into()))?;
    let u_window = w
        .affine_image(&rat(1, 3), &rat(1, 3))
        .intersection(&a_n)
        .ok_or_else(|| Error::Pipeline("pair invariant broken".into()))?;
    let u = u_window.center();
    let t = &u - &half;
    if !t.is_positive() {
        return Err(Error::SearchExhausted(
            "descent collapsed onto t = 0 (not a disproof)".into(),
        ));
    }
    let elements = vec![
        &half - rat(3, 1) * &t,
        &half - &t,
        &half + &t,
        &half + rat(3, 1) * &t,
    ];
    let reflect = |chain: &[Interval]| map_intervals(chain, &rat(-1, 1), &rat(1, 1));
    let enclosure_proof = |nested: Vec<Interval>| -> Result<MembershipProof> {
        let d = certified_meets(&spec, nested.last().expect("nonempty"))?;
        Ok(MembershipProof::Enclosure { nested, ledger: Vec::new(), meets_depth: d })
    };
    let proofs = vec![
        enclosure_proof(reflect(&b_chain))?, // 1/2 − 3t = 1 − (3u − 1)
        enclosure_proof(reflect(&a_chain))?, // 1/2 − t = 1 − u
        enclosure_proof(a_chain)?,           // 1/2 + t = u
        enclosure_proof(b_chain)?,           // 1/2 + 3t = 3u − 1
    ];
    let gap = rat(2, 1) * &t;
    Ok(APCertificate { set: SetTag::Meps { epsilon }, elements, gap, proofs, depth })
}

/// Bounded search for an endpoint u ∈ (lo, hi] with 3u − 1 also an
/// endpoint.
fn newhouse_exact_pair(
    spec: &CantorSpec,
    lo: &Rational,
    hi: &Rational,
    stages: usize,
) -> Result<Option<Rational>> {
    let window = Interval::new(lo.clone(), hi.clone());
    let mut frontier = vec![Interval::unit()];
    let mut budget: usize = 100_000;
    for _ in 0..=stages {
        let mut next = Vec::new();
        for j in &frontier {
            for e in [j.lo(), j.hi()] {
                if e > lo && e <= hi && spec.is_endpoint(&(rat(3, 1) * e - rat(1, 1)))?.is_some() {
                    return Ok(Some(e.clone()));
                }
            }
            let (l, r) = spec.children(j);
            for child in [l, r] {
                if child.intersects(&window) {
                    next.push(child);
                }
            }
            budget = budget.saturating_sub(1);
            if budget == 0 {
                return Ok(None);
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// First full-depth branch of the pair tree, biased toward the upper ends
/// (keeps u away from the t = 0 degeneracy).
fn newhouse_pair_dfs(
    spec: &CantorSpec,
    a: &Interval,
    b: &Interval,
    lo: &Rational,
    hi: &Rational,
    depth: usize,
) -> Option<(Vec<Interval>, Vec<Interval>)> {
    let window = Interval::new(lo.clone(), hi.clone());
    if !a.intersects(&window) {
        return None;
    }
    if !a.affine_image(&rat(3, 1), &rat(-1, 1)).intersects(b) {
        return None;
    }
    if depth == 0 {
        return Some((vec![a.clone()], vec![b.clone()]));
    }
    let (al, ar) = spec.children(a);
    let (bl, br) = spec.children(b);
    for a_child in [&ar, &al] {
        for b_child in [&br, &bl] {
            if let Some((mut ac, mut bc)) =
                newhouse_pair_dfs(spec, a_child, b_child, lo, hi, depth - 1)
            {
                ac.insert(0, a.clone());
                bc.insert(0, b.clone());
                return Some((ac, bc));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Brute-force endpoint progression search (independent oracle)
// ---------------------------------------------------------------------------

/// Exact longest arithmetic progression among stage-`stage` construction
/// endpoints of M_ε, capped at `kmax` terms. Independent of the game
/// pipelines: a plain sorted-set scan.
pub fn search_ap_endpoints(epsilon: Rational, stage: usize, kmax: usize) -> Result<APCertificate> {
    if stage > 9 {
        return Err(Error::ResourceCap(format!(
            "stage {stage} exceeds the quadratic-scan cap (9)"
        )));
    }
    if kmax < 2 {
        return Err(Error::Config("kmax must be at least 2".into()));
    }
    let spec = CantorSpec::new(epsilon.clone())?;
    let mut endpoints: Vec<Rational> = Vec::new();
    for (_, iv) in spec.stage_intervals(stage)? {
        endpoints.push(iv.lo().clone());
        endpoints.push(iv.hi().clone());
    }
    endpoints.sort();
    endpoints.dedup();
    let set: std::collections::HashSet<&Rational> = endpoints.iter().collect();

    let mut best: (usize, Rational, Rational) = (2, endpoints[0].clone(), {
        &endpoints[1] - &endpoints[0]
    });
    for i in 0..endpoints.len() {
        for j in (i + 1)..endpoints.len() {
            let d = &endpoints[j] - &endpoints[i];
            // Only count progressions at their left end.
            if set.contains(&(&endpoints[i] - &d)) {
                continue;
            }
            let mut len = 2usize;
            let mut next = &endpoints[j] + &d;
            while len < kmax && set.contains(&next) {
                len += 1;
                next = next + &d;
            }
            // Ties go to the widest progression.
            if len > best.0 || (len == best.0 && d > best.2) {
                best = (len, endpoints[i].clone(), d);
            }
        }
    }
    let (len, start, d) = best;
    // Upper-bound respect: (len − 1)·ε ≤ 1 must hold for every M_ε
    // progression; a violation would falsify the covering bound.
    if Rational::from_int((len - 1) as i64) * &epsilon > Rational::one() {
        return Err(Error::Pipeline(format!(
            "found a {len}-term progression violating the 1/eps + 1 length bound"
        )));
    }
    let mut elements = Vec::with_capacity(len);
    let mut proofs = Vec::with_capacity(len);
    for idx in 0..len {
        let e = &start + &(Rational::from_int(idx as i64) * &d);
        let addr = spec
            .is_endpoint(&e)?
            .ok_or_else(|| Error::Pipeline(format!("{e} lost endpoint status")))?;
        proofs.push(MembershipProof::Endpoint { address: addr });
        elements.push(e);
    }
    Ok(APCertificate {
        set: SetTag::Meps { epsilon },
        elements,
        gap: d,
        proofs,
        depth: stage,
    })
}

// ---------------------------------------------------------------------------
// Bounded quotients ∩ ternary Cantor set
// ---------------------------------------------------------------------------

/// Certifies a point of F₁₉ ∩ C: the single-obstacle (c = 0) deletion
/// strategy at (α, β, ρ) = (1/3, 1/3, 1/6) against a Bob restricted to
/// ternary construction intervals. The certificate carries the nested
/// ternary chain, the cleared ledger, the certified CF prefix (all
/// quotients ≤ 19) and the ternary digit prefix (all digits in {0, 2}).
pub fn certify_f19_cap_c(depth: usize) -> Result<PointCertificate> {
    if depth < 1 {
        return Err(Error::Config("depth must be ≥ 1".into()));
    }
    let params = GameParams {
        kind: GameKind::Potential { c: Rational::zero() },
        alpha: rat(1, 3),
        beta: rat(1, 3),
        rho: rat(1, 6),
        obstacle_class: ObstacleClass::Points,
        dimension: 1,
        deferred_avoidance: false,
    };
    let mut alice = alice_fn(19, rat(1, 3))?;
    let mut bob = bob_construction_survival(CantorSpec::ternary());
    let result = run_match(params, &mut alice, &mut bob, depth)?;
    require_cleared(&result, "F19 ∩ C pipeline")?;
    let chain = line_chain(&result);
    let enclosure = chain.last().expect("nonempty").clone();
    point_certificate_from_ternary_chain(chain, result.ledger, &enclosure, depth, 19)
}

fn point_certificate_from_ternary_chain(
    nested: Vec<Interval>,
    ledger: Vec<Obstacle>,
    enclosure: &Interval,
    stage: usize,
    quotient_bound: u64,
) -> Result<PointCertificate> {
    if enclosure.lo() <= &Rational::zero() || enclosure.hi() >= &Rational::one() {
        return Err(Error::Pipeline(
            "enclosure touches the unit-interval boundary; no CF prefix exists".into(),
        ));
    }
    let cf_prefix = cf_prefix_of_interval(enclosure)?;
    if !all_quotients_le(&cf_prefix, quotient_bound) {
        return Err(Error::Pipeline(format!(
            "certified CF prefix has a quotient exceeding {quotient_bound}"
        )));
    }
    let digits = match ternary_digits(enclosure.lo(), stage)? {
        TernaryDigits::Digits { digits, .. } => digits,
        TernaryDigits::One => return Err(Error::Pipeline("enclosure start is 1".into())),
    };
    if digits.iter().any(|d| *d == 1) {
        return Err(Error::Pipeline("ternary prefix contains digit 1".into()));
    }
    Ok(PointCertificate {
        nested,
        ledger,
        cf_prefix,
        ternary_prefix: Some(digits),
        ratio: Some(rat(1, 3)),
        quotient_bound: Some(quotient_bound),
    })
}

// ---------------------------------------------------------------------------
// Sumset window for bounded quotients
// ---------------------------------------------------------------------------

/// Certifies that `t` is a sum of two quotient-≤49 numbers: the 2-fold
/// strategy (F₄₉ and its reflection through t) on the window
/// I = [max(0, t−1), min(1, t)], against the 3-child equal-spacing Bob at
/// the boundary identity 2·(1/4) + 3·(1/6) = 1.
pub fn certify_sumset_f49(t: Rational, depth: usize) -> Result<SumsetCertificate> {
    if t < rat(1, 6) || t > rat(11, 6) {
        return Err(Error::Config(format!("t {t} outside [1/6, 11/6]")));
    }
    let window = Interval::new(
        Rational::zero().max(&t - Rational::one()),
        Rational::one().min(t.clone()),
    );
    let beta = rat(1, 6);
    let mut combined = combine_alice(
        vec![
            (Box::new(alice_fn(49, beta.clone())?) as _, Conjugation::identity()),
            (
                Box::new(alice_fn(49, beta.clone())?) as _,
                Conjugation { scale: rat(-1, 1), shift: t.clone() },
            ),
        ],
        CombineMode::AbsoluteSum,
    )?;
    let params = GameParams { deferred_avoidance: true, ..combined.declared().clone() };
    let mut bob = bob_subdivision(3, beta, rat(1, 4), window)?;
    let result = run_match(params, &mut combined, &mut bob, depth)?;
    require_cleared(&result, "sumset pipeline")?;
    let nested = line_chain(&result);
    let x_enclosure = nested.last().expect("nonempty").clone();
    let complement = x_enclosure.affine_image(&rat(-1, 1), &t);
    let prefix_of = |i: &Interval| -> Result<CFWord> {
        if i.lo() <= &Rational::zero() || i.hi() >= &Rational::one() {
            // Boundary of the decorated set: empty certified prefix.
            return CFWord::new(0, vec![]);
        }
        cf_prefix_of_interval(i)
    };
    let x_prefix = prefix_of(&x_enclosure)?;
    let complement_prefix = prefix_of(&complement)?;
    for (name, w) in [("x", &x_prefix), ("t - x", &complement_prefix)] {
        if !all_quotients_le(w, 49) {
            return Err(Error::Pipeline(format!(
                "certified CF prefix of {name} has a quotient exceeding 49"
            )));
        }
    }
    Ok(SumsetCertificate {
        t,
        x_enclosure,
        nested,
        ledger: result.ledger,
        x_prefix,
        complement_prefix,
        quotient_bound: 49,
    })
}

// ---------------------------------------------------------------------------
// Folding chain into F₉ ∩ C
// ---------------------------------------------------------------------------

/// Runs the folding chain x₀ = 17/27, x_{k+1} = x_k − 1/(3q_k²),
/// asserting goodness at every step, and certifies the associated
/// y = 2 − 2x enclosures: ternary digits are 2 exactly at positions
/// 2^k − 1 and 0 elsewhere, and the certified CF prefix of the final
/// y-enclosure has all quotients ≤ 9.
pub fn certify_folding_f9(iterations: usize, cf_depth: usize) -> Result<PointCertificate> {
    if iterations < 1 || iterations > 6 {
        return Err(Error::Config("iterations must be in 1..=6".into()));
    }
    let two = rat(2, 1);
    let mut x = rat(17, 27);
    let mut nested: Vec<Interval> = Vec::new();
    let mut exponent: u32 = 0;
    for k in 0..=iterations {
        let good = is_good(&x).ok_or_else(|| {
            Error::Pipeline(format!(
                "folding step {k} produced {x}, which is not good — this would \
                 falsify the folding construction"
            ))
        })?;
        exponent = good.power_of_3_exponent;
        let y = &two - &two * &x;
        // Remaining corrections: y_limit ∈ [y, y + 3^{−2e}).
        let radius = rat(1, 3).pow_i(2 * i64::from(exponent));
        nested.push(Interval::new(y.clone(), &y + &radius));
        if k < iterations {
            x = folding_step(&x);
        }
    }
    let enclosure = nested.last().expect("nonempty").clone();
    let digits = match ternary_digits(enclosure.lo(), exponent as usize)? {
        TernaryDigits::Digits { digits, exact } => {
            if !exact {
                return Err(Error::Pipeline("y_n should have a finite expansion".into()));
            }
            digits
        }
        TernaryDigits::One => unreachable!("y_n < 1"),
    };
    // Digit pattern: 2 at positions 2^k − 1 (k ≥ 1), 0 elsewhere.
    for (idx, d) in digits.iter().enumerate() {
        let position = idx + 1;
        let is_two_position = (position + 1).is_power_of_two();
        let expected = if is_two_position { 2 } else { 0 };
        if *d != expected {
            return Err(Error::Pipeline(format!(
                "y digit at position {position} is {d}, expected {expected}"
            )));
        }
    }
    let cf_prefix = cf_prefix_of_interval(&enclosure)?;
    if !all_quotients_le(&cf_prefix, 9) {
        return Err(Error::Pipeline(
            "certified CF prefix of y has a quotient exceeding 9".into(),
        ));
    }
    let _ = cf_depth; // the full certified prefix is stored; cf_depth is a floor
    Ok(PointCertificate {
        nested,
        ledger: Vec::new(),
        cf_prefix,
        ternary_prefix: Some(digits),
        ratio: None,
        quotient_bound: Some(9),
    })
}

// ---------------------------------------------------------------------------
// Progression-length budget
// ---------------------------------------------------------------------------

/// Largest progression length k fitting the deletion budget
/// k·α^c ≤ (1/K₂)(1 − β^{1−c}) with c = 1 − 1/log(α⁻¹), everything
/// evaluated as certified enclosures and the division resolved
/// conservatively downward.
pub fn ap_length_budget(alpha: Rational, beta: Rational, k2: Rational) -> Result<BudgetRecord> {
    if !alpha.is_positive() || beta > rat(1, 4) || !beta.is_positive() || !k2.is_positive() {
        return Err(Error::Config("need alpha > 0, 0 < beta <= 1/4, K2 > 0".into()));
    }
    let prec = 128;
    let log_inv = ln_enc(&alpha.recip(), prec)?;
    if log_inv.lo <= Rational::one() {
        return Err(Error::Config(
            "alpha too large: exponent c = 1 - 1/log(alpha^-1) not in (0,1)".into(),
        ));
    }
    let one = Enc::point(Rational::one());
    let c = one.sub(&log_inv.recip()?);
    let one_minus_c = log_inv.recip()?;
    let alpha_pow = pow_enc_exponent(&alpha, &c, prec)?;
    let beta_pow = pow_enc_exponent(&beta, &one_minus_c, prec)?;
    let budget = one.sub(&beta_pow).scale(&k2.recip());
    let k = if budget.lo.is_positive() {
        let q = &budget.lo / &alpha_pow.hi;
        u64::try_from(&q.floor()).map_err(|_| Error::ResourceCap("budget overflow".into()))?
    } else {
        0
    };
    let trend = Enc::point(Rational::from_int(k as i64) * &alpha).mul(&log_inv);
    Ok(BudgetRecord { k, c, alpha_pow, budget, trend })
}

// ---------------------------------------------------------------------------
// k-term progressions via the k-fold shifted intersection
// ---------------------------------------------------------------------------

/// Attempts a k-term progression {x, x+t, …, x+(k−1)t} on M_ε by playing
/// k shifted copies of the Cantor deletion strategy at once (the c = 1
/// budget bounds the k-fold sum) against a construction-survival Bob.
/// Failure is reported data, expected when k exceeds the feasible budget.
pub fn find_ap_via_game(
    epsilon: Rational,
    k: usize,
    t: Rational,
    depth: usize,
) -> Result<APCertificate> {
    if k < 2 {
        return Err(Error::Config("need k >= 2".into()));
    }
    if !t.is_positive() || &t * Rational::from_int(k as i64) > epsilon {
        return Err(Error::Config(format!("t {t} outside (0, epsilon/k]")));
    }
    let spec = CantorSpec::new(epsilon.clone())?;
    let beta = spec.lambda().clone();
    let mut subs: Vec<(Box<dyn AliceStrategy>, Conjugation)> = Vec::new();
    for i in 0..k {
        let shift = -(Rational::from_int(i as i64) * &t);
        subs.push((
            Box::new(alice_meps(spec.clone(), beta.clone())?) as _,
            Conjugation { scale: Rational::one(), shift },
        ));
    }
    let mut combined = combine_alice(subs, CombineMode::AbsoluteSum)?;
    let alpha_sum = Rational::from_int(k as i64) * &combined.declared().alpha;
    let params = GameParams {
        kind: GameKind::Potential { c: Rational::one() },
        alpha: alpha_sum,
        ..combined.declared().clone()
    };
    let mut bob = bob_construction_survival(spec.clone());
    let result = run_match(params, &mut combined, &mut bob, depth)?;
    require_cleared(&result, "k-fold progression pipeline")?;
    let chain = line_chain(&result);
    let x = chain.last().expect("nonempty").center();
    let mut elements = Vec::with_capacity(k);
    let mut proofs = Vec::with_capacity(k);
    let unit = Interval::unit();
    for i in 0..k {
        let shift = Rational::from_int(i as i64) * &t;
        let nested = map_intervals(&chain, &Rational::one(), &shift);
        let last = nested.last().expect("nonempty");
        if !unit.contains(last) {
            return Err(Error::Pipeline(format!(
                "shifted enclosure {i} escapes the unit interval; outcome fell \
                 into the decorated complement"
            )));
        }
        let meets_depth = certified_meets(&spec, last)?;
        let ledger = map_ledger(&result.ledger, &Rational::one(), &shift);
        proofs.push(MembershipProof::Enclosure { nested, ledger, meets_depth });
        elements.push(&x + &shift);
    }
    Ok(APCertificate {
        set: SetTag::Meps { epsilon },
        elements,
        gap: t,
        proofs,
        depth,
    })
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Reports how a progression certificate sits against the upper-bound
/// arguments: the smallest construction interval containing it and its
/// middle gap (Cantor sets), or the common CF prefix and branching
/// quotients (bounded quotients).
pub fn ap_instance_diagnostics(cert: &APCertificate) -> Result<APDiagnostics> {
    let first = cert.elements.first().ok_or_else(|| Error::Config("empty certificate".into()))?;
    let last = cert.elements.last().expect("nonempty");
    let diam = last - first;
    let diameter_over_gap = &diam / &cert.gap;
    match &cert.set {
        SetTag::Meps { epsilon } => {
            let spec = CantorSpec::new(epsilon.clone())?;
            let mut interval = Interval::unit();
            loop {
                let (l, r) = spec.children(&interval);
                if l.contains_point(first) && l.contains_point(last) {
                    interval = l;
                } else if r.contains_point(first) && r.contains_point(last) {
                    interval = r;
                } else {
                    break;
                }
            }
            let gap_interval = spec.gap_hull(&interval);
            let ratio = interval.length() / gap_interval.length(); // = 1/ε exactly
            let k_minus_1 = Rational::from_int(cert.elements.len() as i64 - 1);
            Ok(APDiagnostics {
                gap_dominates: Some(cert.gap >= gap_interval.length()),
                length_bound_ok: Some(k_minus_1 <= ratio),
                interval: Some(interval),
                gap_interval: Some(gap_interval),
                interval_gap_ratio: Some(ratio),
                common_prefix: None,
                branch_letters: None,
                diameter_over_gap,
            })
        }
        SetTag::BoundedQuotients { .. } => {
            let w1 = cf_expand(first);
            let w2 = cf_expand(last);
            let mut common = Vec::new();
            let mut branch = (None, None);
            if w1.a0 == w2.a0 {
                for (q1, q2) in w1.quotients.iter().zip(w2.quotients.iter()) {
                    if q1 == q2 {
                        common.push(i64::try_from(q1).unwrap_or(i64::MAX));
                    } else {
                        branch = (Some(q1.to_string()), Some(q2.to_string()));
                        break;
                    }
                }
            }
            let n = common.len();
            let prefix = CFWord::new(w1.a0.clone(), common)?;
            let _ = n;
            Ok(APDiagnostics {
                interval: None,
                gap_interval: None,
                interval_gap_ratio: None,
                gap_dominates: None,
                length_bound_ok: None,
                common_prefix: Some(prefix),
                branch_letters: Some(branch),
                diameter_over_gap,
            })
        }
    }
}

/// Views a sumset certificate as the 2-element family {x, t − x} with
/// quotient-prefix proofs, for diagnostics reporting.
pub fn sumset_as_ap(cert: &SumsetCertificate) -> APCertificate {
    let x = cert.x_enclosure.center();
    let complement_nested = map_intervals(&cert.nested, &rat(-1, 1), &cert.t);
    let mut elements = vec![x.clone(), &cert.t - &x];
    let mut proofs = vec![
        MembershipProof::QuotientPrefix {
            nested: cert.nested.clone(),
            ledger: cert.ledger.clone(),
            prefix: cert.x_prefix.clone(),
        },
        MembershipProof::QuotientPrefix {
            nested: complement_nested,
            ledger: map_ledger(&cert.ledger, &rat(-1, 1), &cert.t),
            prefix: cert.complement_prefix.clone(),
        },
    ];
    if elements[0] > elements[1] {
        elements.swap(0, 1);
        proofs.swap(0, 1);
    }
    let gap = &elements[1] - &elements[0];
    APCertificate {
        set: SetTag::BoundedQuotients { n: cert.quotient_bound },
        elements,
        gap,
        proofs,
        depth: cert.nested.len().saturating_sub(1),
    }
}

// ---------------------------------------------------------------------------
// Independent auditor
// ---------------------------------------------------------------------------

fn audit_chain(nested: &[Interval], element: Option<&Rational>) -> Result<&'static str> {
    if nested.is_empty() {
        return Err(Error::AuditRejected("empty interval chain".into()));
    }
    for pair in nested.windows(2) {
        if !pair[0].contains(&pair[1]) {
            return Err(Error::AuditRejected("interval chain is not nested".into()));
        }
    }
    if let Some(e) = element {
        if !nested.last().expect("nonempty").contains_point(e) {
            return Err(Error::AuditRejected(
                "element escapes its final enclosure".into(),
            ));
        }
    }
    Ok("chain ok")
}

fn audit_clearance(nested: &[Interval], ledger: &[Obstacle]) -> Result<()> {
    let last = Ball::Line(nested.last().expect("nonempty").clone());
    for obs in ledger {
        if !obs.gap_to_ball(&last).is_positive() {
            return Err(Error::AuditRejected(format!(
                "obstacle from turn {} touches the final enclosure",
                obs.turn_created
            )));
        }
    }
    Ok(())
}

/// Re-checks a progression certificate from its serialized content alone.
pub fn audit_ap(cert: &APCertificate) -> Result<()> {
    if cert.elements.len() < 2 {
        return Err(Error::AuditRejected("fewer than 2 elements".into()));
    }
    if cert.proofs.len() != cert.elements.len() {
        return Err(Error::AuditRejected("proof/element count mismatch".into()));
    }
    if !cert.gap.is_positive() {
        return Err(Error::AuditRejected("non-positive gap".into()));
    }
    for pair in cert.elements.windows(2) {
        if &pair[1] - &pair[0] != cert.gap {
            return Err(Error::AuditRejected("elements are not equally spaced".into()));
        }
    }
    if let SetTag::Meps { epsilon } = &cert.set {
        let k_minus_1 = Rational::from_int(cert.elements.len() as i64 - 1);
        if &k_minus_1 * epsilon > Rational::one() {
            return Err(Error::AuditRejected(
                "progression longer than the 1/eps + 1 bound".into(),
            ));
        }
    }
    for (element, proof) in cert.elements.iter().zip(&cert.proofs) {
        audit_membership(&cert.set, element, proof)?;
    }
    Ok(())
}

fn audit_membership(set: &SetTag, element: &Rational, proof: &MembershipProof) -> Result<()> {
    match (set, proof) {
        (SetTag::Meps { epsilon }, MembershipProof::Endpoint { address }) => {
            let spec = CantorSpec::new(epsilon.clone())?;
            match spec.is_endpoint(element)? {
                Some(found) if &found == address => Ok(()),
                Some(_) => Err(Error::AuditRejected(format!(
                    "endpoint address mismatch for {element}"
                ))),
                None => Err(Error::AuditRejected(format!("{element} is not an endpoint"))),
            }
        }
        (SetTag::Meps { epsilon }, MembershipProof::Enclosure { nested, ledger, meets_depth }) => {
            let spec = CantorSpec::new(epsilon.clone())?;
            audit_chain(nested, Some(element))?;
            audit_clearance(nested, ledger)?;
            match spec.interval_meets(nested.last().expect("nonempty"), *meets_depth)? {
                MeetsVerdict::NonemptyCertified { .. } => Ok(()),
                _ => Err(Error::AuditRejected(
                    "enclosure intersection with the set not certified".into(),
                )),
            }
        }
        (
            SetTag::BoundedQuotients { n },
            MembershipProof::QuotientPrefix { nested, ledger, prefix },
        ) => {
            audit_chain(nested, Some(element))?;
            audit_clearance(nested, ledger)?;
            let last = nested.last().expect("nonempty");
            if last.lo() > &Rational::zero() && last.hi() < &Rational::one() {
                let recomputed = cf_prefix_of_interval(last)?;
                if &recomputed != prefix {
                    return Err(Error::AuditRejected("stored CF prefix mismatch".into()));
                }
            } else if !prefix.is_empty() {
                return Err(Error::AuditRejected(
                    "nonempty prefix claimed on a boundary enclosure".into(),
                ));
            }
            if !all_quotients_le(prefix, *n) {
                return Err(Error::AuditRejected("quotient exceeds the set bound".into()));
            }
            Ok(())
        }
        _ => Err(Error::AuditRejected("proof kind does not fit the set tag".into())),
    }
}

/// Re-checks a point certificate (nested chain, clearance, CF prefix,
/// ternary prefix) from serialized content alone.
pub fn audit_point(cert: &PointCertificate) -> Result<()> {
    audit_chain(&cert.nested, None)?;
    audit_clearance(&cert.nested, &cert.ledger)?;
    let last = cert.nested.last().expect("nonempty");
    if let Some(r) = &cert.ratio {
        for pair in cert.nested.windows(2) {
            if pair[1].length() != r * &pair[0].length() {
                return Err(Error::AuditRejected("chain ratio violated".into()));
            }
        }
    }
    if last.lo() <= &Rational::zero() || last.hi() >= &Rational::one() {
        return Err(Error::AuditRejected("enclosure touches the unit boundary".into()));
    }
    let recomputed = cf_prefix_of_interval(last)?;
    if recomputed != cert.cf_prefix {
        return Err(Error::AuditRejected("stored CF prefix mismatch".into()));
    }
    if let Some(bound) = cert.quotient_bound {
        if !all_quotients_le(&cert.cf_prefix, bound) {
            return Err(Error::AuditRejected("quotient exceeds the stated bound".into()));
        }
    }
    if let Some(digits) = &cert.ternary_prefix {
        if digits.iter().any(|d| *d == 1) {
            return Err(Error::AuditRejected("ternary prefix contains digit 1".into()));
        }
        let lo = value_of_digits(digits);
        let hi = &lo + &rat(1, 3).pow_i(digits.len() as i64);
        if !Interval::new(lo, hi).contains(last) {
            return Err(Error::AuditRejected(
                "enclosure escapes its claimed ternary cylinder".into(),
            ));
        }
    }
    Ok(())
}

/// Re-checks a sumset certificate from serialized content alone.
pub fn audit_sumset(cert: &SumsetCertificate) -> Result<()> {
    let window = Interval::new(
        Rational::zero().max(&cert.t - Rational::one()),
        Rational::one().min(cert.t.clone()),
    );
    if !window.contains(&cert.x_enclosure) {
        return Err(Error::AuditRejected("x-enclosure escapes its window".into()));
    }
    audit_chain(&cert.nested, None)?;
    if cert.nested.last() != Some(&cert.x_enclosure) {
        return Err(Error::AuditRejected("chain does not end at the x-enclosure".into()));
    }
    audit_clearance(&cert.nested, &cert.ledger)?;
    let complement = cert.x_enclosure.affine_image(&rat(-1, 1), &cert.t);
    for (iv, stored) in [
        (&cert.x_enclosure, &cert.x_prefix),
        (&complement, &cert.complement_prefix),
    ] {
        if iv.lo() > &Rational::zero() && iv.hi() < &Rational::one() {
            let recomputed = cf_prefix_of_interval(iv)?;
            if &recomputed != stored {
                return Err(Error::AuditRejected("stored CF prefix mismatch".into()));
            }
        } else if !stored.is_empty() {
            return Err(Error::AuditRejected(
                "nonempty prefix claimed on a boundary enclosure".into(),
            ));
        }
        if !all_quotients_le(stored, cert.quotient_bound) {
            return Err(Error::AuditRejected("quotient exceeds the stated bound".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ap3_pipeline_small_depth() {
        let cert = certify_ap3_meps(rat(1, 49), rat(0, 1), 12).unwrap();
        assert_eq!(cert.elements.len(), 3);
        assert_eq!(cert.elements[0], rat(0, 1));
        assert!(cert.elements[2] >= rat(5, 6)); // window farthest from a = 0
        assert!(cert.gap.is_positive());
        audit_ap(&cert).unwrap();
        // Serialization round trip feeds the auditor the same bytes.
        let json = serde_json::to_string(&cert).unwrap();
        let back: APCertificate = serde_json::from_str(&json).unwrap();
        audit_ap(&back).unwrap();
    }

    #[test]
    fn ap3_rejects_large_epsilon() {
        assert!(certify_ap3_meps(rat(1, 3), rat(0, 1), 10).is_err());
    }

    #[test]
    fn newhouse_exact_for_ternary() {
        let cert = certify_newhouse_ap4(rat(1, 3), 10).unwrap();
        assert_eq!(
            cert.elements,
            vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]
        );
        assert_eq!(cert.gap, rat(1, 3));
        assert!(cert.proofs.iter().all(|p| matches!(p, MembershipProof::Endpoint { .. })));
        audit_ap(&cert).unwrap();
    }

    #[test]
    fn newhouse_quarter_reverifies() {
        let cert = certify_newhouse_ap4(rat(1, 4), 16).unwrap();
        assert_eq!(cert.elements.len(), 4);
        assert!(cert.gap.is_positive());
        audit_ap(&cert).unwrap();
    }

    #[test]
    fn newhouse_rejects_large_epsilon() {
        assert!(certify_newhouse_ap4(rat(2, 5), 10).is_err());
    }

    #[test]
    fn endpoint_search_examples() {
        let cert = search_ap_endpoints(rat(1, 3), 2, 8).unwrap();
        assert_eq!(cert.elements.len(), 4);
        assert_eq!(cert.elements, vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]);
        audit_ap(&cert).unwrap();
        // λ = 1/4 construction: no 3-term progression among stage-1 endpoints.
        let cert = search_ap_endpoints(rat(1, 2), 1, 8).unwrap();
        assert_eq!(cert.elements.len(), 2);
        // stage 0 always gives {0, 1}
        let cert = search_ap_endpoints(rat(1, 5), 0, 8).unwrap();
        assert_eq!(cert.elements, vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn f19_pipeline_small_depth() {
        let cert = certify_f19_cap_c(12).unwrap();
        assert_eq!(cert.nested.len(), 13);
        assert!(all_quotients_le(&cert.cf_prefix, 19));
        audit_point(&cert).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: PointCertificate = serde_json::from_str(&json).unwrap();
        audit_point(&back).unwrap();
    }

    #[test]
    fn sumset_pipeline_small_depth() {
        let cert = certify_sumset_f49(rat(1, 2), 12).unwrap();
        assert!(Interval::new(rat(0, 1), rat(1, 2)).contains(&cert.x_enclosure));
        audit_sumset(&cert).unwrap();
        let ap = sumset_as_ap(&cert);
        let diag = ap_instance_diagnostics(&ap).unwrap();
        assert!(diag.common_prefix.is_some());
    }

    #[test]
    fn sumset_boundary_window() {
        // t = 1/6 → window [0, 1/6] of length exactly 2ρ = 1/6.
        let cert = certify_sumset_f49(rat(1, 6), 8).unwrap();
        assert!(Interval::new(rat(0, 1), rat(1, 6)).contains(&cert.x_enclosure));
        audit_sumset(&cert).unwrap();
        assert!(certify_sumset_f49(rat(2, 1), 8).is_err());
    }

    #[test]
    fn folding_chain_first_steps() {
        let cert = certify_folding_f9(2, 10).unwrap();
        audit_point(&cert).unwrap();
        // y₂ enclosure chain starts at y₀ = 20/27.
        assert_eq!(cert.nested[0].lo(), &rat(20, 27));
        let digits = cert.ternary_prefix.as_ref().unwrap();
        // positions 1,3,7,15 carry digit 2 at iteration 2 (e₂ = 15)
        assert_eq!(digits.len(), 15);
        for (idx, d) in digits.iter().enumerate() {
            let expected = if (idx + 2).is_power_of_two() { 2 } else { 0 };
            assert_eq!(*d, expected, "digit at position {}", idx + 1);
        }
    }

    #[test]
    fn budget_reference_instance() {
        let rec = ap_length_budget(rat(1, 100), rat(1, 4), rat(1, 1)).unwrap();
        assert_eq!(rec.k, 9);
        assert!(rec.c.lo > rat(78, 100) && rec.c.hi < rat(79, 100));
        // K₂ huge → budget empty
        let rec = ap_length_budget(rat(1, 100), rat(1, 4), rat(1_000_000, 1)).unwrap();
        assert_eq!(rec.k, 0);
    }

    #[test]
    fn kfold_game_two_terms() {
        let cert = find_ap_via_game(rat(1, 3), 2, rat(1, 6), 14).unwrap();
        assert_eq!(cert.elements.len(), 2);
        assert_eq!(cert.gap, rat(1, 6));
        audit_ap(&cert).unwrap();
    }

    #[test]
    fn kfold_game_infeasible_k() {
        // k = 10 exceeds the maximal ternary progression length (4).
        assert!(find_ap_via_game(rat(1, 3), 10, rat(1, 30), 14).is_err());
    }

    #[test]
    fn diagnostics_tight_instance() {
        let cert = search_ap_endpoints(rat(1, 3), 2, 8).unwrap();
        let diag = ap_instance_diagnostics(&cert).unwrap();
        assert_eq!(diag.interval.unwrap(), Interval::unit());
        assert_eq!(diag.gap_interval.unwrap(), Interval::new(rat(1, 3), rat(2, 3)));
        assert_eq!(diag.interval_gap_ratio.unwrap(), rat(3, 1));
        assert_eq!(diag.length_bound_ok, Some(true)); // 3 ≤ 3, tight
        assert_eq!(diag.gap_dominates, Some(true));
    }

    #[test]
    fn auditor_rejects_tampering() {
        let mut cert = certify_ap3_meps(rat(1, 49), rat(0, 1), 10).unwrap();
        cert.elements[1] = &cert.elements[1] + rat(1, 1_000_000);
        assert!(audit_ap(&cert).is_err());
    }
}
