//! Explicit player strategies: Alice strategies that force outcomes into
//! Cantor sets, badly-approximable sets, and bounded-quotient sets; the
//! intersection and similarity combinators; and Bob strategies that keep a
//! legal descent alive (equal-spacing subdivision and construction-interval
//! survival with bounded lookahead).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::cantor::CantorSpec;
use crate::enclosure::{nth_root_enc, sqrt_enc, Enc};
use crate::error::{Error, Result};
use crate::farey::fractions_in_window;
use crate::games::{
    transform_transcript, validate_alice_move, AlicePlayer, BobPlayer, Carrier, GameKind,
    GameParams, Obstacle, ObstacleClass, Transcript,
};
use crate::interval::{Ball, Interval};

/// An Alice strategy: a responder plus the parameter tuple it is declared
/// winning for and a tag describing its target set.
pub trait AliceStrategy: AlicePlayer {
    fn declared(&self) -> &GameParams;
    fn target(&self) -> String;
}

/// Obstacles still relevant to the current ball. An obstacle whose
/// thickened set misses the current ball can never meet any later ball
/// (the balls are nested), so it is pruned.
pub fn active_obstacles(transcript: &Transcript) -> Vec<Obstacle> {
    match transcript.current_ball() {
        None => Vec::new(),
        Some(ball) => transcript
            .ledger()
            .into_iter()
            .filter(|o| o.intersects_ball(ball))
            .collect(),
    }
}

/// Validates a responder's output against the strategy's *declared*
/// parameters (the running match may use laxer ones).
fn assert_declared_legal(
    declared: &GameParams,
    transcript: &Transcript,
    obstacles: &[Obstacle],
) -> Result<()> {
    let mut shadow = transcript.clone();
    shadow.params = declared.clone();
    validate_alice_move(&shadow, obstacles)
}

fn line_ball<'a>(transcript: &'a Transcript) -> Result<&'a Interval> {
    transcript
        .current_ball()
        .and_then(Ball::as_interval)
        .ok_or_else(|| Error::Pipeline("strategy needs a 1-dimensional ball".into()))
}

// ---------------------------------------------------------------------------
// Alice for the middle-ε Cantor set
// ---------------------------------------------------------------------------

/// Alice strategy forcing the outcome into `M_ε ∪ (−∞,0) ∪ (1,∞)`: on a
/// ball B, with n the largest integer such that λ^{n+1} ≥ |B|, delete the
/// unique removed-gap hull of stage ≤ n that meets B (gap separation at
/// those stages exceeds |B|, so there is at most one with interior
/// overlap).
pub struct MepsAlice {
    spec: CantorSpec,
    declared: GameParams,
    /// Turns on which the intended deletion was not legal (too thick for
    /// the current radius) and was skipped.
    pub skipped_turns: Vec<usize>,
}

pub fn alice_meps(spec: CantorSpec, beta: Rational) -> Result<MepsAlice> {
    if !beta.is_positive() || beta >= Rational::one() {
        return Err(Error::Config(format!("beta {beta} outside (0,1)")));
    }
    let eps = spec.epsilon().clone();
    let alpha = Rational::from_int(2) * &eps / (Rational::one() - &eps) / &beta;
    let rho = spec.lambda() * &beta / Rational::from_int(2);
    let declared = GameParams {
        kind: GameKind::Absolute { k: 1 },
        alpha,
        beta,
        rho,
        obstacle_class: ObstacleClass::Points,
        dimension: 1,
        deferred_avoidance: false,
    };
    Ok(MepsAlice { spec, declared, skipped_turns: Vec::new() })
}

impl MepsAlice {
    /// All stage-≤ n gap hulls meeting `b`, found by descending only the
    /// construction intervals that meet `b` (at most two per stage).
    fn intersecting_gaps(&self, b: &Interval, n: usize) -> Vec<(usize, Interval)> {
        let mut found = Vec::new();
        let mut frontier = vec![Interval::unit()];
        for stage in 0..=n {
            let mut next = Vec::new();
            for j in &frontier {
                let gap = self.spec.gap_hull(j);
                if gap.intersects(b) {
                    found.push((stage, gap));
                }
                let (l, r) = self.spec.children(j);
                if l.intersects(b) {
                    next.push(l);
                }
                if r.intersects(b) {
                    next.push(r);
                }
            }
            frontier = next;
        }
        found
    }
}

impl AlicePlayer for MepsAlice {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        let b = line_ball(transcript)?;
        let len = b.length();
        let lambda = self.spec.lambda();
        // Largest n ≥ 0 with λ^{n+1} ≥ |B| (none when λ < |B|).
        let mut power = lambda.clone();
        if power < len {
            return Ok(Vec::new());
        }
        let mut n: usize = 0;
        while &power * lambda >= len {
            power = power * lambda;
            n += 1;
        }
        let gaps = self.intersecting_gaps(b, n);
        // Separation: gaps of stage ≤ n are ≥ λ^{n+1} ≥ |B| apart, so at
        // most one can overlap B's interior; extra hits can only be
        // single-point touches at B's endpoints.
        let overlapping: Vec<&(usize, Interval)> = gaps
            .iter()
            .filter(|(_, g)| {
                g.intersection(b).map_or(false, |i| i.length().is_positive())
            })
            .collect();
        if overlapping.len() > 1 {
            return Err(Error::Pipeline(format!(
                "gap-separation violated: {} stage-≤{n} gaps overlap a ball of length {len}",
                overlapping.len()
            )));
        }
        let chosen = overlapping.first().map(|g| (*g).clone()).or_else(|| gaps.first().cloned());
        let Some((_, gap)) = chosen else {
            return Ok(Vec::new());
        };
        let thickness = gap.radius();
        let budget = &self.declared.alpha * &b.radius();
        if thickness > budget {
            self.skipped_turns.push(transcript.alice_moves.len());
            return Ok(Vec::new());
        }
        let obstacle = Obstacle::new(
            Carrier::Point1 { x: gap.center() },
            thickness,
            transcript.alice_moves.len(),
        );
        assert_declared_legal(&self.declared, transcript, std::slice::from_ref(&obstacle))?;
        Ok(vec![obstacle])
    }
}

impl AliceStrategy for MepsAlice {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        format!("middle-eps Cantor set, eps = {}", self.spec.epsilon())
    }
}

// ---------------------------------------------------------------------------
// Alice for badly approximable numbers / bounded partial quotients
// ---------------------------------------------------------------------------

/// Smallest non-negative integer q with q² ≥ x.
fn ceil_sqrt(x: &Rational) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    let mut q = x.floor().max(BigInt::zero()).sqrt();
    while Rational::new(q.clone(), 1).pow_i(2) < *x {
        q += 1;
    }
    while q > BigInt::zero() && Rational::new(&q - 1, 1).pow_i(2) >= *x {
        q -= 1;
    }
    q
}

/// Largest non-negative integer q with q² < x (0 when no positive one).
fn max_sqrt_strict(x: &Rational) -> BigInt {
    if x <= &Rational::one() {
        return BigInt::zero();
    }
    let mut q = x.ceil().sqrt();
    while Rational::new(q.clone(), 1).pow_i(2) >= *x {
        q -= 1;
    }
    while Rational::new(&q + 1, 1).pow_i(2) < *x {
        q += 1;
    }
    q
}

/// Alice strategy forcing the outcome into `BA₁(ε)`: on a ball of length
/// ℓ she deletes the unique neighborhood `Δ_ε(p/q) = B(p/q, ε q⁻²)` whose
/// denominator satisfies `ℓ < (1−2ε) q⁻² ≤ β⁻¹ ℓ` and which meets the
/// ball. Candidates are found by Farey-walking the bounded-denominator
/// fractions in the slightly widened ball — never by scanning the
/// denominator range, which is astronomically large at depth.
pub struct Ba1Alice {
    eps: Rational,
    declared: GameParams,
}

pub fn alice_ba1(eps: Rational, beta: Rational) -> Result<Ba1Alice> {
    let half = Rational::new(1, 2);
    if !eps.is_positive() || eps >= half {
        return Err(Error::Config(format!("eps {eps} outside (0,1/2)")));
    }
    if beta >= Rational::one() {
        return Err(Error::Config(format!("beta {beta} must be < 1")));
    }
    let hyp = (&eps / (Rational::one() - &eps)).pow_i(2);
    if hyp > beta {
        return Err(Error::Config(format!(
            "hypothesis (eps/(1-eps))^2 <= beta violated: {hyp} > {beta}"
        )));
    }
    let alpha =
        Rational::from_int(2) * &eps / (Rational::one() - Rational::from_int(2) * &eps) / &beta;
    let rho = &beta / Rational::from_int(2);
    let declared = GameParams {
        kind: GameKind::Absolute { k: 1 },
        alpha,
        beta: beta.clone(),
        rho,
        obstacle_class: ObstacleClass::Points,
        dimension: 1,
        deferred_avoidance: false,
    };
    Ok(Ba1Alice { eps, declared })
}

impl Ba1Alice {
    /// The members of C_ℓ meeting `b`: fractions p/q with
    /// q_min ≤ q ≤ q_max whose ε q⁻²-neighborhood meets `b`.
    fn candidates(&self, b: &Interval) -> Vec<Rational> {
        let len = b.length();
        let one_minus_2eps = Rational::one() - Rational::from_int(2) * &self.eps;
        // ℓ < (1−2ε) q⁻² ≤ β⁻¹ℓ  ⟺  (1−2ε)β/ℓ ≤ q² < (1−2ε)/ℓ
        let q_min = ceil_sqrt(&(&one_minus_2eps * &self.declared.beta / &len)).max(BigInt::one());
        let q_max = max_sqrt_strict(&(&one_minus_2eps / &len));
        if q_max < q_min {
            return Vec::new();
        }
        // Widen by the largest possible Δ radius so the window certainly
        // contains every fraction whose Δ meets b.
        let max_delta = &self.eps / Rational::new(q_min.clone(), 1).pow_i(2);
        let window = Interval::new(b.lo() - &max_delta, b.hi() + &max_delta);
        fractions_in_window(&window, &q_max)
            .into_iter()
            .filter(|x| {
                if x.denom() < &q_min {
                    return false;
                }
                let radius = &self.eps / Rational::new(x.denom().clone(), 1).pow_i(2);
                Interval::from_center_radius(x, &radius).intersects(b)
            })
            .collect()
    }
}

impl AlicePlayer for Ba1Alice {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        let b = line_ball(transcript)?;
        let hits = self.candidates(b);
        if hits.len() > 1 {
            return Err(Error::Pipeline(format!(
                "C_l separation violated: {} members meet one ball (parameter violation)",
                hits.len()
            )));
        }
        let Some(pq) = hits.into_iter().next() else {
            return Ok(Vec::new());
        };
        let thickness = &self.eps / Rational::new(pq.denom().clone(), 1).pow_i(2);
        let budget = &self.declared.alpha * &b.radius();
        if thickness > budget {
            return Err(Error::Pipeline(format!(
                "deletion of width {thickness} exceeds declared budget {budget}"
            )));
        }
        let obstacle =
            Obstacle::new(Carrier::Point1 { x: pq }, thickness, transcript.alice_moves.len());
        assert_declared_legal(&self.declared, transcript, std::slice::from_ref(&obstacle))?;
        Ok(vec![obstacle])
    }
}

impl AliceStrategy for Ba1Alice {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        format!("BA_1({})", self.eps)
    }
}

/// Alice strategy forcing the outcome into `(−∞,0) ∪ F_n ∪ (1,∞)` where
/// F_n is the set with all partial quotients ≤ n: a reparametrization of
/// the BA₁ strategy at ε = 1/(n+1); the declared α simplifies to
/// 2β⁻¹/(n−1).
pub struct FnAlice {
    inner: Ba1Alice,
    n: u64,
    declared: GameParams,
}

pub fn alice_fn(n: u64, beta: Rational) -> Result<FnAlice> {
    if n < 2 {
        return Err(Error::Config("need n >= 2".into()));
    }
    let n_rat = Rational::from_int(n as i64);
    if (n_rat.pow_i(2)).recip() > beta {
        return Err(Error::Config("hypothesis 1/n^2 <= beta violated".into()));
    }
    let eps = (Rational::from_int(n as i64) + Rational::one()).recip();
    let inner = alice_ba1(eps, beta.clone())?;
    // 2·(1/(n+1)) / (1 − 2/(n+1)) · β⁻¹ = 2β⁻¹/(n−1): the declared α of the
    // inner strategy already equals the advertised one.
    let alpha = Rational::from_int(2) / (Rational::from_int(n as i64) - Rational::one()) / &beta;
    debug_assert_eq!(alpha, inner.declared.alpha);
    let declared = GameParams { alpha, ..inner.declared.clone() };
    Ok(FnAlice { inner, n, declared })
}

impl AlicePlayer for FnAlice {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        self.inner.respond(transcript)
    }
}

impl AliceStrategy for FnAlice {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        format!("F_{} (partial quotients <= {})", self.n, self.n)
    }
}

// ---------------------------------------------------------------------------
// Alice for BA_d(ε) via the simplex argument (hyperplane obstacles)
// ---------------------------------------------------------------------------

/// All rational points `p/q` (componentwise, common denominator
/// `1 ≤ q < q_bound`) in the closed sup-norm ball of radius `s`, deduplicated.
pub fn rational_points_in_ball2(
    center: &(Rational, Rational),
    s: &Rational,
    q_bound: &BigInt,
) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut q = BigInt::one();
    while &q < q_bound {
        let qr = Rational::new(q.clone(), 1);
        let x_lo = ((center.0.clone() - s) * &qr).ceil();
        let x_hi = ((center.0.clone() + s) * &qr).floor();
        let y_lo = ((center.1.clone() - s) * &qr).ceil();
        let y_hi = ((center.1.clone() + s) * &qr).floor();
        let mut px = x_lo.clone();
        while px <= x_hi {
            let mut py = y_lo.clone();
            while py <= y_hi {
                let pt = (
                    Rational::new(px.clone(), q.clone()),
                    Rational::new(py.clone(), q.clone()),
                );
                if !out.contains(&pt) {
                    out.push(pt);
                }
                py += 1;
            }
            px += 1;
        }
        q += 1;
    }
    out
}

/// Exact affine-dependence (collinearity) test in the plane.
pub fn affinely_dependent(points: &[(Rational, Rational)]) -> bool {
    if points.len() <= 2 {
        return true;
    }
    let (x0, y0) = &points[0];
    let mut direction: Option<(Rational, Rational)> = None;
    for (x, y) in &points[1..] {
        let d = (x - x0, y - y0);
        if d.0.is_zero() && d.1.is_zero() {
            continue;
        }
        match &direction {
            None => direction = Some(d),
            Some((dx, dy)) => {
                // Cross product must vanish for collinearity.
                if !(dx.clone() * &d.1 - dy.clone() * &d.0).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Line `a·x + b·y = c` through a collinear point set (horizontal through
/// a single point; `None` for the empty set).
pub fn line_through(points: &[(Rational, Rational)]) -> Option<Carrier> {
    let first = points.first()?;
    let second = points.iter().find(|p| *p != first);
    match second {
        None => Some(Carrier::Line2 {
            a: Rational::zero(),
            b: Rational::one(),
            c: first.1.clone(),
        }),
        Some(p2) => {
            let a = &p2.1 - &first.1;
            let b = &first.0 - &p2.0;
            let c = &a * &first.0 + &b * &first.1;
            Some(Carrier::Line2 { a, b, c })
        }
    }
}

/// Alice strategy forcing the outcome into `BA_d(ε)` by deleting, each
/// turn, the thickened affine hyperplane that contains every rational
/// point of denominator < Q near Bob's ball — their affine dependence is
/// guaranteed by a volume argument (`V_d s^d = 1/(d!·Q^{d+1})` with
/// V_d = 2^d for the sup norm), and a violation is reported as a hard
/// error because it would falsify that argument.
pub struct SimplexAlice {
    eps: Rational,
    d: u8,
    /// (d!·V_d)^{−1/d} − ε β⁻¹, as an enclosure (exact for d = 1).
    k_enc: Enc,
    declared: GameParams,
}

pub fn alice_bad_simplex(eps: Rational, beta: Rational, d: u8) -> Result<SimplexAlice> {
    if d != 1 && d != 2 {
        return Err(Error::Config("dimension must be 1 or 2".into()));
    }
    if !eps.is_positive() || !beta.is_positive() || beta >= Rational::one() {
        return Err(Error::Config("need eps > 0 and beta in (0,1)".into()));
    }
    // Hypothesis (d!·V_d)^{1/d}·ε < β, checked exactly by powering:
    // d!·V_d·ε^d < β^d.
    let dv = match d {
        1 => Rational::from_int(2),  // 1!·2¹
        _ => Rational::from_int(8), // 2!·2²
    };
    if &dv * &eps.pow_i(i64::from(d)) >= beta.pow_i(i64::from(d)) {
        return Err(Error::Config(
            "hypothesis (d! V_d)^{1/d} eps < beta violated".into(),
        ));
    }
    let eps_over_beta = &eps / &beta;
    let k_enc = match d {
        1 => Enc::point(Rational::new(1, 2) - &eps_over_beta),
        _ => {
            // (8)^{-1/2} enclosure minus the exact ε/β.
            let root = sqrt_enc(&Rational::new(1, 8), 96)?;
            Enc::new(&root.lo - &eps_over_beta, &root.hi - &eps_over_beta)
        }
    };
    if !k_enc.lo.is_positive() {
        return Err(Error::Config("parameters leave no deletion margin".into()));
    }
    // α = εβ⁻¹ / K; declare the rational upper end (winning for α implies
    // winning for any larger α).
    let alpha_enc = Enc::point(eps_over_beta).div(&k_enc)?;
    let declared = GameParams {
        kind: GameKind::Potential { c: Rational::one() },
        alpha: alpha_enc.hi,
        beta: beta.clone(),
        rho: &beta / Rational::from_int(2),
        obstacle_class: ObstacleClass::Hyperplanes,
        dimension: d,
        deferred_avoidance: false,
    };
    Ok(SimplexAlice { eps, d, k_enc, declared })
}

impl AlicePlayer for SimplexAlice {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        let rho_m = transcript
            .current_ball()
            .ok_or_else(|| Error::Pipeline("no ball".into()))?
            .radius();
        let turn = transcript.alice_moves.len();
        // Q solves ρ_m = K·Q^{−(d+1)/d}; the thickening radius is
        // α·ρ_m = εβ⁻¹·Q^{−(d+1)/d} and the search radius is
        // s = ρ_m + εβ⁻¹·Q^{−(d+1)/d} = ρ_m·(1 + εβ⁻¹/K). We enumerate
        // inside the certified *lower* end of s (and below the lower end
        // of Q): a subset of the guaranteed-dependent point set.
        let eps_over_beta = &self.eps / &self.declared.beta;
        let ratio = Enc::point(eps_over_beta).div(&self.k_enc)?;
        let s_lo = &rho_m * (Rational::one() + &ratio.lo);
        let thickness = &self.declared.alpha * &rho_m;
        let carrier = match (self.d, transcript.current_ball()) {
            (1, Some(Ball::Line(b))) => {
                // Q² = K/ρ_m exactly; enumerate q < Q.
                let q_sq = Enc::point(rho_m.clone()).recip()?.mul(&self.k_enc);
                let q_max = max_sqrt_strict(&q_sq.lo); // largest q with q² < Q²
                if q_max.is_zero() {
                    return Ok(Vec::new());
                }
                let window = Interval::from_center_radius(&b.center(), &s_lo);
                let points: Vec<Rational> = fractions_in_window(&window, &q_max);
                if points.len() > 1 {
                    return Err(Error::Pipeline(format!(
                        "simplex argument falsified in d=1: {} rational points of \
                         denominator < Q in a 2s-window",
                        points.len()
                    )));
                }
                match points.into_iter().next() {
                    None => return Ok(Vec::new()),
                    Some(x) => Carrier::Point1 { x },
                }
            }
            (2, Some(Ball::Plane(b))) => {
                // Q = (K/ρ_m)^{2/3}: certified enclosure, enumerate q < ⌊Q⁻⌋.
                let ratio = Enc::point(rho_m.clone()).recip()?.mul(&self.k_enc);
                let squared = ratio.mul(&ratio);
                let q_enc_lo = nth_root_enc(&squared.lo, 3, 64)?.lo;
                let q_bound = q_enc_lo.floor().max(BigInt::one());
                let points = rational_points_in_ball2(&b.center, &s_lo, &q_bound);
                if !affinely_dependent(&points) {
                    return Err(Error::Pipeline(
                        "simplex argument falsified in d=2: enumerated rational points \
                         are affinely independent"
                            .into(),
                    ));
                }
                match line_through(&points) {
                    None => return Ok(Vec::new()),
                    Some(line) => line,
                }
            }
            _ => return Err(Error::Pipeline("ball/dimension mismatch".into())),
        };
        let obstacle = Obstacle::new(carrier, thickness, turn);
        assert_declared_legal(&self.declared, transcript, std::slice::from_ref(&obstacle))?;
        Ok(vec![obstacle])
    }
}

impl AliceStrategy for SimplexAlice {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        format!("BA_{}({})", self.d, self.eps)
    }
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

/// Raises declared parameters along the monotone directions: a strategy
/// winning for (α, β, ρ, k) is winning for any α′ ≥ α, k′ ≥ k, ρ′ ≥ ρ
/// (same β and c).
pub struct Lifted {
    inner: Box<dyn AliceStrategy>,
    declared: GameParams,
}

pub fn lift(inner: Box<dyn AliceStrategy>, declared: GameParams) -> Result<Lifted> {
    let base = inner.declared();
    let compatible = declared.beta == base.beta
        && declared.dimension == base.dimension
        && declared.obstacle_class == base.obstacle_class
        && declared.alpha >= base.alpha
        && declared.rho >= base.rho
        && match (&declared.kind, &base.kind) {
            (GameKind::Absolute { k: k1 }, GameKind::Absolute { k: k0 }) => k1 >= k0,
            (GameKind::Potential { c: c1 }, GameKind::Potential { c: c0 }) => c1 == c0,
            _ => false,
        };
    if !compatible {
        return Err(Error::Config("lift must weaken parameters monotonically".into()));
    }
    Ok(Lifted { inner, declared })
}

impl AlicePlayer for Lifted {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        self.inner.respond(transcript)
    }
}

impl AliceStrategy for Lifted {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        self.inner.target()
    }
}

/// Similarity `x ↦ scale·x + shift` applied to a strategy's target.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub scale: Rational,
    pub shift: Rational,
}

impl Conjugation {
    pub fn identity() -> Self {
        Conjugation { scale: Rational::one(), shift: Rational::zero() }
    }

    fn inverse(&self) -> Conjugation {
        let inv_scale = self.scale.recip();
        Conjugation { scale: inv_scale.clone(), shift: -(&inv_scale * &self.shift) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CombineMode {
    /// Intersection of absolute-winning targets: deletion counts add.
    AbsoluteSum,
    /// Intersection of potential-winning targets: α-powers add.
    PotentialSum,
}

/// Plays several Alice strategies at once against conjugated copies of the
/// transcript; their outputs are pushed forward and unioned. Targets the
/// intersection of the (conjugated) sub-targets.
pub struct CombinedAlice {
    subs: Vec<(Box<dyn AliceStrategy>, Conjugation)>,
    declared: GameParams,
}

pub fn combine_alice(
    subs: Vec<(Box<dyn AliceStrategy>, Conjugation)>,
    mode: CombineMode,
) -> Result<CombinedAlice> {
    if subs.is_empty() {
        return Err(Error::Config("need at least one sub-strategy".into()));
    }
    for (s, conj) in &subs {
        if conj.scale.is_zero() {
            return Err(Error::Config("similarity ratio must be nonzero".into()));
        }
        if s.declared().beta != subs[0].0.declared().beta {
            return Err(Error::Config("sub-strategies must share beta".into()));
        }
        if s.declared().dimension != subs[0].0.declared().dimension {
            return Err(Error::Config("sub-strategies must share the dimension".into()));
        }
    }
    // Transformed first-move thresholds: ρ_j scales with |scale_j|.
    let rho = subs
        .iter()
        .map(|(s, c)| c.scale.abs() * &s.declared().rho)
        .reduce(Rational::max)
        .expect("nonempty");
    let declared = match mode {
        CombineMode::AbsoluteSum => {
            let mut k_total = 0usize;
            let mut alpha = Rational::zero();
            for (s, _) in &subs {
                match &s.declared().kind {
                    GameKind::Absolute { k } => k_total += k,
                    GameKind::Potential { .. } => {
                        return Err(Error::Config(
                            "AbsoluteSum needs absolute sub-strategies".into(),
                        ))
                    }
                }
                alpha = alpha.max(s.declared().alpha.clone());
            }
            GameParams {
                kind: GameKind::Absolute { k: k_total },
                alpha,
                beta: subs[0].0.declared().beta.clone(),
                rho,
                obstacle_class: ObstacleClass::Points,
                dimension: subs[0].0.declared().dimension,
                deferred_avoidance: false,
            }
        }
        CombineMode::PotentialSum => {
            let c = match &subs[0].0.declared().kind {
                GameKind::Potential { c } => c.clone(),
                GameKind::Absolute { .. } => {
                    return Err(Error::Config(
                        "PotentialSum needs potential sub-strategies".into(),
                    ))
                }
            };
            let mut alpha;
            if c == Rational::one() {
                alpha = Rational::zero();
                for (s, _) in &subs {
                    match &s.declared().kind {
                        GameKind::Potential { c: cj } if *cj == c => {
                            alpha = alpha + &s.declared().alpha;
                        }
                        _ => return Err(Error::Config("sub-strategies must share c".into())),
                    }
                }
            } else {
                // α^c = Σ α_j^c has a rational solution we can certify only
                // in special shapes; combined potential play in the
                // pipelines always runs at c = 1 (legal by monotonicity).
                return Err(Error::Config(
                    "PotentialSum is implemented for c = 1; run other exponents \
                     through the c = 1 budget"
                        .into(),
                ));
            }
            GameParams {
                kind: GameKind::Potential { c },
                alpha,
                beta: subs[0].0.declared().beta.clone(),
                rho,
                obstacle_class: subs[0].0.declared().obstacle_class,
                dimension: subs[0].0.declared().dimension,
                deferred_avoidance: false,
            }
        }
    };
    Ok(CombinedAlice { subs, declared })
}

impl AlicePlayer for CombinedAlice {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>> {
        let turn = transcript.alice_moves.len();
        let mut all = Vec::new();
        for (sub, conj) in &mut self.subs {
            let inv = conj.inverse();
            let mut pulled = transform_transcript(transcript, &inv.scale, &inv.shift);
            pulled.params = sub.declared().clone();
            let local = sub.respond(&pulled)?;
            for obs in local {
                let mut pushed = obs.affine_image(&conj.scale, &conj.shift);
                pushed.turn_created = turn;
                all.push(pushed);
            }
        }
        assert_declared_legal(&self.declared, transcript, &all)?;
        Ok(all)
    }
}

impl AliceStrategy for CombinedAlice {
    fn declared(&self) -> &GameParams {
        &self.declared
    }
    fn target(&self) -> String {
        let parts: Vec<String> = self
            .subs
            .iter()
            .map(|(s, c)| format!("{} under x -> {}·x + {}", s.target(), c.scale, c.shift))
            .collect();
        parts.join(" ∩ ")
    }
}

// ---------------------------------------------------------------------------
// Bob strategies
// ---------------------------------------------------------------------------

fn obstacles_bob_must_consider(transcript: &Transcript) -> Vec<Obstacle> {
    let strict_absolute = matches!(transcript.params.kind, GameKind::Absolute { .. })
        && !transcript.params.deferred_avoidance;
    if strict_absolute {
        transcript.alice_moves.last().cloned().unwrap_or_default()
    } else {
        active_obstacles(transcript)
    }
}

fn min_gap(ball: &Ball, obstacles: &[Obstacle]) -> Option<Rational> {
    obstacles.iter().map(|o| o.gap_to_ball(ball)).reduce(Rational::min)
}

/// Equal-spacing Bob strategy: split the current interval
/// into `k+1` children of relative length β separated by equal gaps and
/// play the child farthest from the obstacles. Under `kα + (k+1)β ≤ 1`
/// each deleted ball can block at most one child, so some child is always
/// free when the inequality is strict.
pub struct SubdivisionBob {
    kplus1: usize,
    beta: Rational,
    start: Interval,
    decay: (usize, Rational),
}

pub fn bob_subdivision(
    kplus1: usize,
    beta: Rational,
    alpha: Rational,
    start: Interval,
) -> Result<SubdivisionBob> {
    if kplus1 < 2 {
        return Err(Error::Config("need at least 2 children".into()));
    }
    let k = Rational::from_int((kplus1 - 1) as i64);
    let gate = &k * &alpha + Rational::from_int(kplus1 as i64) * &beta;
    if gate > Rational::one() {
        return Err(Error::Config(format!(
            "subdivision hypothesis k·alpha + (k+1)·beta <= 1 violated: {gate} > 1"
        )));
    }
    Ok(SubdivisionBob {
        kplus1,
        beta: beta.clone(),
        start,
        decay: (1, beta),
    })
}

impl SubdivisionBob {
    /// `k+1` equally spaced children of relative length β.
    pub fn children(&self, i: &Interval) -> Vec<Interval> {
        let len = i.length();
        let child_len = &self.beta * &len;
        let k = self.kplus1 - 1;
        let gap = (&len - Rational::from_int(self.kplus1 as i64) * &child_len)
            / Rational::from_int(k as i64);
        let stride = &child_len + &gap;
        (0..self.kplus1)
            .map(|j| {
                let lo = i.lo() + &(&stride * &Rational::from_int(j as i64));
                Interval::new(lo.clone(), lo + &child_len)
            })
            .collect()
    }
}

impl BobPlayer for SubdivisionBob {
    fn respond(&mut self, transcript: &Transcript) -> Result<Option<Ball>> {
        let current = match transcript.current_ball() {
            None => return Ok(Some(Ball::Line(self.start.clone()))),
            Some(Ball::Line(i)) => i.clone(),
            _ => return Err(Error::Pipeline("subdivision Bob plays on the line".into())),
        };
        let obstacles = obstacles_bob_must_consider(transcript);
        let mut best: Option<(Rational, Interval)> = None;
        for child in self.children(&current) {
            let ball = Ball::Line(child.clone());
            let gap = min_gap(&ball, &obstacles).unwrap_or_else(|| Rational::from_int(1));
            let better = match &best {
                None => true,
                Some((best_gap, _)) => gap > *best_gap, // ties keep the leftmost
            };
            if better {
                best = Some((gap, child));
            }
        }
        let (gap, child) = best.expect("k+1 >= 2 children");
        let strict_absolute = matches!(transcript.params.kind, GameKind::Absolute { .. })
            && !transcript.params.deferred_avoidance;
        if strict_absolute && gap.is_zero() {
            return Ok(None); // stuck: every child meets a fresh deletion
        }
        Ok(Some(Ball::Line(child)))
    }

    fn decay_contract(&self) -> (usize, Rational) {
        self.decay.clone()
    }
}

/// Bob strategy that only plays construction intervals of a middle-ε
/// Cantor set (potential-game semantics): greedy choice of the child with
/// the larger minimum obstacle distance, with a bounded lookahead when
/// both children are touched.
pub struct SurvivalBob {
    spec: CantorSpec,
    lookahead: usize,
}

pub fn bob_construction_survival(spec: CantorSpec) -> SurvivalBob {
    SurvivalBob { spec, lookahead: 8 }
}

impl SurvivalBob {
    pub fn with_lookahead(mut self, levels: usize) -> Self {
        self.lookahead = levels;
        self
    }

    /// Can some depth-≤ `budget` descendant of `j` be positively separated
    /// from every obstacle (obstacles that already miss `j` are dropped)?
    fn can_clear(&self, j: &Interval, obstacles: &[Obstacle], budget: usize) -> bool {
        let ball = Ball::Line(j.clone());
        let live: Vec<Obstacle> = obstacles
            .iter()
            .filter(|o| o.intersects_ball(&ball))
            .cloned()
            .collect();
        if live.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let (l, r) = self.spec.children(j);
        self.can_clear(&l, &live, budget - 1) || self.can_clear(&r, &live, budget - 1)
    }
}

impl BobPlayer for SurvivalBob {
    fn respond(&mut self, transcript: &Transcript) -> Result<Option<Ball>> {
        let current = match transcript.current_ball() {
            None => return Ok(Some(Ball::Line(Interval::unit()))),
            Some(Ball::Line(i)) => i.clone(),
            _ => return Err(Error::Pipeline("survival Bob plays on the line".into())),
        };
        let obstacles = active_obstacles(transcript);
        let (l, r) = self.spec.children(&current);
        let gap_l = min_gap(&Ball::Line(l.clone()), &obstacles)
            .unwrap_or_else(|| Rational::from_int(1));
        let gap_r = min_gap(&Ball::Line(r.clone()), &obstacles)
            .unwrap_or_else(|| Rational::from_int(1));
        if gap_l.is_zero() && gap_r.is_zero() {
            // Both children touched: look ahead for an escape route.
            let l_clears = self.can_clear(&l, &obstacles, self.lookahead);
            if l_clears {
                return Ok(Some(Ball::Line(l)));
            }
            if self.can_clear(&r, &obstacles, self.lookahead) {
                return Ok(Some(Ball::Line(r)));
            }
            return Err(Error::SearchExhausted(format!(
                "both children blocked and no clearance within {} levels; \
                 {} active obstacles",
                self.lookahead,
                obstacles.len()
            )));
        }
        // Greedy: larger clearance wins, leftmost on ties.
        if gap_l >= gap_r {
            Ok(Some(Ball::Line(l)))
        } else {
            Ok(Some(Ball::Line(r)))
        }
    }

    fn decay_contract(&self) -> (usize, Rational) {
        (1, self.spec.lambda().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::games::{run_match, GameKind};

    fn potential_params(alpha: Rational, beta: Rational, rho: Rational, c: i64) -> GameParams {
        GameParams {
            kind: GameKind::Potential { c: rat(c, 1) },
            alpha,
            beta,
            rho,
            obstacle_class: ObstacleClass::Points,
            dimension: 1,
            deferred_avoidance: false,
        }
    }

    #[test]
    fn meps_declared_params_1_49() {
        let spec = CantorSpec::new(rat(1, 49)).unwrap();
        let alice = alice_meps(spec, rat(1, 6)).unwrap();
        assert_eq!(alice.declared.alpha, rat(1, 4));
        assert_eq!(alice.declared.rho, rat(2, 49));
    }

    #[test]
    fn meps_no_gap_in_small_left_ball() {
        let spec = CantorSpec::new(rat(1, 49)).unwrap();
        let mut alice = alice_meps(spec, rat(1, 6)).unwrap();
        let mut t = Transcript::new(potential_params(rat(1, 4), rat(1, 6), rat(1, 100), 0)).unwrap();
        t.bob_moves.push(Ball::Line(Interval::new(rat(0, 1), rat(1, 6))));
        assert!(alice.respond(&t).unwrap().is_empty());
    }

    #[test]
    fn meps_deletes_stage_one_gap() {
        let spec = CantorSpec::new(rat(1, 49)).unwrap();
        let mut alice = alice_meps(spec, rat(1, 6)).unwrap();
        let mut t = Transcript::new(potential_params(rat(1, 4), rat(1, 6), rat(1, 100), 0)).unwrap();
        t.bob_moves.push(Ball::Line(Interval::new(rat(0, 1), rat(24, 49))));
        let obs = alice.respond(&t).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].hull_interval().unwrap(), Interval::new(rat(24, 49), rat(25, 49)));
        assert_eq!(obs[0].thickness, rat(1, 98));
        assert!(obs[0].thickness <= rat(1, 4) * rat(12, 49)); // α·rad(B) = 3/49
    }

    #[test]
    fn ba1_deletes_half_neighborhood() {
        let mut alice = alice_ba1(rat(1, 20), rat(1, 3)).unwrap();
        let mut t = Transcript::new(potential_params(rat(1, 2), rat(1, 3), rat(1, 100), 0)).unwrap();
        t.bob_moves.push(Ball::Line(Interval::new(rat(9, 20), rat(11, 20))));
        let obs = alice.respond(&t).unwrap();
        assert_eq!(obs.len(), 1);
        // Δ(1/2) = [1/2 − 1/80, 1/2 + 1/80] = [39/80, 41/80]
        assert_eq!(obs[0].hull_interval().unwrap(), Interval::new(rat(39, 80), rat(41, 80)));
    }

    #[test]
    fn ba1_no_candidate_off_window() {
        let mut alice = alice_ba1(rat(1, 20), rat(1, 3)).unwrap();
        let mut t = Transcript::new(potential_params(rat(1, 2), rat(1, 3), rat(1, 100), 0)).unwrap();
        t.bob_moves.push(Ball::Line(Interval::new(rat(1, 4), rat(7, 20))));
        assert!(alice.respond(&t).unwrap().is_empty());
    }

    #[test]
    fn ba1_hypothesis_rejected() {
        assert!(alice_ba1(rat(1, 3), rat(1, 10)).is_err());
    }

    #[test]
    fn fn_declared_alphas() {
        let f19 = alice_fn(19, rat(1, 3)).unwrap();
        assert_eq!(f19.declared.alpha, rat(1, 3));
        assert_eq!(f19.declared.rho, rat(1, 6));
        let f49 = alice_fn(49, rat(1, 6)).unwrap();
        assert_eq!(f49.declared.alpha, rat(1, 4));
        assert_eq!(f49.declared.rho, rat(1, 12));
    }

    #[test]
    fn combine_thm22_parameters() {
        // S₁ from the ε = 1/49 Cantor strategy (ρ lifted to 1/24) and
        // S₂ = 2·S₁ − 0 give the combined tuple (1/4, 1/6, 1/12, k = 2).
        let spec = CantorSpec::new(rat(1, 49)).unwrap();
        let s1 = alice_meps(spec.clone(), rat(1, 6)).unwrap();
        let lifted_params = GameParams { rho: rat(1, 24), ..s1.declared().clone() };
        let s1 = lift(Box::new(s1), lifted_params).unwrap();
        let s2 = alice_meps(spec, rat(1, 6)).unwrap();
        let lifted_params = GameParams { rho: rat(1, 24), ..s2.declared().clone() };
        let s2 = lift(Box::new(s2), lifted_params).unwrap();
        let combined = combine_alice(
            vec![
                (Box::new(s1) as Box<dyn AliceStrategy>, Conjugation::identity()),
                (
                    Box::new(s2) as Box<dyn AliceStrategy>,
                    Conjugation { scale: rat(2, 1), shift: rat(0, 1) },
                ),
            ],
            CombineMode::AbsoluteSum,
        )
        .unwrap();
        let d = combined.declared();
        assert_eq!(d.alpha, rat(1, 4));
        assert_eq!(d.beta, rat(1, 6));
        assert_eq!(d.rho, rat(1, 12));
        assert!(matches!(d.kind, GameKind::Absolute { k: 2 }));
    }

    #[test]
    fn subdivision_children_layout() {
        // (k+1 = 3, β = 1/6): children of [0,1] have length 1/6 and gaps 1/4.
        let bob = bob_subdivision(3, rat(1, 6), rat(1, 4), Interval::unit()).unwrap();
        let kids = bob.children(&Interval::unit());
        assert_eq!(kids.len(), 3);
        assert_eq!(kids[0], Interval::new(rat(0, 1), rat(1, 6)));
        assert_eq!(kids[1], Interval::new(rat(5, 12), rat(7, 12)));
        assert_eq!(kids[2], Interval::new(rat(5, 6), rat(1, 1)));
        // ternary layout
        let bob = bob_subdivision(2, rat(1, 3), rat(1, 3), Interval::unit()).unwrap();
        let kids = bob.children(&Interval::unit());
        assert_eq!(kids[0], Interval::new(rat(0, 1), rat(1, 3)));
        assert_eq!(kids[1], Interval::new(rat(2, 3), rat(1, 1)));
    }

    #[test]
    fn subdivision_gate_rejected() {
        assert!(bob_subdivision(3, rat(1, 6), rat(1, 2), Interval::unit()).is_err());
    }

    #[test]
    fn survival_bob_dodges_obstacle() {
        struct DeleteLeft;
        impl AlicePlayer for DeleteLeft {
            fn respond(&mut self, t: &Transcript) -> Result<Vec<Obstacle>> {
                // Obstacle strictly inside the left child of the current ball.
                let i = t.current_ball().unwrap().as_interval().unwrap();
                let spec = CantorSpec::ternary();
                let (l, _) = spec.children(i);
                Ok(vec![Obstacle::new(
                    Carrier::Point1 { x: l.center() },
                    &l.length() / rat(10, 1),
                    t.alice_moves.len(),
                )])
            }
        }
        let params = potential_params(rat(1, 3), rat(1, 3), rat(1, 6), 0);
        let mut bob = bob_construction_survival(CantorSpec::ternary());
        let result = run_match(params, &mut DeleteLeft, &mut bob, 6).unwrap();
        assert!(result.cleared);
        // Bob was forced right every time.
        let enc = result.enclosure.as_interval().unwrap();
        assert_eq!(enc.hi(), &rat(1, 1));
    }

    #[test]
    fn simplex_d1_at_most_one_point() {
        let mut alice = alice_bad_simplex(rat(1, 100), rat(1, 4), 1).unwrap();
        let mut t = Transcript::new(potential_params(
            alice.declared().alpha.clone(),
            rat(1, 4),
            rat(1, 100),
            1,
        ))
        .unwrap();
        t.bob_moves.push(Ball::Line(Interval::new(rat(1, 3) - rat(1, 50), rat(1, 3) + rat(1, 50))));
        let obs = alice.respond(&t).unwrap();
        assert!(obs.len() <= 1);
    }

    #[test]
    fn affine_dependence_checks() {
        let collinear = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 2), rat(1, 2)),
            (rat(2, 1), rat(2, 1)),
        ];
        assert!(affinely_dependent(&collinear));
        let triangle = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(0, 1), rat(1, 1)),
        ];
        assert!(!affinely_dependent(&triangle));
    }
}
