//! Validated state machines for the two deletion games on ℝ and ℝ²: move
//! legality, the obstacle ledger, finite-depth match execution, and
//! transcript replay.
//!
//! In the absolute game Alice deletes up to `k` closed balls of radius
//! ≤ α·ρ_m per turn and Bob must immediately avoid them while shrinking
//! his ball by a factor ≥ β. In the potential game Alice deletes
//! thickened points or hyperplanes under the budget Σ thiᶜ ≤ (αρ_m)ᶜ
//! (for c = 0: a single obstacle of thickness ≤ αρ_m) and Bob must only
//! avoid them *eventually* — a finished match is therefore judged by a
//! post-hoc clearance audit of the final ball against the whole ledger.
//!
//! Because play stops at a finite depth, the game's "outcome point" is
//! replaced by the final ball (the enclosure); pipelines certify claims
//! about the outcome through clearance plus refinement of the enclosure.

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::interval::{Ball, Interval};

/// Which game is being played, with the per-kind budget parameter.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GameKind {
    /// Up to `k` deleted balls per turn, immediate avoidance.
    Absolute { k: usize },
    /// Power-sum budget with exponent `c`; deferred avoidance.
    Potential { c: Rational },
}

/// Which carriers Alice may thicken.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ObstacleClass {
    Points,
    Hyperplanes,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GameParams {
    pub kind: GameKind,
    pub alpha: Rational,
    pub beta: Rational,
    pub rho: Rational,
    pub obstacle_class: ObstacleClass,
    /// Ambient dimension, 1 or 2.
    pub dimension: u8,
    /// When set, Bob's moves are not required to avoid the previous turn's
    /// deletions even in the absolute kind; avoidance is then judged only
    /// by the final clearance audit. Used by pipelines that run at a
    /// boundary parameter equality where strict avoidance can deadlock on
    /// touching closed sets.
    #[serde(default)]
    pub deferred_avoidance: bool,
}

impl GameParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_positive() && self.beta.is_positive() && self.rho.is_positive()) {
            return Err(Error::Config("alpha, beta, rho must be positive".into()));
        }
        if self.dimension != 1 && self.dimension != 2 {
            return Err(Error::Config("dimension must be 1 or 2".into()));
        }
        match &self.kind {
            GameKind::Absolute { k } => {
                if *k < 1 {
                    return Err(Error::Config("absolute game needs k ≥ 1".into()));
                }
                if self.obstacle_class != ObstacleClass::Points {
                    return Err(Error::Config(
                        "absolute-game deletions are closed balls (point carriers)".into(),
                    ));
                }
            }
            GameKind::Potential { c } => {
                if c.is_negative() {
                    return Err(Error::Config("potential exponent c must be ≥ 0".into()));
                }
            }
        }
        Ok(())
    }
}

/// What Alice thickens: a point or an affine line (d = 2 only), written
/// `a·x + b·y = c`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "carrier")]
pub enum Carrier {
    Point1 { x: Rational },
    Point2 { x: Rational, y: Rational },
    Line2 { a: Rational, b: Rational, c: Rational },
}

impl Carrier {
    pub fn dimension(&self) -> u8 {
        match self {
            Carrier::Point1 { .. } => 1,
            _ => 2,
        }
    }

    pub fn is_hyperplane(&self) -> bool {
        // In dimension 1 a hyperplane is a point, so only the line carrier
        // distinguishes the classes.
        matches!(self, Carrier::Line2 { .. })
    }
}

/// A thickened carrier `N(h, r)`: the closed r-neighborhood of h.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Obstacle {
    pub carrier: Carrier,
    pub thickness: Rational,
    /// Index of the Alice turn that created this obstacle.
    pub turn_created: usize,
}

impl Obstacle {
    pub fn new(carrier: Carrier, thickness: Rational, turn_created: usize) -> Self {
        assert!(!thickness.is_negative(), "negative thickness");
        Obstacle { carrier, thickness, turn_created }
    }

    /// Distance between the thickened set and a closed ball (0 when they
    /// intersect; touching closed sets have distance 0 and count as
    /// intersecting).
    pub fn gap_to_ball(&self, ball: &Ball) -> Rational {
        let carrier_gap = match (&self.carrier, ball) {
            (Carrier::Point1 { x }, Ball::Line(i)) => i.gap_to(&Interval::point(x.clone())),
            (Carrier::Point2 { x, y }, Ball::Plane(b)) => {
                let d = b.center_dist(&(x.clone(), y.clone()));
                (d - &b.radius).max(Rational::zero())
            }
            (Carrier::Line2 { a, b, c }, Ball::Plane(ball)) => {
                // Sup-norm distance from a point to the line a·x + b·y = c
                // is |a·px + b·py − c| / (|a| + |b|) (ℓ¹ dual norm).
                let num = (a * &ball.center.0 + b * &ball.center.1 - c).abs();
                let d = num / (a.abs() + b.abs());
                (d - &ball.radius).max(Rational::zero())
            }
            _ => panic!("obstacle/ball dimension mismatch"),
        };
        (carrier_gap - &self.thickness).max(Rational::zero())
    }

    pub fn intersects_ball(&self, ball: &Ball) -> bool {
        self.gap_to_ball(ball).is_zero()
    }

    /// The closed interval covered by a 1-dimensional obstacle.
    pub fn hull_interval(&self) -> Option<Interval> {
        match &self.carrier {
            Carrier::Point1 { x } => Some(Interval::from_center_radius(x, &self.thickness)),
            _ => None,
        }
    }

    /// Image under `x ↦ scale·x + shift` (coordinatewise in the plane);
    /// thickness scales by |scale|.
    pub fn affine_image(&self, scale: &Rational, shift: &Rational) -> Obstacle {
        let carrier = match &self.carrier {
            Carrier::Point1 { x } => Carrier::Point1 { x: scale * x + shift },
            Carrier::Point2 { x, y } => {
                Carrier::Point2 { x: scale * x + shift, y: scale * y + shift }
            }
            Carrier::Line2 { a, b, c } => Carrier::Line2 {
                a: a.clone(),
                b: b.clone(),
                c: scale * c + (a + b) * shift,
            },
        };
        Obstacle {
            carrier,
            thickness: scale.abs() * &self.thickness,
            turn_created: self.turn_created,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Status {
    InProgress,
    BobStuck,
    DepthReached,
}

/// Validated move history. Turn order is B₀, A₀, B₁, A₁, …; Bob moves
/// last, so a finished depth-D match has D+1 Bob balls and D Alice turns.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Transcript {
    pub params: GameParams,
    pub bob_moves: Vec<Ball>,
    pub alice_moves: Vec<Vec<Obstacle>>,
    pub status: Status,
}

impl Transcript {
    pub fn new(params: GameParams) -> Result<Self> {
        params.validate()?;
        Ok(Transcript {
            params,
            bob_moves: Vec::new(),
            alice_moves: Vec::new(),
            status: Status::InProgress,
        })
    }

    pub fn current_ball(&self) -> Option<&Ball> {
        self.bob_moves.last()
    }

    /// All obstacles deleted so far, in creation order.
    pub fn ledger(&self) -> Vec<Obstacle> {
        self.alice_moves.iter().flatten().cloned().collect()
    }

    fn is_bobs_turn(&self) -> bool {
        self.bob_moves.len() == self.alice_moves.len()
    }
}

/// Decides `Σ tᵢᶜ ≤ boundᶜ` exactly for positive rationals and rational
/// c > 0. Integer exponents and single-base sums reduce to integer
/// cross-powering; mixed bases fall back to certified enclosures refined
/// until the comparison resolves (a genuine tie among irrational sums
/// cannot be resolved and is reported as an error).
pub fn sum_powers_le(terms: &[Rational], c: &Rational, bound: &Rational) -> Result<bool> {
    if !c.is_positive() {
        return Err(Error::Domain("exponent must be positive".into()));
    }
    if !bound.is_positive() {
        return Err(Error::Domain("bound must be positive".into()));
    }
    if terms.iter().any(|t| !t.is_positive()) {
        return Err(Error::Domain("terms must be positive".into()));
    }
    if terms.is_empty() {
        return Ok(true);
    }
    if c.is_integer() {
        let e = i64::try_from(&c.floor())
            .map_err(|_| Error::Domain("exponent too large".into()))?;
        let sum = terms
            .iter()
            .fold(Rational::zero(), |acc, t| acc + t.pow_i(e));
        return Ok(sum <= bound.pow_i(e));
    }
    if terms.iter().all(|t| t == &terms[0]) {
        // n·tᶜ ≤ Aᶜ  ⟺  n^q ≤ (A/t)^p  for c = p/q in lowest terms.
        let p = i64::try_from(c.numer()).map_err(|_| Error::Domain("exponent too large".into()))?;
        let q = i64::try_from(c.denom()).map_err(|_| Error::Domain("exponent too large".into()))?;
        let n = Rational::from_int(terms.len() as i64);
        let ratio = bound / &terms[0];
        return Ok(n.pow_i(q) <= ratio.pow_i(p));
    }
    // Mixed bases: certified-enclosure refinement.
    let mut prec: u32 = 32;
    loop {
        let mut sum = crate::enclosure::Enc::point(Rational::zero());
        for t in terms {
            sum = sum.add(&crate::enclosure::pow_enc(t, c, prec)?);
        }
        let rhs = crate::enclosure::pow_enc(bound, c, prec)?;
        if sum.hi <= rhs.lo {
            return Ok(true);
        }
        if sum.lo > rhs.hi {
            return Ok(false);
        }
        if prec > 1 << 12 {
            return Err(Error::ResourceCap(
                "power-sum comparison unresolved at maximum precision".into(),
            ));
        }
        prec *= 2;
    }
}

/// Checks Bob's next ball against the rules (initial radius, radius decay,
/// containment, and — in the strict absolute kind — avoidance of the
/// previous turn's deletions).
pub fn validate_bob_move(transcript: &Transcript, ball: &Ball) -> Result<()> {
    let params = &transcript.params;
    if !transcript.is_bobs_turn() {
        return Err(Error::IllegalMove {
            rule: "turn-order".into(),
            detail: "it is not Bob's turn".into(),
        });
    }
    let ball_dim = match ball {
        Ball::Line(_) => 1,
        Ball::Plane(_) => 2,
    };
    if ball_dim != params.dimension {
        return Err(Error::IllegalMove {
            rule: "dimension".into(),
            detail: format!("ball dimension {ball_dim} ≠ game dimension {}", params.dimension),
        });
    }
    match transcript.bob_moves.last() {
        None => {
            if ball.radius() < params.rho {
                return Err(Error::IllegalMove {
                    rule: "initial-radius".into(),
                    detail: format!("radius {} < rho {}", ball.radius(), params.rho),
                });
            }
        }
        Some(prev) => {
            let min_radius = &params.beta * &prev.radius();
            if ball.radius() < min_radius {
                return Err(Error::IllegalMove {
                    rule: "radius-decay".into(),
                    detail: format!("radius {} < beta·previous = {min_radius}", ball.radius()),
                });
            }
            if !prev.contains(ball) {
                return Err(Error::IllegalMove {
                    rule: "containment".into(),
                    detail: "ball not contained in the previous ball".into(),
                });
            }
            let strict_avoidance =
                matches!(params.kind, GameKind::Absolute { .. }) && !params.deferred_avoidance;
            if strict_avoidance {
                if let Some(last_deletions) = transcript.alice_moves.last() {
                    for obs in last_deletions {
                        if obs.intersects_ball(ball) {
                            return Err(Error::IllegalMove {
                                rule: "avoidance".into(),
                                detail: format!(
                                    "ball meets the deleted set created on turn {}",
                                    obs.turn_created
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks Alice's deletion collection against her per-turn budget.
pub fn validate_alice_move(transcript: &Transcript, obstacles: &[Obstacle]) -> Result<()> {
    let params = &transcript.params;
    if transcript.is_bobs_turn() {
        return Err(Error::IllegalMove {
            rule: "turn-order".into(),
            detail: "it is not Alice's turn".into(),
        });
    }
    let rho_m = transcript
        .bob_moves
        .last()
        .expect("Alice's turn implies Bob has moved")
        .radius();
    for obs in obstacles {
        if obs.carrier.dimension() != params.dimension {
            return Err(Error::IllegalMove {
                rule: "dimension".into(),
                detail: "obstacle dimension mismatch".into(),
            });
        }
        if obs.thickness.is_negative() {
            return Err(Error::IllegalMove {
                rule: "thickness-sign".into(),
                detail: "negative thickness".into(),
            });
        }
        match params.obstacle_class {
            ObstacleClass::Points => {
                if obs.carrier.is_hyperplane() {
                    return Err(Error::IllegalMove {
                        rule: "obstacle-class".into(),
                        detail: "hyperplane carrier in a point-obstacle game".into(),
                    });
                }
            }
            ObstacleClass::Hyperplanes => {} // points are degenerate hyperplanes in d = 1
        }
    }
    let budget = &params.alpha * &rho_m;
    match &params.kind {
        GameKind::Absolute { k } => {
            if obstacles.len() > *k {
                return Err(Error::IllegalMove {
                    rule: "deletion-count".into(),
                    detail: format!("{} deletions exceed k = {k}", obstacles.len()),
                });
            }
            for obs in obstacles {
                if obs.thickness > budget {
                    return Err(Error::IllegalMove {
                        rule: "deletion-radius".into(),
                        detail: format!("radius {} > alpha·rho_m = {budget}", obs.thickness),
                    });
                }
            }
        }
        GameKind::Potential { c } => {
            if c.is_zero() {
                if obstacles.len() > 1 {
                    return Err(Error::IllegalMove {
                        rule: "single-element".into(),
                        detail: "c = 0 allows at most one obstacle per turn".into(),
                    });
                }
                if let Some(obs) = obstacles.first() {
                    if obs.thickness > budget {
                        return Err(Error::IllegalMove {
                            rule: "thickness".into(),
                            detail: format!("thickness {} > alpha·rho_m = {budget}", obs.thickness),
                        });
                    }
                }
            } else {
                let positive: Vec<Rational> = obstacles
                    .iter()
                    .map(|o| o.thickness.clone())
                    .filter(|t| t.is_positive())
                    .collect();
                if !sum_powers_le(&positive, c, &budget)? {
                    return Err(Error::IllegalMove {
                        rule: "power-sum-budget".into(),
                        detail: format!("sum of thickness^{c} exceeds (alpha·rho_m)^{c}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A strategy for Alice: maps the transcript (after Bob's move) to the
/// next deletion collection.
pub trait AlicePlayer {
    fn respond(&mut self, transcript: &Transcript) -> Result<Vec<Obstacle>>;
}

/// A strategy for Bob. `None` means he has no legal ball to play.
pub trait BobPlayer {
    fn respond(&mut self, transcript: &Transcript) -> Result<Option<Ball>>;
    /// Declared decay contract `(w, β̄)`: over every window of `w` Bob
    /// turns the radius shrinks by a factor ≤ β̄ < 1.
    fn decay_contract(&self) -> (usize, Rational);
}

/// The outcome of a finite-depth match.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchResult {
    pub transcript: Transcript,
    /// Final Bob ball: the stand-in for the outcome point.
    pub enclosure: Ball,
    /// Every obstacle Alice created during the match.
    pub ledger: Vec<Obstacle>,
    /// True iff the enclosure is positively separated from every
    /// ledger obstacle's thickened set.
    pub cleared: bool,
}

/// Runs a match to `depth` Alice turns (Bob plays `depth + 1` balls and
/// moves last). Every move is validated before being recorded; a strategy
/// emitting an illegal move aborts with the diagnostic transcript attached
/// to the error text.
pub fn run_match(
    params: GameParams,
    alice: &mut dyn AlicePlayer,
    bob: &mut dyn BobPlayer,
    depth: usize,
) -> Result<MatchResult> {
    let mut transcript = Transcript::new(params)?;
    for turn in 0..=depth {
        match bob.respond(&transcript)? {
            None => {
                transcript.status = Status::BobStuck;
                break;
            }
            Some(ball) => {
                validate_bob_move(&transcript, &ball)?;
                transcript.bob_moves.push(ball);
            }
        }
        if turn == depth {
            transcript.status = Status::DepthReached;
            break;
        }
        let deletions = alice.respond(&transcript)?;
        validate_alice_move(&transcript, &deletions)?;
        transcript.alice_moves.push(deletions);
    }
    let enclosure = transcript
        .current_ball()
        .cloned()
        .ok_or_else(|| Error::Pipeline("Bob never moved".into()))?;
    let ledger = transcript.ledger();
    let cleared = ledger.iter().all(|o| o.gap_to_ball(&enclosure).is_positive());
    Ok(MatchResult { transcript, enclosure, ledger, cleared })
}

/// Re-validates every recorded move in order; returns an error at the
/// first violation. A transcript produced by `run_match` always replays.
pub fn replay(transcript: &Transcript) -> Result<()> {
    let mut fresh = Transcript::new(transcript.params.clone())?;
    let mut alice_iter = transcript.alice_moves.iter();
    for ball in &transcript.bob_moves {
        validate_bob_move(&fresh, ball)?;
        fresh.bob_moves.push(ball.clone());
        if fresh.bob_moves.len() <= transcript.alice_moves.len() {
            let deletions = alice_iter.next().expect("length checked");
            validate_alice_move(&fresh, deletions)?;
            fresh.alice_moves.push(deletions.clone());
        }
    }
    if transcript.alice_moves.len() + 1 < transcript.bob_moves.len() {
        return Err(Error::AuditRejected(
            "transcript has unmatched Alice turns".into(),
        ));
    }
    Ok(())
}

/// Finite-depth surrogate for "radii tend to 0": checks that the radius
/// shrinks by a factor ≤ beta_bar over every window of `w` Bob turns.
pub fn radius_decay_certified(result: &MatchResult, w: usize, beta_bar: &Rational) -> bool {
    assert!(w >= 1 && beta_bar < &Rational::one());
    let radii: Vec<Rational> = result.transcript.bob_moves.iter().map(Ball::radius).collect();
    radii
        .windows(w + 1)
        .all(|win| win[w].clone() <= beta_bar * &win[0])
}

/// Image of a whole transcript under `x ↦ scale·x + shift`; the first-move
/// radius parameter scales by |scale|.
pub fn transform_transcript(t: &Transcript, scale: &Rational, shift: &Rational) -> Transcript {
    assert!(!scale.is_zero(), "similarity ratio must be nonzero");
    let mut params = t.params.clone();
    params.rho = scale.abs() * &t.params.rho;
    Transcript {
        params,
        bob_moves: t.bob_moves.iter().map(|b| b.affine_image(scale, shift)).collect(),
        alice_moves: t
            .alice_moves
            .iter()
            .map(|turn| turn.iter().map(|o| o.affine_image(scale, shift)).collect())
            .collect(),
        status: t.status,
    }
}
