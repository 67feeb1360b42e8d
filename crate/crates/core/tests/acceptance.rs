//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass line. Run with `cargo test --test acceptance`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gamecert::arith::{rat, Rational};
use gamecert::certify::*;
use gamecert::contfrac::{cf_expand, cf_value, folding_step, is_good, CFWord};
use gamecert::dimension::*;
use gamecert::enclosure::log_ratio;
use gamecert::error::Error;
use gamecert::farey::fractions_in_window;
use gamecert::games::{
    run_match, AlicePlayer, Carrier, GameKind, GameParams, Obstacle, ObstacleClass, Status,
    Transcript,
};
use gamecert::interval::Interval;
use gamecert::strategies::{
    affinely_dependent, alice_ba1, alice_meps, bob_subdivision, combine_alice, lift,
    rational_points_in_ball2, AliceStrategy, CombineMode, Conjugation,
};

fn rand_rat(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(1..=max_num);
    Rational::new(num, den)
}

/// Criterion 1: cover estimates at scales 10⁻⁸ and 10⁻¹⁰ land in
/// [0.13, 0.15] and differ by at most 0.02.
#[test]
fn criterion_1_cover_estimator_range() {
    let e8 = hd_estimate_fn_cap_cantor(2, rat(1, 100_000_000)).unwrap();
    let e10 = hd_estimate_fn_cap_cantor(2, rat(1, 10_000_000_000i64)).unwrap();
    for e in [&e8, &e10] {
        assert!(e.estimate.lo >= rat(13, 100), "estimate below 0.13");
        assert!(e.estimate.hi <= rat(15, 100), "estimate above 0.15");
    }
    let spread = (&e8.estimate.midpoint() - &e10.estimate.midpoint()).abs();
    assert!(spread <= rat(2, 100), "estimates differ by more than 0.02");
    println!(
        "PASS criterion 1: estimates {:?} and {:?} in [0.13,0.15], spread {}",
        e8.estimate.decimal(5),
        e10.estimate.decimal(5),
        spread.to_decimal_ceil(5)
    );
}

/// Criterion 2: the ε = 1/49 three-term progression pipeline at depth 40
/// audits, and the combined declared parameters are exactly
/// (1/4, 1/6, 1/12, k = 2).
#[test]
fn criterion_2_ap3_instance() {
    let cert = certify_ap3_meps(rat(1, 49), rat(0, 1), 40).unwrap();
    audit_ap(&cert).unwrap();
    assert_eq!(cert.elements.len(), 3);

    // Rebuild the combined strategy and pin its declared parameters.
    let spec = gamecert::cantor::CantorSpec::new(rat(1, 49)).unwrap();
    let make = || {
        let s = alice_meps(spec.clone(), rat(1, 6)).unwrap();
        let lifted = GameParams {
            alpha: rat(1, 4),
            rho: rat(1, 24),
            ..s.declared().clone()
        };
        Box::new(lift(Box::new(s), lifted).unwrap()) as Box<dyn AliceStrategy>
    };
    let combined = combine_alice(
        vec![
            (make(), Conjugation::identity()),
            (make(), Conjugation { scale: rat(2, 1), shift: rat(0, 1) }),
        ],
        CombineMode::AbsoluteSum,
    )
    .unwrap();
    let d = combined.declared();
    assert_eq!(d.alpha, rat(1, 4));
    assert_eq!(d.beta, rat(1, 6));
    assert_eq!(d.rho, rat(1, 12));
    assert_eq!(d.kind, GameKind::Absolute { k: 2 });
    println!(
        "PASS criterion 2: audited 3-term progression, declared (1/4, 1/6, 1/12, k=2), gap {}",
        cert.gap
    );
}

/// Criterion 3: depth-40 bounded-quotient ∩ Cantor run clears its ledger
/// with a certified CF prefix of ≥ 10 quotients ≤ 19; depth 60 extends
/// the prefix monotonically.
#[test]
fn criterion_3_f19_instance() {
    let c40 = certify_f19_cap_c(40).unwrap();
    audit_point(&c40).unwrap();
    let c60 = certify_f19_cap_c(60).unwrap();
    audit_point(&c60).unwrap();
    assert!(c40.cf_prefix.len() >= 10, "prefix shorter than 10");
    assert!(c60.cf_prefix.len() >= c40.cf_prefix.len());
    assert_eq!(c40.cf_prefix.a0, c60.cf_prefix.a0);
    assert_eq!(
        c40.cf_prefix.quotients[..],
        c60.cf_prefix.quotients[..c40.cf_prefix.len()],
        "deeper run must extend the certified prefix"
    );
    println!(
        "PASS criterion 3: cleared ledgers, certified prefixes of {} and {} quotients (all <= 19)",
        c40.cf_prefix.len(),
        c60.cf_prefix.len()
    );
}

/// Criterion 4: all 21 grid values of t in [1/6, 11/6] produce audited
/// sumset certificates at depth 30.
#[test]
fn criterion_4_sumset_sweep() {
    for i in 0..21i64 {
        let t = rat(1, 6) + rat(i, 12);
        let cert = certify_sumset_f49(t.clone(), 30)
            .unwrap_or_else(|e| panic!("t = {t}: {e}"));
        audit_sumset(&cert).unwrap_or_else(|e| panic!("audit at t = {t}: {e}"));
    }
    println!("PASS criterion 4: 21/21 sumset certificates audited at depth 30");
}

/// Criterion 5: the folding chain stays good for 7 steps with the exact
/// denominator squaring law; the y-digit pattern holds on a 255-digit
/// prefix; the certified CF prefix has ≥ 15 quotients, all ≤ 9.
#[test]
fn criterion_5_folding_chain() {
    let mut x = rat(17, 27);
    let expected_exponents = [3u32, 7, 15, 31, 63, 127, 255];
    for (k, expected) in expected_exponents.iter().enumerate() {
        let good = is_good(&x).unwrap_or_else(|| panic!("step {k} not good"));
        assert_eq!(good.power_of_3_exponent, *expected, "denominator law at step {k}");
        if k + 1 < expected_exponents.len() {
            x = folding_step(&x);
        }
    }
    let cert = certify_folding_f9(6, 15).unwrap();
    audit_point(&cert).unwrap();
    let digits = cert.ternary_prefix.as_ref().unwrap();
    assert!(digits.len() >= 60, "need a >= 60 digit prefix");
    for (idx, d) in digits.iter().enumerate() {
        let position = idx + 1;
        let expected = if (position + 1).is_power_of_two() { 2 } else { 0 };
        assert_eq!(*d, expected, "digit at position {position}");
    }
    assert!(cert.cf_prefix.len() >= 15, "need >= 15 certified quotients");
    println!(
        "PASS criterion 5: 7 good steps, {}-digit pattern, {} certified quotients <= 9",
        digits.len(),
        cert.cf_prefix.len()
    );
}

/// Criterion 6: exact identities — the 17/27 continued-fraction round
/// trip, the 2·(1/4) + 3·(1/6) = 1 subdivision gate, and
/// hd_lower_formula(4, 2, 1/4) = 1/2 exactly.
#[test]
fn criterion_6_exact_identities() {
    let w = cf_expand(&rat(17, 27));
    let expected = CFWord::new(0, vec![1, 1, 1, 2, 3]).unwrap();
    assert_eq!(w, expected);
    assert_eq!(cf_value(&expected), rat(17, 27));

    assert_eq!(rat(2, 4) + rat(3, 6), rat(1, 1));
    let unit = Interval::new(rat(0, 1), rat(1, 1));
    assert!(bob_subdivision(3, rat(1, 6), rat(1, 4), unit.clone()).is_ok());
    assert!(matches!(
        bob_subdivision(3, rat(1, 6), rat(26, 100), unit),
        Err(Error::Config(_))
    ));

    let half = hd_lower_formula(4, 2, rat(1, 4)).unwrap();
    assert_eq!(half.lo, rat(1, 2));
    assert_eq!(half.hi, rat(1, 2));
    println!("PASS criterion 6: CF round trip, subdivision gate, exact formula value 1/2");
}

fn ceil_sqrt_rat(r: &Rational) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let mut q = r.floor().max(BigInt::zero()).sqrt();
    while Rational::from_int(&q * &q) < *r {
        q += 1;
    }
    q
}

/// Criterion 7(i): at most one admissible rational neighborhood of each
/// denominator band meets a ball of the band's scale, under the
/// hypothesis (ε/(1−ε))² ≤ β. 10³ random instances.
#[test]
fn criterion_7i_band_uniqueness() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut accepted = 0u32;
    while accepted < 1000 {
        let beta = Rational::new(1i64, rng.gen_range(2..=20i64));
        let eps = Rational::new(1i64, rng.gen_range(3..=300i64));
        let h = &eps / (Rational::one() - &eps);
        if &h * &h > beta || eps >= rat(1, 2) {
            continue;
        }
        accepted += 1;
        let ell = Rational::new(1i64, rng.gen_range(1..=10_000i64));
        let x = rand_rat(&mut rng, 10_000, 10_000).min(Rational::one());
        let one_minus = Rational::one() - rat(2, 1) * &eps;
        let q_min = ceil_sqrt_rat(&(&one_minus * &beta / &ell)).max(BigInt::one());
        let mut q_max = ceil_sqrt_rat(&(&one_minus / &ell));
        if Rational::from_int(&q_max * &q_max) >= &one_minus / &ell {
            q_max -= 1;
        }
        if q_max < q_min {
            continue; // empty band
        }
        let reach = &ell / rat(2, 1) + &eps / Rational::from_int(&q_min * &q_min);
        let window = Interval::new(&x - &reach, &x + &reach);
        let hits = fractions_in_window(&window, &q_max)
            .into_iter()
            .filter(|f| {
                f.denom() >= &q_min
                    && (&x - f).abs()
                        <= &ell / rat(2, 1) + &eps / Rational::from_int(f.denom() * f.denom())
            })
            .count();
        assert!(
            hits <= 1,
            "uniqueness violated: eps={eps} beta={beta} ell={ell} x={x} hits={hits}"
        );
    }
    println!("PASS criterion 7(i): band uniqueness on 1000 random instances");
}

/// Criterion 7(ii): the scalar inequality
/// min(1, xᶜ/(γy)ᶜ)(x+2y)^η ≤ 3^η xᶜ max(x^{η−c}, y^{η−c}/γᶜ)
/// on 10⁵ random rational tuples, compared exactly by raising both sides
/// to the denominator-clearing power.
#[test]
fn criterion_7ii_scalar_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(702);
    for _ in 0..100_000 {
        // 0 < c < η with denominators ≤ 4.
        let cd = rng.gen_range(1..=4i64);
        let hd = rng.gen_range(1..=4i64);
        let cn = rng.gen_range(1..=3 * cd);
        let hn = rng.gen_range(1..=3 * hd);
        let c = Rational::new(cn, cd);
        let eta = Rational::new(hn, hd);
        if c >= eta {
            continue;
        }
        let x = rand_rat(&mut rng, 30, 30);
        let y = rand_rat(&mut rng, 30, 30);
        let g = rand_rat(&mut rng, 30, 30);
        // Clear the exponent denominators: compare r-th powers.
        let r = num_integer::lcm(cd, hd);
        let rc = cn * (r / cd);
        let rh = hn * (r / hd);
        let xc = x.pow_i(rc);
        let gy_c = (&g * &y).pow_i(rc);
        let lhs = Rational::one().min(&xc / &gy_c) * (&x + rat(2, 1) * &y).pow_i(rh);
        let xh_c = x.pow_i(rh - rc);
        let yh_c = y.pow_i(rh - rc) / g.pow_i(rc);
        let rhs = rat(3, 1).pow_i(rh) * &xc * xh_c.max(yh_c);
        assert!(
            lhs <= rhs,
            "inequality violated at x={x} y={y} gamma={g} c={c} eta={eta}"
        );
    }
    println!("PASS criterion 7(ii): scalar inequality on 100000 random tuples");
}

/// Criterion 7(iii): denominator-bounded rational points in a ball of the
/// volume-argument radius are always affinely dependent (d = 2), 10³
/// random instances.
#[test]
fn criterion_7iii_affine_dependence() {
    let mut rng = ChaCha8Rng::seed_from_u64(703);
    for _ in 0..1000 {
        let m: i64 = rng.gen_range(2..=12);
        let q_bound = BigInt::from(2 * m * m);
        let s = Rational::new(1i64, 8 * m * m * m);
        let center = (
            rand_rat(&mut rng, 1000, 1000).min(Rational::one()),
            rand_rat(&mut rng, 1000, 1000).min(Rational::one()),
        );
        let pts = rational_points_in_ball2(&center, &s, &q_bound);
        assert!(
            affinely_dependent(&pts),
            "independent points in a radius-{s} ball at denominator bound {q_bound}"
        );
    }
    println!("PASS criterion 7(iii): affine dependence on 1000 random instances");
}

/// A random legal deletion strategy for the strict absolute game.
struct RandomAlice {
    rng: ChaCha8Rng,
    k: usize,
    alpha: Rational,
}

impl AlicePlayer for RandomAlice {
    fn respond(&mut self, t: &Transcript) -> gamecert::error::Result<Vec<Obstacle>> {
        let ball = t.current_ball().unwrap().as_interval().unwrap().clone();
        let rho = ball.length() / rat(2, 1);
        let budget = &self.alpha * &rho;
        let count = self.rng.gen_range(0..=self.k);
        let turn = t.alice_moves.len();
        let mut out = Vec::new();
        for _ in 0..count {
            let num = self.rng.gen_range(0..=1000i64);
            let center = ball.lo() + ball.length() * rat(num, 1000);
            let thickness = &budget * rand_rat(&mut self.rng, 999, 1000).min(rat(999, 1000));
            out.push(Obstacle::new(Carrier::Point1 { x: center }, thickness, turn));
        }
        Ok(out)
    }
}

/// Criterion 7(iv): the equal-spacing Bob is never stuck across 10⁴
/// randomized legal adversaries at the strict boundary parameters
/// (α, β, k) = (1/4, 1/6, 2).
#[test]
fn criterion_7iv_bob_never_stuck() {
    let params = GameParams {
        kind: GameKind::Absolute { k: 2 },
        alpha: rat(1, 4),
        beta: rat(1, 6),
        rho: rat(1, 12),
        obstacle_class: ObstacleClass::Points,
        dimension: 1,
        deferred_avoidance: false,
    };
    for seed in 0..10_000u64 {
        let mut alice = RandomAlice {
            rng: ChaCha8Rng::seed_from_u64(704_000 + seed),
            k: 2,
            alpha: rat(1, 4),
        };
        let mut bob =
            bob_subdivision(3, rat(1, 6), rat(1, 4), Interval::new(rat(0, 1), rat(1, 1)))
                .unwrap();
        let result = run_match(params.clone(), &mut alice, &mut bob, 6)
            .unwrap_or_else(|e| panic!("adversary {seed}: {e}"));
        assert_eq!(
            result.transcript.status,
            Status::DepthReached,
            "Bob stuck against adversary {seed}"
        );
    }
    println!("PASS criterion 7(iv): Bob survived 10000 randomized adversaries");
}

/// Criterion 8: across α ∈ {10⁻², …, 10⁻⁶} the budget trend
/// k·α·log(α⁻¹) stays within a factor-2 band.
#[test]
fn criterion_8_budget_trend() {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for e in 2..=6u32 {
        let alpha = Rational::new(BigInt::one(), BigInt::from(10u64).pow(e));
        let rec = ap_length_budget(alpha, rat(1, 4), rat(1, 1)).unwrap();
        assert!(rec.k > 0, "budget empty at 10^-{e}");
        lo = Some(match lo {
            None => rec.trend.lo.clone(),
            Some(v) => v.min(rec.trend.lo.clone()),
        });
        hi = Some(match hi {
            None => rec.trend.hi.clone(),
            Some(v) => v.max(rec.trend.hi.clone()),
        });
    }
    let (lo, hi) = (lo.unwrap(), hi.unwrap());
    assert!(hi <= rat(2, 1) * &lo, "trend band wider than factor 2: [{lo}, {hi}]");
    println!(
        "PASS criterion 8: trend band [{}, {}] within factor 2",
        lo.to_decimal_floor(4),
        hi.to_decimal_ceil(4)
    );
}

/// Criterion 9: the survivor tree reports dimension ≈ 1 under the trivial
/// strategy (within grid slack), and the deletion-strategy dimension
/// deficit scales with log-log slope within ±15% of 1 across an α sweep.
#[test]
fn criterion_9_survivor_tree() {
    // Trivial strategy at a small grid.
    let small = SurvivorConfig {
        beta: rat(1, 4),
        group: 2,
        gamma: rat(1, 4),
        c: rat(1, 2),
        levels: 3,
    };
    let trivial_small = survivor_tree(None, &small).unwrap();
    let slack = Rational::new(1i64, (small.group * small.levels) as i64);
    assert!(&Rational::one() - &trivial_small.dimension.lo <= slack);

    // Deficit sweep at a fine one-level grid: α ∈ {1/8, 1/32, 1/128}
    // realized by ε ∈ {1/66, 1/258, 1/1026} at β = 1/4.
    let config = SurvivorConfig {
        beta: rat(1, 4),
        group: 7,
        gamma: rat(1, 4),
        c: rat(1, 2),
        levels: 1,
    };
    let baseline = survivor_tree(None, &config).unwrap();
    let mut deficits = Vec::new();
    for eps_den in [66i64, 258, 1026] {
        let mut alice = alice_ba1(rat(1, eps_den), rat(1, 4)).unwrap();
        let report = survivor_tree(Some(&mut alice), &config).unwrap();
        let deficit = &baseline.dimension.midpoint() - &report.dimension.midpoint();
        assert!(deficit.is_positive(), "no deletions registered at eps = 1/{eps_den}");
        deficits.push(deficit);
    }
    // α shrinks by 16 between the endpoints; predicted deficit ∝ α.
    let ratio = &deficits[0] / &deficits[2];
    let slope = log_ratio(&ratio, &rat(16, 1), 128).unwrap();
    assert!(
        slope.lo >= rat(85, 100) && slope.hi <= rat(115, 100),
        "log-log slope {:?} outside the ±15% band",
        slope.decimal(4)
    );
    println!(
        "PASS criterion 9: trivial dimension {:?} within slack, sweep slope {:?}",
        trivial_small.dimension.decimal(4),
        slope.decimal(4)
    );
}
