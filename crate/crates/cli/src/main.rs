//! Command-line front end: one subcommand per certification pipeline,
//! plus formula calculators, transcript replay, and certificate auditing.
//!
//! Exit codes: 0 = certificate produced and audited, 1 = usage error,
//! 2 = honest failure (pipeline could not certify, audit rejected, ...).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gamecert::arith::{rat, Rational};
use gamecert::certify::{
    ap_instance_diagnostics, ap_length_budget, audit_ap, audit_point, audit_sumset,
    certify_ap3_meps, certify_f19_cap_c, certify_folding_f9, certify_newhouse_ap4,
    certify_sumset_f49, search_ap_endpoints, sumset_as_ap, APCertificate, PointCertificate,
    SumsetCertificate,
};
use gamecert::dimension::{
    hd_estimate_fn_cap_cantor, hd_lower_formula, independence_heuristic, potential_hd_bound,
    survivor_tree, SurvivorConfig,
};
use gamecert::games::{
    run_match, AlicePlayer, Carrier, GameKind, GameParams, Obstacle, ObstacleClass, Status,
    Transcript,
};
use gamecert::interval::Interval;
use gamecert::strategies::{alice_ba1, bob_subdivision, AliceStrategy};

#[derive(Parser)]
#[command(
    name = "gamecert",
    about = "Exact-arithmetic game certificates for Cantor-set arithmetic progressions,\n\
             bounded-quotient intersections, sumsets, and dimension estimates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a 3-term arithmetic progression in a middle-epsilon Cantor set.
    ApMeps {
        /// Set parameter epsilon in (0, 1/49], e.g. "1/49".
        #[arg(long)]
        epsilon: String,
        /// First progression element (a construction-interval endpoint).
        #[arg(long, default_value = "0")]
        a: String,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify a 4-term progression in a middle-epsilon set with epsilon <= 1/3.
    Ap4Newhouse {
        #[arg(long, default_value = "1/3")]
        epsilon: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exhaustive progression search over stage-n construction endpoints.
    ApSearch {
        #[arg(long)]
        epsilon: String,
        /// Construction stage whose endpoints are enumerated (<= 9).
        #[arg(long, default_value_t = 2)]
        stage: usize,
        /// Longest progression length to look for.
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify a point with all partial quotients <= 19 inside the ternary Cantor set.
    F19CapC {
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify t = x + y with quotient-bounded x and t - x (bound 49).
    SumsetF49 {
        /// Single target t in [1/6, 11/6].
        #[arg(long, conflicts_with = "t_grid")]
        t: Option<String>,
        /// Sweep this many evenly spaced t values across [1/6, 11/6] (CSV output).
        #[arg(long, num_args = 0..=1, default_missing_value = "21")]
        t_grid: Option<usize>,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify the folding-construction point with quotients <= 9 in the Cantor set.
    FoldingF9 {
        /// Folding iterations (1..=6).
        #[arg(long, default_value_t = 6)]
        iterations: usize,
        /// Number of certified continued-fraction quotients requested.
        #[arg(long, default_value_t = 15)]
        cf_depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Box-counting estimate for the bounded-quotient set intersected with the Cantor set.
    HdFnC {
        /// Partial-quotient bound (>= 2).
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Cover scale, e.g. "1e-8".
        #[arg(long)]
        scale: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Progression-length budget k(alpha) and its alpha*log(1/alpha) trend.
    ApBudget {
        /// One or more alpha values (repeat the flag to sweep; CSV when repeated).
        #[arg(long, required = true)]
        alpha: Vec<String>,
        #[arg(long, default_value = "1/4")]
        beta: String,
        #[arg(long, default_value = "1")]
        k2: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Grid survivor counts and dimension under a deletion strategy.
    SurvivorTree {
        #[arg(long, default_value = "1/4")]
        beta: String,
        /// Turns per level.
        #[arg(long, default_value_t = 7)]
        group: usize,
        #[arg(long, default_value = "1/4")]
        gamma: String,
        #[arg(long, default_value = "1/2")]
        c: String,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Deletion strategy: "trivial" (no deletions) or "ba1".
        #[arg(long, default_value = "trivial")]
        strategy: String,
        /// Neighborhood parameter for the ba1 strategy.
        #[arg(long, default_value = "1/66")]
        epsilon: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Closed-form bound calculators.
    Bounds {
        #[command(subcommand)]
        formula: BoundsCommand,
    },
    /// Re-validate a recorded game transcript, or generate one against a random adversary.
    GameReplay {
        /// Transcript JSON to replay.
        file: Option<PathBuf>,
        /// Play the equal-spacing ball chooser against a seeded random adversary.
        #[arg(long, conflicts_with = "file")]
        random_adversary: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Re-verify any certificate or transcript JSON produced by this tool.
    Audit { file: PathBuf },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Lower bound log(N - k) / log(base) for the bounded-quotient/Cantor grid.
    HdLower {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        beta: String,
    },
    /// Potential-game dimension bound delta - K1*alpha^eta/log(1/beta).
    Potential {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "1")]
        k1: String,
        #[arg(long, default_value = "1")]
        k2: String,
    },
    /// Intersection heuristic max(0, d1 + d2 - d).
    Independence {
        #[arg(long)]
        d1: String,
        #[arg(long)]
        d2: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the artifact (JSON certificate or CSV table) to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems (and --help/--version) exit 1 per the
            // documented contract; help text still prints normally.
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("gamecert: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    Rational::parse(s).map_err(|e| format!("cannot parse rational '{s}': {e}"))
}

fn write_artifact(out: &OutArg, contents: &str) -> Result<(), String> {
    if let Some(path) = &out.out {
        std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(out: &OutArg, value: &T) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    write_artifact(out, &text)
}

fn describe_ap(cert: &APCertificate) {
    println!(
        "certified {}-term progression: start {}, gap {}, depth {}",
        cert.elements.len(),
        cert.elements[0],
        cert.gap,
        cert.depth
    );
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::ApMeps { epsilon, a, depth, out } => {
            let cert = certify_ap3_meps(parse_rat(&epsilon)?, parse_rat(&a)?, depth)
                .map_err(|e| e.to_string())?;
            audit_ap(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
            describe_ap(&cert);
            if let Ok(diag) = ap_instance_diagnostics(&cert) {
                if let Some(r) = &diag.interval_gap_ratio {
                    println!("diagnostics: interval/gap ratio {r}");
                }
            }
            emit_json(&out, &cert)
        }
        Command::Ap4Newhouse { epsilon, depth, out } => {
            let cert = certify_newhouse_ap4(parse_rat(&epsilon)?, depth)
                .map_err(|e| e.to_string())?;
            audit_ap(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
            describe_ap(&cert);
            emit_json(&out, &cert)
        }
        Command::ApSearch { epsilon, stage, kmax, out } => {
            let cert = search_ap_endpoints(parse_rat(&epsilon)?, stage, kmax)
                .map_err(|e| e.to_string())?;
            audit_ap(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
            describe_ap(&cert);
            emit_json(&out, &cert)
        }
        Command::F19CapC { depth, out } => {
            let cert = certify_f19_cap_c(depth).map_err(|e| e.to_string())?;
            audit_point(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
            describe_point(&cert);
            emit_json(&out, &cert)
        }
        Command::SumsetF49 { t, t_grid, depth, out } => match (t, t_grid) {
            (Some(t), None) => {
                let cert = certify_sumset_f49(parse_rat(&t)?, depth).map_err(|e| e.to_string())?;
                audit_sumset(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
                describe_sumset(&cert);
                emit_json(&out, &cert)
            }
            (None, grid) => sumset_grid(grid.unwrap_or(21), depth, &out),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        },
        Command::FoldingF9 { iterations, cf_depth, out } => {
            let cert = certify_folding_f9(iterations, cf_depth).map_err(|e| e.to_string())?;
            audit_point(&cert).map_err(|e| format!("self-audit failed: {e}"))?;
            describe_point(&cert);
            emit_json(&out, &cert)
        }
        Command::HdFnC { n, scale, out } => {
            let est = hd_estimate_fn_cap_cantor(n, parse_rat(&scale)?).map_err(|e| e.to_string())?;
            let (lo, hi) = est.estimate.decimal(6);
            println!(
                "count {} at scale {} -> dimension estimate in [{lo}, {hi}] (digest {})",
                est.count, est.scale, est.manifest_digest
            );
            emit_json(&out, &est)
        }
        Command::ApBudget { alpha, beta, k2, out } => {
            let beta = parse_rat(&beta)?;
            let k2 = parse_rat(&k2)?;
            let mut csv = String::from(
                "alpha,beta,k2,k,c_lo,c_hi,budget_lo,budget_hi,trend_lo,trend_hi\n",
            );
            for a in &alpha {
                let a = parse_rat(a)?;
                let rec = ap_length_budget(a.clone(), beta.clone(), k2.clone())
                    .map_err(|e| e.to_string())?;
                println!(
                    "alpha {}: progression length budget k = {}, trend in [{}, {}]",
                    a,
                    rec.k,
                    rec.trend.lo,
                    rec.trend.hi
                );
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    a, beta, k2, rec.k, rec.c.lo, rec.c.hi, rec.budget.lo, rec.budget.hi,
                    rec.trend.lo, rec.trend.hi
                ));
            }
            write_artifact(&out, &csv)
        }
        Command::SurvivorTree { beta, group, gamma, c, levels, strategy, epsilon, out } => {
            let config = SurvivorConfig {
                beta: parse_rat(&beta)?,
                group,
                gamma: parse_rat(&gamma)?,
                c: parse_rat(&c)?,
                levels,
            };
            let report = match strategy.as_str() {
                "trivial" => survivor_tree(None, &config),
                "ba1" => {
                    let mut alice = alice_ba1(parse_rat(&epsilon)?, config.beta.clone())
                        .map_err(|e| e.to_string())?;
                    survivor_tree(Some(&mut alice as &mut dyn AliceStrategy), &config)
                }
                other => return Err(format!("unknown strategy '{other}' (trivial | ba1)")),
            }
            .map_err(|e| e.to_string())?;
            let (lo, hi) = report.dimension.decimal(6);
            println!(
                "survivors {} of {} candidates; dimension in [{lo}, {hi}]",
                report.final_survivors,
                report.stats.iter().map(|s| s.candidates).sum::<u64>()
            );
            emit_json(&out, &report)
        }
        Command::Bounds { formula } => run_bounds(formula),
        Command::GameReplay { file, random_adversary, seed, depth, out } => {
            if random_adversary {
                return random_adversary_match(seed, depth, &out);
            }
            let path = file.ok_or("provide a transcript file or --random-adversary")?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let transcript: Transcript =
                serde_json::from_str(&text).map_err(|e| format!("not a transcript: {e}"))?;
            gamecert::games::replay(&transcript).map_err(|e| format!("replay rejected: {e}"))?;
            println!(
                "transcript valid: {} ball moves, status {:?}",
                transcript.bob_moves.len(),
                transcript.status
            );
            Ok(())
        }
        Command::Audit { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            audit_any(&text)
        }
    }
}

fn describe_point(cert: &PointCertificate) {
    println!(
        "certified point enclosure of width {} with {} continued-fraction quotients{}",
        cert.nested.last().map(|i| i.length().to_string()).unwrap_or_default(),
        cert.cf_prefix.len(),
        cert.quotient_bound.map(|b| format!(" (all <= {b})")).unwrap_or_default()
    );
}

fn describe_sumset(cert: &SumsetCertificate) {
    println!(
        "certified t = {} as x + (t - x): {} + {} quotients, bound {}",
        cert.t,
        cert.x_prefix.len(),
        cert.complement_prefix.len(),
        cert.quotient_bound
    );
    let ap = sumset_as_ap(cert);
    println!("two-element progression view: gap {}", ap.gap);
}

fn sumset_grid(points: usize, depth: usize, out: &OutArg) -> Result<(), String> {
    if points < 2 {
        return Err("--t-grid needs at least 2 points".into());
    }
    let lo = rat(1, 6);
    let span = rat(10, 6);
    let mut csv =
        String::from("t,depth,x_lo,x_hi,x_prefix_len,complement_prefix_len,quotient_bound\n");
    let mut failures = 0usize;
    for i in 0..points {
        let t = &lo + &span * rat(i as i64, (points - 1) as i64);
        match certify_sumset_f49(t.clone(), depth).and_then(|cert| {
            audit_sumset(&cert)?;
            Ok(cert)
        }) {
            Ok(cert) => {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    cert.t,
                    depth,
                    cert.x_enclosure.lo(),
                    cert.x_enclosure.hi(),
                    cert.x_prefix.len(),
                    cert.complement_prefix.len(),
                    cert.quotient_bound
                ));
            }
            Err(e) => {
                failures += 1;
                eprintln!("t = {t}: {e}");
            }
        }
    }
    println!("certified {}/{} grid points", points - failures, points);
    write_artifact(out, &csv)?;
    if failures > 0 {
        return Err(format!("{failures} grid points failed"));
    }
    Ok(())
}

fn run_bounds(formula: BoundsCommand) -> Result<(), String> {
    match formula {
        BoundsCommand::HdLower { n, k, beta } => {
            let enc = hd_lower_formula(n, k, parse_rat(&beta)?).map_err(|e| e.to_string())?;
            let (lo, hi) = enc.decimal(6);
            println!("lower bound in [{lo}, {hi}] (exact [{}, {}])", enc.lo, enc.hi);
            Ok(())
        }
        BoundsCommand::Potential { delta, eta, alpha, beta, c, k1, k2 } => {
            let b = potential_hd_bound(
                parse_rat(&delta)?,
                parse_rat(&eta)?,
                parse_rat(&alpha)?,
                parse_rat(&beta)?,
                parse_rat(&c)?,
                parse_rat(&k1)?,
                parse_rat(&k2)?,
            )
            .map_err(|e| e.to_string())?;
            let (lo, hi) = b.bound.decimal(6);
            println!(
                "bound in [{lo}, {hi}]; admissibility {:?}; positivity {:?}",
                b.condition_satisfied, b.positivity_certified
            );
            Ok(())
        }
        BoundsCommand::Independence { d1, d2, d } => {
            let v = independence_heuristic(parse_rat(&d1)?, parse_rat(&d2)?, d)
                .map_err(|e| e.to_string())?;
            println!("heuristic intersection dimension {v}");
            Ok(())
        }
    }
}

/// Legal but randomized point-deletion adversary for the strict game.
struct RandomAlice {
    rng: ChaCha8Rng,
    alpha: Rational,
}

impl AlicePlayer for RandomAlice {
    fn respond(&mut self, t: &Transcript) -> gamecert::error::Result<Vec<Obstacle>> {
        let ball = t.current_ball().unwrap().as_interval().unwrap().clone();
        let rho = ball.length() / rat(2, 1);
        let budget = &self.alpha * &rho;
        let turn = t.alice_moves.len();
        let count = self.rng.gen_range(0..=2usize);
        let mut out = Vec::new();
        for _ in 0..count {
            let num = self.rng.gen_range(0..=1000i64);
            let center = ball.lo() + ball.length() * rat(num, 1000);
            let thickness = &budget * rat(self.rng.gen_range(1..=999i64), 1000);
            out.push(Obstacle::new(Carrier::Point1 { x: center }, thickness, turn));
        }
        Ok(out)
    }
}

fn random_adversary_match(seed: u64, depth: usize, out: &OutArg) -> Result<(), String> {
    let params = GameParams {
        kind: GameKind::Absolute { k: 2 },
        alpha: rat(1, 4),
        beta: rat(1, 6),
        rho: rat(1, 12),
        obstacle_class: ObstacleClass::Points,
        dimension: 1,
        deferred_avoidance: false,
    };
    let mut alice = RandomAlice {
        rng: ChaCha8Rng::seed_from_u64(seed),
        alpha: rat(1, 4),
    };
    let mut bob = bob_subdivision(3, rat(1, 6), rat(1, 4), Interval::new(rat(0, 1), rat(1, 1)))
        .map_err(|e| e.to_string())?;
    let result =
        run_match(params, &mut alice, &mut bob, depth).map_err(|e| e.to_string())?;
    if result.transcript.status != Status::DepthReached {
        return Err(format!("match ended early: {:?}", result.transcript.status));
    }
    gamecert::games::replay(&result.transcript).map_err(|e| format!("replay rejected: {e}"))?;
    println!("seed {seed}: ball chooser survived {depth} turns; transcript replays cleanly");
    emit_json(out, &result.transcript)
}

fn audit_any(text: &str) -> Result<(), String> {
    if let Ok(cert) = serde_json::from_str::<APCertificate>(text) {
        audit_ap(&cert).map_err(|e| format!("progression certificate rejected: {e}"))?;
        println!("progression certificate verified ({} elements)", cert.elements.len());
        return Ok(());
    }
    if let Ok(cert) = serde_json::from_str::<SumsetCertificate>(text) {
        audit_sumset(&cert).map_err(|e| format!("sumset certificate rejected: {e}"))?;
        println!("sumset certificate verified (t = {})", cert.t);
        return Ok(());
    }
    if let Ok(cert) = serde_json::from_str::<PointCertificate>(text) {
        audit_point(&cert).map_err(|e| format!("point certificate rejected: {e}"))?;
        println!(
            "point certificate verified ({} quotients)",
            cert.cf_prefix.len()
        );
        return Ok(());
    }
    if let Ok(transcript) = serde_json::from_str::<Transcript>(text) {
        gamecert::games::replay(&transcript).map_err(|e| format!("transcript rejected: {e}"))?;
        println!("transcript verified ({} ball moves)", transcript.bob_moves.len());
        return Ok(());
    }
    Err("file is not a recognized certificate or transcript".into())
}
