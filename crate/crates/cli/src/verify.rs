//! Randomized Clifford-identity trials over small prime fields.

use std::collections::BTreeMap;

use cubic_brauer::clifford::rewrite::{evaluate, evaluate_word, normal_form, X, Y};
use cubic_brauer::clifford::{jacobian_c, specialize, verify_identities, CliffordSpecialization, IdentityStatus};
use cubic_brauer::numeric::finite::{Gf, GfCtx};
use cubic_brauer::field::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: u32 = 25;
/// Primes `≡ 1 mod 3`, so `ω` and `√c` lie in the prime field.
pub const FIELDS: [u64; 4] = [7, 13, 31, 61];
/// Draws allowed per requested specialization before giving up.
pub const MAX_ATTEMPTS_PER_TRIAL: u32 = 20;
pub const REWRITER_WORDS: usize = 100;
pub const REWRITER_MAX_DEGREE: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: u32,
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub sqrt_c: u64,
    pub omega: u64,
    pub r0: u64,
    pub s0: u64,
    pub epsilon: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkipRecord {
    pub trial: u32,
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityTally {
    pub group: String,
    pub passed: u32,
    pub failed: u32,
    pub not_evaluable: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RewriterSummary {
    pub words: usize,
    pub max_degree: usize,
    pub agreed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordSummary {
    pub seed: u64,
    /// Specializations evaluated; degenerate draws are skipped and redrawn.
    pub trials: u32,
    pub draws: u32,
    pub fields: Vec<u64>,
    pub skipped: Vec<SkipRecord>,
    pub records: Vec<TrialRecord>,
    /// Keyed by identity.
    pub identities: BTreeMap<String, IdentityTally>,
    pub rewriter: RewriterSummary,
    pub all_passed: bool,
}

fn idx(g: &Gf) -> u64 {
    g.index()
}

/// One draw: a specialization, or the reason it was skipped.
fn draw(ctx: &std::sync::Arc<GfCtx>, rng: &mut ChaCha8Rng) -> Result<(CliffordSpecialization<Gf>, Gf), String> {
    let p = ctx.p as i64;
    let g = |n: i64| Gf::from_i64(ctx, n);
    let a = g(rng.gen_range(1..p));
    let b = g(rng.gen_range(1..p));
    let c = jacobian_c(&a, &b).map_err(|e| e.to_string())?;
    let mut root = c.sqrt().ok_or("c is not a square")?;
    if rng.gen_bool(0.5) {
        root = root.negate();
    }
    // r0 is drawn from the whole field; r0 = 0 is the degenerate s0 = ±sqrt(c) case
    let (r0, s0) = loop {
        let r = g(rng.gen_range(0..p));
        if let Some(s) = r.cube().plus(&c).sqrt() {
            break (r, if rng.gen_bool(0.5) { s.negate() } else { s });
        }
    };
    let eps = g(rng.gen_range(1..p));
    let sp = specialize(&a, &b, &r0, &s0, &root).map_err(|e| e.to_string())?;
    Ok((sp, eps))
}

pub fn run_trials(trials: u32, seed: u64) -> Result<CliffordSummary, CliError> {
    if trials == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identities: BTreeMap<String, IdentityTally> = BTreeMap::new();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut specs = Vec::new();
    let mut attempt = 0;
    while records.len() < trials as usize {
        if attempt >= MAX_ATTEMPTS_PER_TRIAL * trials {
            return Err(CliError::Config(format!("only {} of {trials} specializations after {attempt} draws", records.len())));
        }
        let trial = attempt;
        attempt += 1;
        let p = FIELDS[trial as usize % FIELDS.len()];
        let ctx = GfCtx::prime(p)?;
        match draw(&ctx, &mut rng) {
            Err(reason) => skipped.push(SkipRecord { trial, p, reason }),
            Ok((sp, eps)) => {
                let report = verify_identities(&sp, &eps);
                for c in &report.checks {
                    let t = identities
                        .entry(c.name.to_string())
                        .or_insert_with(|| IdentityTally { group: c.group.into(), ..Default::default() });
                    match c.status {
                        IdentityStatus::Pass => t.passed += 1,
                        IdentityStatus::Fail => t.failed += 1,
                        IdentityStatus::NotEvaluable(_) => t.not_evaluable += 1,
                    }
                }
                records.push(TrialRecord {
                    trial,
                    p,
                    a: idx(&sp.a),
                    b: idx(&sp.b),
                    sqrt_c: idx(&sp.sqrt_c),
                    omega: idx(&sp.omega),
                    r0: idx(&sp.r0),
                    s0: idx(&sp.s0),
                    epsilon: idx(&eps),
                    passed: report.all_passed(),
                });
                specs.push(sp);
            }
        }
    }
    let rewriter = rewriter_check(&specs, &mut rng);
    let all_passed = records.iter().all(|r| r.passed) && rewriter.agreed == rewriter.words;
    Ok(CliffordSummary {
        seed,
        trials,
        draws: attempt,
        fields: FIELDS.to_vec(),
        skipped,
        records,
        identities,
        rewriter,
        all_passed,
    })
}

/// Random words of degree at most 6, evaluated directly and through their rewritten normal forms.
pub fn rewriter_check(specs: &[CliffordSpecialization<Gf>], rng: &mut ChaCha8Rng) -> RewriterSummary {
    let mut agreed = 0;
    if specs.is_empty() {
        return RewriterSummary { words: 0, max_degree: REWRITER_MAX_DEGREE, agreed };
    }
    for n in 0..REWRITER_WORDS {
        let sp = &specs[n % specs.len()];
        let len = rng.gen_range(0..=REWRITER_MAX_DEGREE);
        let word: Vec<u8> = (0..len).map(|_| if rng.gen_bool(0.5) { X } else { Y }).collect();
        let nf = normal_form(&word, &sp.a, &sp.b);
        if evaluate(&nf, &sp.x, &sp.y) == evaluate_word(&word, &sp.x, &sp.y) {
            agreed += 1;
        }
    }
    RewriterSummary { words: REWRITER_WORDS, max_degree: REWRITER_MAX_DEGREE, agreed }
}
