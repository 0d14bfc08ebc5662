//! Deterministic seeded multistart around [`al_solve`](crate::optimize::al_solve).
//!
//! Each trial draws its own RNG stream from `(seed, trial)` via splitmix64,
//! so the report is identical no matter how trials are scheduled. Trials run
//! in parallel on a rayon pool capped by the `COVER_THREADS` env var.

use crate::error::Error;
use crate::geometry::{Configuration, Point2, Region};
use crate::optimize::{al_solve, ALParams, SolveResult, SolveStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct TrialSummary {
    pub trial: usize,
    pub status: SolveStatus,
    pub r: f64,
}

#[derive(Debug, Clone)]
pub struct MultistartReport {
    pub best: SolveResult,
    /// 1-based ordinal of the winning trial.
    pub best_trial: usize,
    pub summaries: Vec<TrialSummary>,
    pub trials: usize,
    pub seed: u64,
    pub wall_time: f64,
}

/// splitmix64 step, used to derive independent per-trial seeds.
fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Uniform draw on A by rejection from the bounding box.
fn sample_point(region: &Region, rng: &mut ChaCha8Rng) -> Point2 {
    let (lo, hi) = region.bounding_box();
    loop {
        let p = Point2::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
        if region.contains(p) {
            return p;
        }
    }
}

/// Initial guess of trial `t` (1-based): centers i.i.d. uniform on A,
/// r0 = bounding-box diagonal / sqrt(m).
pub fn initial_guess(region: &Region, m: usize, seed: u64, trial: usize) -> Configuration {
    let stream = splitmix64(seed ^ splitmix64(trial as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let centers = (0..m).map(|_| sample_point(region, &mut rng)).collect();
    let r0 = region.diameter() / (m as f64).sqrt();
    Configuration::new(centers, r0)
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("COVER_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder.build().expect("failed to build thread pool")
}

pub fn run_multistart(
    region: &Region,
    m: usize,
    trials: usize,
    seed: u64,
    params: &ALParams,
) -> Result<MultistartReport, Error> {
    if m == 0 || trials == 0 {
        return Err(Error::Domain("multistart requires m >= 1 and trials >= 1".into()));
    }
    let start = Instant::now();
    let pool = thread_pool();
    let results: Vec<(usize, Option<SolveResult>)> = pool.install(|| {
        (1..=trials)
            .into_par_iter()
            .map(|t| {
                let cfg0 = initial_guess(region, m, seed, t);
                (t, al_solve(region, &cfg0, params).ok())
            })
            .collect()
    });

    let mut summaries = Vec::with_capacity(trials);
    let mut best: Option<(f64, usize, SolveResult)> = None;
    for (t, res) in results {
        let Some(res) = res else {
            summaries.push(TrialSummary { trial: t, status: SolveStatus::MaxIter, r: f64::NAN });
            continue;
        };
        summaries.push(TrialSummary { trial: t, status: res.status, r: res.cfg.radius });
        if res.status != SolveStatus::Converged {
            continue;
        }
        // Min-reduction keyed by (r, ordinal): order-independent and total.
        let better = match &best {
            None => true,
            Some((r, bt, _)) => (res.cfg.radius, t) < (*r, *bt),
        };
        if better {
            best = Some((res.cfg.radius, t, res));
        }
    }
    summaries.sort_by_key(|s| s.trial);

    let Some((_, best_trial, best)) = best else {
        return Err(Error::NoConvergedTrial);
    };
    Ok(MultistartReport {
        best,
        best_trial,
        summaries,
        trials,
        seed,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
