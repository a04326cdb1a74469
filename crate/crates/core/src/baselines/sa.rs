use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::Objective;
use crate::encodings::Route;
use crate::error::{Error, Result};
use crate::harness::trace::{BestTracker, RunTrace};
use crate::rng::SeededRng;
use crate::{BitString, Problem};

pub const INITIAL_TEMPERATURE: f64 = 5.0;
pub const FINAL_TEMPERATURES: [f64; 4] = [1.0, 0.1, 0.01, 0.001];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaConfig {
    pub t_init: f64,
    pub t_final: f64,
    /// Cost evaluations, the initial state included.
    pub budget: u64,
}

impl SaConfig {
    pub fn new(t_final: f64, budget: u64) -> Self {
        Self { t_init: INITIAL_TEMPERATURE, t_final, budget }
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_init > 0.0 && self.t_final > 0.0) || self.budget == 0 {
            return Err(Error::Config("temperatures and budget must be positive".into()));
        }
        Ok(())
    }

    /// Geometric schedule over `proposals` steps from `t_init` to `t_final`.
    pub fn temperature(&self, i: u64, proposals: u64) -> f64 {
        if proposals <= 1 {
            return self.t_init;
        }
        let frac = i as f64 / (proposals - 1) as f64;
        self.t_init * (self.t_final / self.t_init).powf(frac)
    }
}

/// `min(1, exp(-delta / t))`.
pub fn acceptance_probability(delta: f64, t: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-delta / t).exp()
    }
}

pub fn metropolis_accept(delta: f64, t: f64, rng: &mut SeededRng) -> bool {
    delta <= 0.0 || rng.uniform() < acceptance_probability(delta, t)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SaStats {
    pub proposals: u64,
    pub accepted: u64,
    /// Sum of the chain's current raw cost after each proposal.
    pub cost_sum: f64,
}

enum State {
    Bits(u64),
    Tour(Route),
}

/// Metropolis chain on the rescaled cost. MaxCut moves flip one random
/// bit; ATSP moves swap two adjacent free cities of the decoded route.
pub fn sa_run(objective: &Objective, config: &SaConfig, seed: u64, instance: &str) -> Result<RunTrace> {
    Ok(sa_run_with_stats(objective, config, seed, instance)?.0)
}

pub fn sa_run_with_stats(
    objective: &Objective,
    config: &SaConfig,
    seed: u64,
    instance: &str,
) -> Result<(RunTrace, SaStats)> {
    config.validate()?;
    let n = objective.num_qubits();
    let mut rng = SeededRng::new(seed);
    let mut trace = RunTrace::new(format!("sa-{}", config.t_final), instance, seed, n);
    let mut tracker = BestTracker::new();
    let span = objective.model().upper() - objective.model().lower();
    let ratio = |c: f64| objective.ratio(c);

    let start = rng.below(1u64 << n);
    let (mut state, mut cost) = match objective.problem() {
        Problem::MaxCut(_) => (State::Bits(start), objective.raw_word(start)),
        Problem::Atsp(a) => {
            let route = a.decode(&BitString::from_word(start, n)?)?;
            let c = a.route_cost(&route);
            (State::Tour(route), c)
        }
    };
    tracker.observe(1, start, cost, ratio);

    let proposals = config.budget - 1;
    let mut stats = SaStats::default();
    for i in 0..proposals {
        let t = config.temperature(i, proposals);
        let samples = i + 2;
        match (&mut state, objective.problem()) {
            (State::Bits(x), _) => {
                let y = *x ^ (1u64 << rng.below(n as u64));
                let c = objective.raw_word(y);
                tracker.observe(samples, y, c, ratio);
                if metropolis_accept((c - cost) / span, t, &mut rng) {
                    *x = y;
                    cost = c;
                    stats.accepted += 1;
                }
            }
            (State::Tour(route), Problem::Atsp(a)) => {
                let pos = rng.below(a.n() as u64 - 2) as usize;
                route.swap_adjacent(pos);
                let c = a.route_cost(route);
                let word = a.encode(route)?.word();
                tracker.observe(samples, word, c, ratio);
                if metropolis_accept((c - cost) / span, t, &mut rng) {
                    cost = c;
                    stats.accepted += 1;
                } else {
                    route.swap_adjacent(pos);
                }
            }
            (State::Tour(_), Problem::MaxCut(_)) => unreachable!("route state only for ATSP"),
        }
        stats.proposals += 1;
        stats.cost_sum += cost;
    }
    trace.total_samples = config.budget;
    tracker.finish(&mut trace);
    Ok((trace, stats))
}

/// Candidate with the most optimal solves; ties go to the larger
/// temperature.
pub fn select_final_temperature_by(candidates: &[f64], solved: impl Fn(f64) -> usize) -> Option<f64> {
    let mut best: Option<(usize, f64)> = None;
    for &t in candidates {
        let count = solved(t);
        best = match best {
            Some((c, bt)) if c > count || (c == count && bt >= t) => Some((c, bt)),
            _ => Some((count, t)),
        };
    }
    best.map(|(_, t)| t)
}

/// Runs every candidate on every instance and seed with the given budget.
pub fn select_final_temperature(
    objectives: &[Objective],
    candidates: &[f64],
    budget: u64,
    seeds: &[u64],
) -> Result<f64> {
    if objectives.is_empty() || candidates.is_empty() {
        return Err(Error::Config("temperature selection needs instances and candidates".into()));
    }
    let mut counts = Vec::with_capacity(candidates.len());
    for &t in candidates {
        let cfg = SaConfig::new(t, budget);
        let jobs: Vec<(usize, u64)> = (0..objectives.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
        let solved = jobs
            .par_iter()
            .map(|&(i, s)| sa_run(&objectives[i], &cfg, s, "").map(|tr| tr.best_ratio() == Some(1.0)))
            .collect::<Result<Vec<bool>>>()?;
        counts.push((t, solved.into_iter().filter(|&b| b).count()));
    }
    Ok(select_final_temperature_by(candidates, |t| counts.iter().find(|c| c.0 == t).map_or(0, |c| c.1))
        .expect("candidates non-empty"))
}
