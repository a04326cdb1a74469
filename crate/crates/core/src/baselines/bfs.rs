use rand::seq::index;

use crate::cost::Objective;
use crate::harness::trace::{BestTracker, RunTrace};
use crate::rng::SeededRng;

/// Uniform draws without replacement; a budget beyond `2^N` stops at
/// exhaustion.
pub fn bfs_run(objective: &Objective, budget: u64, seed: u64, instance: &str) -> RunTrace {
    let n = objective.num_qubits();
    let space = 1u64 << n;
    let draws = budget.min(space);
    let mut rng = SeededRng::new(seed);
    let mut trace = RunTrace::new("bfs", instance, seed, n);
    let mut tracker = BestTracker::new();
    for (i, w) in index::sample(&mut rng, space as usize, draws as usize).into_iter().enumerate() {
        let w = w as u64;
        tracker.observe(i as u64 + 1, w, objective.raw_word(w), |c| objective.ratio(c));
    }
    trace.total_samples = draws;
    tracker.finish(&mut trace);
    trace
}
