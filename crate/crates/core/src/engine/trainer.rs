use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ansatz::{Ansatz, AnsatzKind};
use super::gradient::{estimate_from_samples, filter_table, loss_prefactor, exact_gradient_prepared};
use super::hyper::Hyperparameters;
use super::{filter, is_vqe, update};
use crate::cost::{Objective, TABLE_CAP};
use crate::error::{Error, Result};
use crate::harness::trace::{BestTracker, RunTrace, StepRecord};
use crate::iqp::{IqpCircuit, DEFAULT_SIMULATOR_CAP};
use crate::rng::SeededRng;

/// Approximation-ratio thresholds tracked in exact mode.
pub const SUCCESS_THRESHOLDS: [f64; 3] = [0.9, 0.95, 1.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainerConfig {
    pub ansatz: AnsatzKind,
    pub hyper: Hyperparameters,
    /// Rotation layers; defaults to the fewest covering every qubit pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    /// Stop once this many cost evaluations have been drawn.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_samples: Option<u64>,
    /// Record exact gradients and success probabilities every step.
    #[serde(default)]
    pub record_exact: bool,
    #[serde(default = "default_cap")]
    pub simulator_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_SIMULATOR_CAP
}

impl TrainerConfig {
    pub fn new(ansatz: AnsatzKind, hyper: Hyperparameters) -> Self {
        Self { ansatz, hyper, layers: None, max_samples: None, record_exact: false, simulator_cap: DEFAULT_SIMULATOR_CAP }
    }

    pub fn algorithm_id(&self) -> String {
        let base = if is_vqe(self.hyper.tau) { "vqe" } else { "fvqe" };
        format!("{base}-{}", self.ansatz.name())
    }

    pub fn build_ansatz(&self, num_qubits: usize) -> Result<Ansatz> {
        let circuit = match self.layers {
            Some(l) => IqpCircuit::line(num_qubits, l)?,
            None => IqpCircuit::line_min_layers(num_qubits)?,
        };
        Ok(Ansatz::new(self.ansatz, circuit).with_simulator_cap(self.simulator_cap))
    }
}

/// Draws from one circuit of a step.
struct CircuitOutcome {
    /// Strict running-minimum improvements: (index within circuit, word, raw cost).
    improvements: Vec<(usize, u64, f64)>,
    gradient: f64,
}

/// Trains the ansatz from the uniform state, drawing `s` shots from the
/// current circuit and from each of the `M` shifted circuits per step, and
/// returns the best-so-far trace.
pub fn run_fvqe(objective: &Objective, config: &TrainerConfig, seed: u64, instance: &str) -> Result<RunTrace> {
    let hp = config.hyper;
    hp.validate()?;
    let n = objective.num_qubits();
    let ansatz = config.build_ansatz(n)?;
    let masks = ansatz.mask_words().to_vec();
    let m = masks.len();
    let s = hp.shots;
    let budget = config.max_samples.unwrap_or(u64::MAX);
    let vqe = is_vqe(hp.tau);

    let table = if n <= TABLE_CAP { Some(filter_table(objective, hp.tau)?) } else { None };
    if config.record_exact && table.is_none() {
        return Err(Error::SizeCap { what: "exact recording", got: n, cap: TABLE_CAP });
    }
    let fval = |w: u64| match &table {
        Some(t) => t[w as usize],
        None => filter(objective.rescaled_word(w), hp.tau).expect("bounds keep rescaled costs positive"),
    };
    let qualifies: Option<Vec<[bool; 3]>> = config.record_exact.then(|| {
        (0..1u64 << n)
            .map(|w| {
                let a = objective.ratio(objective.raw_word(w));
                SUCCESS_THRESHOLDS.map(|t| a >= t)
            })
            .collect()
    });

    let root = SeededRng::new(seed);
    let mut trace = RunTrace::new(config.algorithm_id(), instance, seed, n);
    if config.record_exact {
        trace.success_thresholds = SUCCESS_THRESHOLDS.to_vec();
    }
    let mut tracker = BestTracker::new();
    let mut theta = ansatz.initial_parameters();
    let mut consumed = 0u64;

    for step in 1..=hp.steps {
        let prep = ansatz.prepare(&theta)?;
        let outcomes: Vec<CircuitOutcome> = (0..=m)
            .into_par_iter()
            .map(|j| {
                let mut rng = root.split((step as u64 - 1) * (m as u64 + 1) + j as u64);
                let shifted = j.checked_sub(1);
                let xs = prep.sample(shifted, s, &mut rng);
                let mut best = f64::INFINITY;
                let mut improvements = Vec::new();
                for (i, &x) in xs.iter().enumerate() {
                    let c = objective.raw_word(x);
                    if c < best {
                        best = c;
                        improvements.push((i, x, c));
                    }
                }
                let gradient = shifted.map_or(0.0, |k| estimate_from_samples(&xs, masks[k], fval));
                CircuitOutcome { improvements, gradient }
            })
            .collect();

        for (j, out) in outcomes.iter().enumerate() {
            for &(i, x, c) in &out.improvements {
                let idx = consumed + (j * s + i) as u64 + 1;
                if idx <= budget {
                    tracker.observe(idx, x, c, |c| objective.ratio(c));
                }
            }
        }
        consumed += ((m + 1) * s) as u64;

        let mut g: Vec<f64> = outcomes[1..].iter().map(|o| o.gradient).collect();
        if vqe {
            // With f = c the shift difference points uphill in energy.
            g.iter_mut().for_each(|x| *x = -*x);
        }
        let grad_norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();

        let mut record = StepRecord {
            step,
            samples: consumed.min(budget),
            grad_norm,
            stalled: false,
            exact_gradient: None,
            success_probability: None,
        };
        if let (Some(f), Some(q)) = (&table, &qualifies) {
            let base = prep.probabilities(None)?;
            let pref = loss_prefactor(&base, f);
            let exact: Vec<(f64, [f64; 3])> = (0..m)
                .into_par_iter()
                .map(|k| -> Result<(f64, [f64; 3])> {
                    let g = exact_gradient_prepared(&prep, &masks, k, f)?;
                    let plus = prep.probabilities(Some(k))?;
                    Ok((pref * g, success_mass(&plus, q)))
                })
                .collect::<Result<_>>()?;
            let mut log_miss = success_mass(&base, q).map(|p| (1.0 - p).ln());
            for (_, p) in &exact {
                for t in 0..3 {
                    log_miss[t] += (1.0 - p[t]).ln();
                }
            }
            record.exact_gradient = Some(exact.iter().map(|e| e.0).collect());
            record.success_probability = Some(log_miss.iter().map(|l| 1.0 - (l / (m + 1) as f64).exp()).collect());
        }

        match update(&theta, &g, hp.eta) {
            Some(next) => theta = next,
            None => {
                log::info!("step {step}: zero gradient estimate, update skipped");
                record.stalled = true;
            }
        }
        trace.steps.push(record);
        if consumed >= budget {
            break;
        }
    }
    trace.total_samples = consumed.min(budget);
    tracker.finish(&mut trace);
    Ok(trace)
}

fn success_mass(p: &[f64], qualifies: &[[bool; 3]]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (px, q) in p.iter().zip(qualifies) {
        for t in 0..3 {
            if q[t] {
                out[t] += px;
            }
        }
    }
    out.map(|x| x.min(1.0))
}
