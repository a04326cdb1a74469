//! Random instances and exhaustive solution spectra.

use std::path::Path;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{Extremes, BRUTE_FORCE_CAP};
use crate::encodings::{factorial, AtspInstance, Edge, MaxCutInstance};
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::Problem;

/// Pairing-model attempts before giving up.
const MAX_PAIRING_ATTEMPTS: usize = 100_000;

/// Uniformly random connected 3-regular graph on `n` vertices with i.i.d.
/// weights on `(0, 1]`.
pub fn generate_maxcut(n: usize, seed: u64) -> Result<MaxCutInstance> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Config(format!("3-regular graphs need an even n >= 4, got {n}")));
    }
    let mut rng = SeededRng::new(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut pairs: Vec<(usize, usize)> =
            points.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if pairs.iter().any(|&(u, v)| u == v) {
            continue;
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let edges = pairs.into_iter().map(|(u, v)| Edge { u, v, w: rng.uniform_open_closed() }).collect();
        let g = MaxCutInstance::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Config(format!("no simple connected pairing found for n = {n}")))
}

/// Distance matrix with off-diagonal entries i.i.d. uniform on `(0, 1]`.
pub fn generate_atsp(n: usize, seed: u64) -> Result<AtspInstance> {
    if n < 3 {
        return Err(Error::Config(format!("ATSP needs at least 3 cities, got {n}")));
    }
    let mut rng = SeededRng::new(seed);
    let w = (0..n * n).map(|i| if i / n == i % n { 0.0 } else { rng.uniform_open_closed() }).collect();
    AtspInstance::new(n, w)
}

/// Generation record written next to each instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub seed: u64,
    pub n: usize,
    pub num_qubits: usize,
    pub c_min: f64,
    pub c_max: f64,
    pub optima: u64,
    pub generator: String,
    pub weights: String,
    /// Whether ATSP weights satisfy the triangle inequality by construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<bool>,
}

impl InstanceMeta {
    pub fn for_problem(problem: &Problem, seed: u64, extremes: &Extremes) -> Self {
        let (n, generator, metric) = match problem {
            Problem::MaxCut(g) => (g.n(), "3-regular pairing model", None),
            Problem::Atsp(a) => (a.n(), "complete digraph", Some(false)),
        };
        Self {
            seed,
            n,
            num_qubits: problem.num_qubits(),
            c_min: extremes.c_min,
            c_max: extremes.c_max,
            optima: extremes.optima,
            generator: generator.into(),
            weights: "uniform (0,1]".into(),
            metric,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub num_qubits: usize,
    pub thresholds: Vec<f64>,
    /// Fraction of all `2^N` strings with ratio at least each threshold.
    pub fractions: Vec<f64>,
    /// Share of a single optimal string: `2^-N` for MaxCut, `1/(n-1)!` for
    /// ATSP.
    pub reference: f64,
    pub extremes: Extremes,
}

/// `0, 0.01, ..., 1`.
pub fn default_thresholds() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

/// Exact fractions by a streaming sweep over every string.
pub fn spectrum(problem: &Problem, thresholds: &[f64]) -> Result<SpectrumReport> {
    let n = problem.num_qubits();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::SizeCap { what: "spectrum", got: n, cap: BRUTE_FORCE_CAP });
    }
    let e = Extremes::exhaustive(problem)?;
    if !(e.c_min < e.c_max) {
        return Err(Error::DegenerateRange(e.c_min));
    }
    let total = 1u64 << n;
    let chunk = 1u64 << 12;
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; thresholds.len()];
            for w in c * chunk..((c + 1) * chunk).min(total) {
                let a = (e.c_max - problem.cost_word(w)) / (e.c_max - e.c_min);
                for (k, &t) in thresholds.iter().enumerate() {
                    if a >= t {
                        counts[k] += 1;
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; thresholds.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let reference = match problem {
        Problem::MaxCut(_) => 1.0 / total as f64,
        Problem::Atsp(a) => 1.0 / factorial(a.n() - 1).expect("city count bounded") as f64,
    };
    Ok(SpectrumReport {
        num_qubits: n,
        thresholds: thresholds.to_vec(),
        fractions: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        reference,
        extremes: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::bits_for_permutations;
    use crate::BitString;

    #[test]
    fn generated_graphs_are_cubic_and_connected() {
        for n in (4..=14).step_by(2) {
            for seed in 0..1000 {
                let g = generate_maxcut(n, seed).unwrap();
                assert!((0..n).all(|v| g.degree(v) == 3), "n={n} seed={seed}");
                assert!(g.is_connected());
                assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));
            }
        }
    }

    #[test]
    fn four_vertices_give_k4() {
        let g = generate_maxcut(4, 5).unwrap();
        let mut pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn generation_is_seeded() {
        assert_eq!(generate_maxcut(10, 3).unwrap(), generate_maxcut(10, 3).unwrap());
        assert_ne!(generate_maxcut(10, 3).unwrap(), generate_maxcut(10, 4).unwrap());
        assert_eq!(generate_atsp(6, 1).unwrap(), generate_atsp(6, 1).unwrap());
        assert!(generate_maxcut(7, 0).is_err());
        assert!(generate_maxcut(2, 0).is_err());
    }

    #[test]
    fn atsp_is_asymmetric() {
        let a = generate_atsp(7, 2).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                if i != j {
                    assert_ne!(a.weight(i, j), a.weight(j, i));
                    assert!(a.weight(i, j) > 0.0 && a.weight(i, j) <= 1.0);
                }
            }
        }
    }

    #[test]
    fn atsp_qubit_grid() {
        let sizes: Vec<usize> = (8..=13).map(|n| bits_for_permutations(n - 1).unwrap()).collect();
        assert_eq!(sizes, vec![13, 16, 19, 22, 26, 29]);
        assert_eq!(generate_atsp(8, 0).unwrap().num_qubits(), 13);
    }

    #[test]
    fn spectrum_properties() {
        for seed in 0..5 {
            let p = Problem::MaxCut(generate_maxcut(10, seed).unwrap());
            let r = spectrum(&p, &default_thresholds()).unwrap();
            assert_eq!(r.fractions[0], 1.0);
            assert!(r.fractions.windows(2).all(|w| w[0] >= w[1]));
            let at_one = *r.fractions.last().unwrap();
            assert_eq!(at_one, r.extremes.optima as f64 / 512.0);
            assert!(at_one >= r.reference);
        }
    }

    #[test]
    fn atsp_spectrum_counts_doubled_strings() {
        let a = generate_atsp(5, 9).unwrap();
        let p = Problem::Atsp(a.clone());
        let r = spectrum(&p, &[0.0, 1.0]).unwrap();
        let m = factorial(4).unwrap();
        let mut optimal_strings = 0u64;
        for w in 0..32u64 {
            if a.cost(&BitString::from_word(w, 5).unwrap()).unwrap() == r.extremes.c_min {
                optimal_strings += 1;
            }
        }
        let optimal_index = |i: u64| a.cost(&BitString::from_binary_index(i, 5).unwrap()).unwrap() == r.extremes.c_min;
        let routes = (0..m).filter(|&i| optimal_index(i)).count() as u64;
        let doubled = (0..m).filter(|&i| optimal_index(i) && i + m < 32).count() as u64;
        assert_eq!(optimal_strings, routes + doubled);
        assert_eq!(r.fractions[1], optimal_strings as f64 / 32.0);
        assert!(r.fractions[1] >= r.reference * 24.0 / 32.0);
    }
}
