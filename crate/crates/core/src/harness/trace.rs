//! Per-run records shared by every algorithm.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    /// Cost evaluations consumed when the improvement was drawn (1-based).
    pub samples: u64,
    pub best_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub x: BitString,
    pub cost: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    /// Samples consumed at the end of this step.
    pub samples: u64,
    /// Euclidean norm of the estimated gradient.
    pub grad_norm: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub stalled: bool,
    /// `dL/dtheta_k` from exact distributions, when recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_gradient: Option<Vec<f64>>,
    /// Per-sample probability, averaged over the step's circuits, of
    /// drawing a string at or above each success threshold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: String,
    pub instance: String,
    pub seed: u64,
    pub num_qubits: usize,
    pub total_samples: u64,
    pub points: Vec<TracePoint>,
    pub best: Option<BestRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub success_thresholds: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepRecord>,
}

impl RunTrace {
    pub fn new(algorithm: impl Into<String>, instance: impl Into<String>, seed: u64, num_qubits: usize) -> Self {
        Self {
            algorithm: algorithm.into(),
            instance: instance.into(),
            seed,
            num_qubits,
            total_samples: 0,
            points: Vec::new(),
            best: None,
            success_thresholds: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn best_ratio(&self) -> Option<f64> {
        self.points.last().map(|p| p.best_ratio)
    }

    /// Samples needed before the best ratio first reached `threshold`.
    pub fn first_reaching(&self, threshold: f64) -> Option<u64> {
        self.points.iter().find(|p| p.best_ratio >= threshold).map(|p| p.samples)
    }

    /// Best ratio after `samples` evaluations (`None` before the first).
    pub fn ratio_at(&self, samples: u64) -> Option<f64> {
        let i = self.points.partition_point(|p| p.samples <= samples);
        (i > 0).then(|| self.points[i - 1].best_ratio)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json()?)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Running minimum over drawn candidates, emitting a trace point on every
/// strict improvement.
#[derive(Clone, Debug, Default)]
pub struct BestTracker {
    best_cost: Option<f64>,
    best_word: u64,
    points: Vec<TracePoint>,
}

impl BestTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true when `cost` improves on everything seen so far.
    #[inline]
    pub fn observe(&mut self, samples: u64, word: u64, cost: f64, ratio: impl FnOnce(f64) -> f64) -> bool {
        if self.best_cost.is_some_and(|b| cost >= b) {
            return false;
        }
        self.best_cost = Some(cost);
        self.best_word = word;
        self.points.push(TracePoint { samples, best_ratio: ratio(cost) });
        true
    }

    pub fn best_cost(&self) -> Option<f64> {
        self.best_cost
    }

    pub fn finish(self, trace: &mut RunTrace) {
        trace.points = self.points;
        trace.best = self.best_cost.map(|cost| BestRecord {
            x: BitString::from_word(self.best_word, trace.num_qubits).expect("word fits register"),
            cost,
            ratio: trace.points.last().map_or(0.0, |p| p.best_ratio),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_records_strict_improvements() {
        let mut t = BestTracker::new();
        let ratio = |c: f64| -c / 2.0;
        assert!(t.observe(1, 0, -0.5, ratio));
        assert!(!t.observe(2, 1, -0.5, ratio));
        assert!(!t.observe(3, 1, 0.0, ratio));
        assert!(t.observe(4, 3, -2.0, ratio));
        let mut trace = RunTrace::new("x", "i", 0, 2);
        t.finish(&mut trace);
        assert_eq!(trace.points, vec![TracePoint { samples: 1, best_ratio: 0.25 }, TracePoint { samples: 4, best_ratio: 1.0 }]);
        assert_eq!(trace.best.as_ref().unwrap().x.to_string(), "11");
        assert_eq!(trace.first_reaching(0.5), Some(4));
        assert_eq!(trace.ratio_at(3), Some(0.25));
        assert_eq!(trace.ratio_at(0), None);
    }

    #[test]
    fn json_round_trip() {
        let mut trace = RunTrace::new("bfs", "g1", 7, 3);
        trace.points.push(TracePoint { samples: 2, best_ratio: 0.1 + 0.2 });
        trace.steps.push(StepRecord {
            step: 1,
            samples: 10,
            grad_norm: 0.5,
            stalled: false,
            exact_gradient: Some(vec![1e-300, -2.5]),
            success_probability: None,
        });
        let s = trace.to_json().unwrap();
        assert_eq!(RunTrace::from_json(&s).unwrap(), trace);
        assert!(!s.contains("stalled"));
    }
}
