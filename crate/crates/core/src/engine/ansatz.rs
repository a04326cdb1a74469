use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::classical::{exact_distribution_words, flip_probability, sample_words};
use crate::error::{Error, Result};
use crate::iqp::{state_for, IqpCircuit, Sampler, StateVector, DEFAULT_SIMULATOR_CAP};
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzKind {
    Iqp,
    Classical,
}

impl AnsatzKind {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::Iqp => "iqp",
            AnsatzKind::Classical => "classical",
        }
    }
}

impl std::str::FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "iqp" => Ok(AnsatzKind::Iqp),
            "classical" => Ok(AnsatzKind::Classical),
            other => Err(Error::Config(format!("unknown ansatz {other:?}"))),
        }
    }
}

/// Generator subsets plus the rule that turns angles into a distribution.
#[derive(Clone, Debug)]
pub struct Ansatz {
    kind: AnsatzKind,
    circuit: IqpCircuit,
    masks: Vec<u64>,
    cap: usize,
}

impl Ansatz {
    pub fn new(kind: AnsatzKind, circuit: IqpCircuit) -> Self {
        let masks = circuit.generators().iter().map(|g| g.mask.word()).collect();
        Self { kind, circuit, masks, cap: DEFAULT_SIMULATOR_CAP }
    }

    pub fn with_simulator_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn kind(&self) -> AnsatzKind {
        self.kind
    }

    pub fn circuit(&self) -> &IqpCircuit {
        &self.circuit
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn num_parameters(&self) -> usize {
        self.masks.len()
    }

    pub fn mask_words(&self) -> &[u64] {
        &self.masks
    }

    pub fn initial_parameters(&self) -> Vec<f64> {
        self.circuit.initial_parameters()
    }

    /// Per-step precomputation at angles `thetas`.
    pub fn prepare(&self, thetas: &[f64]) -> Result<Prepared<'_>> {
        if thetas.len() != self.masks.len() {
            return Err(Error::LengthMismatch { left: thetas.len(), right: self.masks.len() });
        }
        let n = self.num_qubits();
        let inner = match self.kind {
            AnsatzKind::Iqp => {
                let masks = self.circuit.masks();
                Inner::Iqp(state_for(&masks, thetas, n, self.cap)?)
            }
            AnsatzKind::Classical => {
                if n > self.cap {
                    return Err(Error::SizeCap { what: "classical ansatz", got: n, cap: self.cap });
                }
                Inner::Classical
            }
        };
        Ok(Prepared { ansatz: self, thetas: thetas.to_vec(), inner })
    }

    pub fn distribution(&self, thetas: &[f64]) -> Result<Vec<f64>> {
        self.prepare(thetas)?.probabilities(None)
    }
}

enum Inner {
    Iqp(StateVector),
    Classical,
}

/// An ansatz fixed at one parameter vector, able to sample or tabulate the
/// unshifted circuit and every `+pi/2`-shifted one.
pub struct Prepared<'a> {
    ansatz: &'a Ansatz,
    thetas: Vec<f64>,
    inner: Inner,
}

impl Prepared<'_> {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    fn channels(&self, shifted: Option<usize>) -> Vec<(u64, f64)> {
        self.ansatz
            .masks
            .iter()
            .zip(&self.thetas)
            .enumerate()
            .map(|(j, (&m, &t))| (m, flip_probability(if Some(j) == shifted { t + FRAC_PI_2 } else { t })))
            .collect()
    }

    /// Exact distribution of the circuit, shifted by `+pi/2` on parameter
    /// `shifted` if given.
    pub fn probabilities(&self, shifted: Option<usize>) -> Result<Vec<f64>> {
        match &self.inner {
            Inner::Iqp(state) => Ok(match shifted {
                None => state.probabilities(),
                Some(k) => state.rotated_probabilities(self.ansatz.masks[k], FRAC_PI_2),
            }),
            Inner::Classical => exact_distribution_words(self.ansatz.num_qubits(), &self.channels(shifted)),
        }
    }

    /// `shots` packed draws from the (optionally shifted) circuit.
    pub fn sample(&self, shifted: Option<usize>, shots: usize, rng: &mut SeededRng) -> Vec<u64> {
        match &self.inner {
            Inner::Iqp(_) => {
                let p = self.probabilities(shifted).expect("state already simulated");
                let sampler = Sampler::new(&p);
                (0..shots).map(|_| sampler.draw_word(rng)).collect()
            }
            Inner::Classical => sample_words(&self.channels(shifted), shots, rng),
        }
    }
}
