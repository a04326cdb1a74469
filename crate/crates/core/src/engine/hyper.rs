use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_STEPS: usize = 200;
pub const VQE_LEARNING_RATE: f64 = 0.35;

/// Size-dependent hyperparameter schedules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Hp1,
    Hp2,
    Hp3,
    Hp4,
    /// `tau = -1`, HP2 shots, `eta = 0.35`.
    Vqe,
}

impl Preset {
    pub fn hyperparameters(self, num_qubits: usize) -> Hyperparameters {
        let n = num_qubits as f64;
        let many = 25.0 * n - 100.0;
        let few = 2.5 * n - 10.0;
        let (shots, tau, eta) = match self {
            Preset::Hp1 => (many, 1.0 + 0.1 * n, 0.45 - 0.01 * n),
            Preset::Hp2 => (many, 2.5, 0.25),
            Preset::Hp3 => (few, (1.0 + 0.1 * n) / 5.0, (0.45 - 0.01 * n) / 1.5),
            Preset::Hp4 => (few, 0.25, 0.125),
            Preset::Vqe => (many, super::VQE_TAU, VQE_LEARNING_RATE),
        };
        Hyperparameters { shots: shot_count(shots), tau, eta, steps: DEFAULT_STEPS }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Hp1 => "hp1",
            Preset::Hp2 => "hp2",
            Preset::Hp3 => "hp3",
            Preset::Hp4 => "hp4",
            Preset::Vqe => "vqe",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hp1" => Ok(Preset::Hp1),
            "hp2" => Ok(Preset::Hp2),
            "hp3" => Ok(Preset::Hp3),
            "hp4" => Ok(Preset::Hp4),
            "vqe" => Ok(Preset::Vqe),
            other => Err(Error::Config(format!("unknown preset {other:?}"))),
        }
    }
}

/// Rounded half-up, at least one shot.
fn shot_count(x: f64) -> usize {
    (x + 0.5).floor().max(1.0) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    /// Shots per circuit.
    pub shots: usize,
    pub tau: f64,
    pub eta: f64,
    pub steps: usize,
}

impl Hyperparameters {
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 || self.steps == 0 {
            return Err(Error::Config("shots and steps must be positive".into()));
        }
        if !self.tau.is_finite() || !(self.tau > 0.0 || super::is_vqe(self.tau)) {
            return Err(Error::Config(format!("tau must be positive or -1, got {}", self.tau)));
        }
        if !(self.eta >= 0.0) || !self.eta.is_finite() {
            return Err(Error::Config(format!("learning rate must be non-negative, got {}", self.eta)));
        }
        Ok(())
    }
}

impl Default for Hyperparameters {
    /// HP2 without the size-dependent shot count filled in.
    fn default() -> Self {
        Hyperparameters { shots: 1, tau: 2.5, eta: 0.25, steps: DEFAULT_STEPS }
    }
}
