//! Problem encodings: cost functions over bit strings.

pub mod atsp;
pub mod branching;
pub mod lehmer;
pub mod maxcut;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use atsp::{AtspInstance, Route};
pub use lehmer::{bits_for_permutations, factorial, lehmer_decode, lehmer_encode};
pub use maxcut::{Edge, MaxCutInstance};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A problem whose candidate solutions are bit strings.
#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    MaxCut(MaxCutInstance),
    Atsp(AtspInstance),
}

impl Problem {
    pub fn num_qubits(&self) -> usize {
        match self {
            Problem::MaxCut(g) => g.num_qubits(),
            Problem::Atsp(a) => a.num_qubits(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::MaxCut(_) => "maxcut",
            Problem::Atsp(_) => "atsp",
        }
    }

    pub fn cost(&self, x: &BitString) -> Result<f64> {
        match self {
            Problem::MaxCut(g) => g.cost(x),
            Problem::Atsp(a) => a.cost(x),
        }
    }

    /// Cost of the packed word, no length check.
    #[inline]
    pub fn cost_word(&self, x: u64) -> f64 {
        match self {
            Problem::MaxCut(g) => g.cost_word(x),
            Problem::Atsp(a) => a.cost_word(x),
        }
    }

    /// `(lower, upper)` with `lower <= min cost` and `upper >= max cost`.
    pub fn bounds(&self) -> Result<(f64, f64)> {
        match self {
            Problem::MaxCut(g) => g.bounds(),
            Problem::Atsp(a) => a.bounds(),
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        match self {
            Problem::MaxCut(g) => InstanceFile::MaxCut {
                n: g.n(),
                edges: g.edges().iter().map(|e| (e.u + 1, e.v + 1, e.w)).collect(),
            },
            Problem::Atsp(a) => InstanceFile::Atsp { n: a.n(), w: a.rows() },
        }
    }

    pub fn from_file(file: InstanceFile) -> Result<Self> {
        match file {
            InstanceFile::MaxCut { n, edges } => {
                let edges = edges
                    .into_iter()
                    .map(|(u, v, w)| {
                        if u == 0 || v == 0 {
                            return Err(Error::InvalidInstance("vertex labels are 1-based".into()));
                        }
                        Ok(Edge { u: u - 1, v: v - 1, w })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Problem::MaxCut(MaxCutInstance::new(n, edges)?))
            }
            InstanceFile::Atsp { n, w } => {
                if w.len() != n {
                    return Err(Error::InvalidInstance(format!("W has {} rows, n = {n}", w.len())));
                }
                Ok(Problem::Atsp(AtspInstance::from_matrix(&w)?))
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// On-disk instance format. Vertex and city labels are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InstanceFile {
    #[serde(rename = "maxcut")]
    MaxCut { n: usize, edges: Vec<(usize, usize, f64)> },
    Atsp {
        n: usize,
        #[serde(rename = "W")]
        w: Vec<Vec<f64>>,
    },
}

impl From<MaxCutInstance> for Problem {
    fn from(g: MaxCutInstance) -> Self {
        Problem::MaxCut(g)
    }
}

impl From<AtspInstance> for Problem {
    fn from(a: AtspInstance) -> Self {
        Problem::Atsp(a)
    }
}
