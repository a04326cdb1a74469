//! Layered hardware-efficient IQP circuits.
//!
//! The gate list is `layers` columns of single-qubit X rotations with a block
//! of two CNOT columns between consecutive rotation layers. Pushing every
//! rotation to the end of the circuit (`CNOT_ij X_i = X_i X_j CNOT_ij`,
//! `CNOT_ij X_j = X_j CNOT_ij`) turns it into a multi-qubit X rotation on a
//! subset `Q_k`, and the CNOTs then act trivially on `|0...0>`.

use std::collections::HashSet;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

impl Cnot {
    pub fn new(control: usize, target: usize) -> Self {
        Self { control, target }
    }
}

/// Two CNOT columns applied, in order, between rotation layers. CNOTs inside
/// a column are applied in listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnotPattern {
    pub first: Vec<Cnot>,
    pub second: Vec<Cnot>,
}

impl CnotPattern {
    /// Nearest-neighbour chain: `(0->1), (2->3), ...` then `(1->2), (3->4), ...`.
    pub fn chain(num_qubits: usize) -> Self {
        let pairs = |start: usize| {
            (start..num_qubits.saturating_sub(1))
                .step_by(2)
                .map(|q| Cnot::new(q, q + 1))
                .collect::<Vec<_>>()
        };
        Self { first: pairs(0), second: pairs(1) }
    }

    pub fn num_qubits_touched(&self) -> usize {
        self.first
            .iter()
            .chain(&self.second)
            .flat_map(|c| [c.control, c.target])
            .max()
            .map_or(0, |q| q + 1)
    }

    /// Conjugates an X-string mask through both columns.
    #[inline]
    pub fn propagate(&self, mut mask: u64) -> u64 {
        for c in self.first.iter().chain(&self.second) {
            if (mask >> c.control) & 1 == 1 {
                mask ^= 1 << c.target;
            }
        }
        mask
    }
}

/// One surviving multi-qubit rotation `exp(-i theta X_Q / 2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub mask: BitString,
    pub theta: f64,
    /// Rotation layer the gate came from.
    pub layer: usize,
    /// Qubit the single-qubit rotation sat on before propagation.
    pub qubit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IqpCircuit {
    num_qubits: usize,
    layers: usize,
    pattern: CnotPattern,
    generators: Vec<Generator>,
}

/// Entry of the JSON debug dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDump {
    pub mask: String,
    pub theta: f64,
    pub layer: usize,
}

/// Propagated mask of every rotation, layer-major, before deduplication.
pub fn raw_masks(num_qubits: usize, layers: usize, pattern: &CnotPattern) -> Vec<u64> {
    let mut out = Vec::with_capacity(num_qubits * layers);
    for l in 0..layers {
        for q in 0..num_qubits {
            let mut m = 1u64 << q;
            for _ in l + 1..layers {
                m = pattern.propagate(m);
            }
            out.push(m);
        }
    }
    out
}

impl IqpCircuit {
    /// `layers` rotation layers on a 1-D chain.
    pub fn line(num_qubits: usize, layers: usize) -> Result<Self> {
        if num_qubits < 2 || layers < 1 {
            return Err(Error::Config(format!(
                "line circuit needs N >= 2 and at least one layer, got N = {num_qubits}, layers = {layers}"
            )));
        }
        Self::with_pattern(num_qubits, layers, CnotPattern::chain(num_qubits))
    }

    /// Line circuit with the fewest layers that put every qubit pair in a
    /// common generator.
    pub fn line_min_layers(num_qubits: usize) -> Result<Self> {
        let layers = minimal_layers(num_qubits, &CnotPattern::chain(num_qubits))?;
        Self::line(num_qubits, layers)
    }

    pub fn with_pattern(num_qubits: usize, layers: usize, pattern: CnotPattern) -> Result<Self> {
        if num_qubits == 0 || num_qubits > 63 {
            return Err(Error::Config(format!("unsupported qubit count {num_qubits}")));
        }
        if layers == 0 {
            return Err(Error::Config("circuit needs at least one layer".into()));
        }
        if pattern.num_qubits_touched() > num_qubits {
            return Err(Error::Config("CNOT pattern addresses qubits outside the register".into()));
        }
        for c in pattern.first.iter().chain(&pattern.second) {
            if c.control == c.target {
                return Err(Error::Config(format!("CNOT with control = target = {}", c.control)));
            }
        }
        let masks = raw_masks(num_qubits, layers, &pattern);
        // Keep the last occurrence of each mask; earlier copies are deleted.
        let mut seen = HashSet::new();
        let mut keep = vec![false; masks.len()];
        for (i, &m) in masks.iter().enumerate().rev() {
            keep[i] = seen.insert(m);
        }
        let generators = masks
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep[i])
            .map(|(i, &m)| Generator {
                mask: BitString::from_word(m, num_qubits).expect("mask fits"),
                theta: 0.0,
                layer: i / num_qubits,
                qubit: i % num_qubits,
            })
            .collect();
        Ok(Self { num_qubits, layers, pattern, generators })
    }

    /// Circuit from explicit generator masks (all angles zero), assigned to
    /// a single layer. Useful for hand-built IQP circuits.
    pub fn from_masks(num_qubits: usize, masks: &[BitString]) -> Result<Self> {
        let mut generators = Vec::with_capacity(masks.len());
        for (k, m) in masks.iter().enumerate() {
            if m.len() != num_qubits {
                return Err(Error::LengthMismatch { left: m.len(), right: num_qubits });
            }
            if m.is_zero() {
                return Err(Error::Config(format!("generator {k} has an empty qubit subset")));
            }
            generators.push(Generator { mask: *m, theta: 0.0, layer: 0, qubit: m.ones()[0] });
        }
        Ok(Self { num_qubits, layers: 1, pattern: CnotPattern { first: vec![], second: vec![] }, generators })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn pattern(&self) -> &CnotPattern {
        &self.pattern
    }

    /// `M`, the number of trainable angles.
    pub fn num_parameters(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn masks(&self) -> Vec<BitString> {
        self.generators.iter().map(|g| g.mask).collect()
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.generators.iter().map(|g| g.theta).collect()
    }

    pub fn set_thetas(&mut self, thetas: &[f64]) -> Result<()> {
        if thetas.len() != self.generators.len() {
            return Err(Error::LengthMismatch { left: thetas.len(), right: self.generators.len() });
        }
        for (g, &t) in self.generators.iter_mut().zip(thetas) {
            g.theta = t;
        }
        Ok(())
    }

    pub fn with_thetas(mut self, thetas: &[f64]) -> Result<Self> {
        self.set_thetas(thetas)?;
        Ok(self)
    }

    /// Zero on every layer but the last, `pi/2` on the last: the uniform
    /// superposition.
    pub fn initial_parameters(&self) -> Vec<f64> {
        self.generators
            .iter()
            .map(|g| if g.layer + 1 == self.layers { FRAC_PI_2 } else { 0.0 })
            .collect()
    }

    /// Rotation angle at every `(layer, qubit)` slot of the layered gate
    /// list; deleted duplicates read as zero.
    pub fn angle_grid(&self) -> Vec<Vec<f64>> {
        let mut grid = vec![vec![0.0; self.num_qubits]; self.layers];
        for g in &self.generators {
            grid[g.layer][g.qubit] = g.theta;
        }
        grid
    }

    pub fn covers_all_pairs(&self) -> bool {
        covers_all_pairs(self.num_qubits, self.generators.iter().map(|g| g.mask.word()))
    }

    pub fn dump(&self) -> Vec<GeneratorDump> {
        self.generators
            .iter()
            .map(|g| GeneratorDump { mask: g.mask.to_string(), theta: g.theta, layer: g.layer })
            .collect()
    }

    pub fn dump_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.dump())?)
    }
}

pub fn covers_all_pairs(num_qubits: usize, masks: impl IntoIterator<Item = u64>) -> bool {
    let mut covered = vec![0u64; num_qubits];
    for m in masks {
        for q in 0..num_qubits {
            if (m >> q) & 1 == 1 {
                covered[q] |= m;
            }
        }
    }
    (0..num_qubits).all(|q| covered[q] | (1 << q) == low_mask(num_qubits))
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Fewest layers achieving pair coverage under `pattern`.
pub fn minimal_layers(num_qubits: usize, pattern: &CnotPattern) -> Result<usize> {
    // Coverage is monotone in the layer count: layer l of an (L+1)-layer
    // circuit reproduces layer l-1 of the L-layer one.
    for layers in 1..=4 * num_qubits + 4 {
        if covers_all_pairs(num_qubits, raw_masks(num_qubits, layers, pattern)) {
            return Ok(layers);
        }
    }
    Err(Error::Config(format!("CNOT pattern never covers all pairs of {num_qubits} qubits")))
}
