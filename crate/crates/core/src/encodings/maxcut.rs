//! Weighted MaxCut with the last vertex pinned to side 0.
//!
//! Pinning removes the global tag-swap symmetry, so an `n`-vertex graph needs
//! `n - 1` binary variables. Vertex `v < n - 1` is qubit `v`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxCutInstance {
    n: usize,
    edges: Vec<Edge>,
}

impl MaxCutInstance {
    /// Vertices are 0-based here; the JSON format is 1-based.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!("MaxCut needs at least 2 vertices, got {n}")));
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInstance(format!("edge ({}, {}) outside {n} vertices", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("self-loop on vertex {}", e.u)));
            }
            if !(e.w > 0.0 && e.w <= 1.0) {
                return Err(Error::InvalidInstance(format!("edge weight {} outside (0, 1]", e.w)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_qubits(&self) -> usize {
        self.n - 1
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Negated weight of the cut described by `x`.
    pub fn cost(&self, x: &BitString) -> Result<f64> {
        if x.len() != self.num_qubits() {
            return Err(Error::LengthMismatch { left: x.len(), right: self.num_qubits() });
        }
        Ok(self.cost_word(x.word()))
    }

    /// [`MaxCutInstance::cost`] on a packed word, no length check. The pinned
    /// vertex `n - 1` reads bit `n - 1`, which is always zero.
    #[inline]
    pub fn cost_word(&self, x: u64) -> f64 {
        let mut c = 0.0;
        for e in &self.edges {
            if ((x >> e.u) ^ (x >> e.v)) & 1 == 1 {
                c -= e.w;
            }
        }
        c
    }

    /// `(-total weight, 0)`: no cut exceeds all edges and the empty cut is 0.
    pub fn bounds(&self) -> Result<(f64, f64)> {
        if self.edges.is_empty() {
            return Err(Error::InvalidInstance("MaxCut bounds need at least one edge".into()));
        }
        Ok((-self.total_weight(), 0.0))
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
