//! Mapping the two-column CNOT pattern onto a device coupling graph without
//! SWAPs.
//!
//! The longest simple cycle carries CNOTs in a directed loop with colours
//! (first/second column) alternating, starting with the first column. Every
//! other qubit is hooked onto the structure with one CNOT pointing at its
//! anchor, in the column of the arrow that already enters the anchor.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iqp::circuit::{Cnot, CnotPattern};

pub const MAX_EXHAUSTIVE_NODES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityGraph {
    num_qubits: usize,
    couplings: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl ConnectivityGraph {
    /// Undirected couplings over qubits `0..num_qubits`; must be connected.
    pub fn new(num_qubits: usize, couplings: Vec<(usize, usize)>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::Config("empty connectivity graph".into()));
        }
        let mut adjacency = vec![Vec::new(); num_qubits];
        for &(a, b) in &couplings {
            if a >= num_qubits || b >= num_qubits || a == b {
                return Err(Error::Config(format!("invalid coupling ({a}, {b})")));
            }
            if !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        let g = Self { num_qubits, couplings, adjacency };
        if !g.is_connected() {
            return Err(Error::Disconnected("connectivity graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn line(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, (1..num_qubits).map(|q| (q - 1, q)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn couplings(&self) -> &[(usize, usize)] {
        &self.couplings
    }

    pub fn has_coupling(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.num_qubits];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Longest simple cycle (at least 3 nodes), traversed from its smallest
    /// node towards the smaller of that node's two cycle neighbours.
    pub fn longest_cycle(&self) -> Result<Option<Vec<usize>>> {
        self.check_size()?;
        let mut best: Vec<usize> = Vec::new();
        for start in 0..self.num_qubits {
            let mut path = vec![start];
            let mut on_path = vec![false; self.num_qubits];
            on_path[start] = true;
            self.cycle_dfs(start, &mut path, &mut on_path, &mut best);
            if best.len() == self.num_qubits {
                break;
            }
        }
        if best.len() < 3 {
            return Ok(None);
        }
        Ok(Some(canonical_cycle(best)))
    }

    // Only nodes above `start` may join, so each cycle is found from its
    // smallest node.
    fn cycle_dfs(&self, start: usize, path: &mut Vec<usize>, on_path: &mut [bool], best: &mut Vec<usize>) {
        let last = *path.last().expect("non-empty");
        for &next in &self.adjacency[last] {
            if next == start && path.len() >= 3 && path.len() > best.len() {
                *best = path.clone();
            }
            if next > start && !on_path[next] {
                on_path[next] = true;
                path.push(next);
                self.cycle_dfs(start, path, on_path, best);
                path.pop();
                on_path[next] = false;
            }
            if best.len() == self.num_qubits {
                return;
            }
        }
    }

    /// Longest simple path, oriented from its smaller endpoint.
    pub fn longest_path(&self) -> Result<Vec<usize>> {
        self.check_size()?;
        let mut best = vec![0];
        for start in 0..self.num_qubits {
            let mut path = vec![start];
            let mut on_path = vec![false; self.num_qubits];
            on_path[start] = true;
            self.path_dfs(&mut path, &mut on_path, &mut best);
        }
        if best.last() < best.first() {
            best.reverse();
        }
        Ok(best)
    }

    fn path_dfs(&self, path: &mut Vec<usize>, on_path: &mut [bool], best: &mut Vec<usize>) {
        if path.len() > best.len() {
            *best = path.clone();
        }
        let last = *path.last().expect("non-empty");
        for &next in &self.adjacency[last] {
            if best.len() == self.num_qubits {
                return;
            }
            if !on_path[next] {
                on_path[next] = true;
                path.push(next);
                self.path_dfs(path, on_path, best);
                path.pop();
                on_path[next] = false;
            }
        }
    }

    fn check_size(&self) -> Result<()> {
        if self.num_qubits > MAX_EXHAUSTIVE_NODES {
            return Err(Error::GraphTooLarge(self.num_qubits));
        }
        Ok(())
    }
}

fn canonical_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let len = cycle.len();
    let pos = (0..len).min_by_key(|&i| cycle[i]).expect("non-empty");
    let rotated: Vec<usize> = (0..len).map(|i| cycle[(pos + i) % len]).collect();
    if rotated[len - 1] < rotated[1] {
        std::iter::once(rotated[0]).chain(rotated[1..].iter().rev().copied()).collect()
    } else {
        rotated
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Column {
    First,
    Second,
}

impl Column {
    fn alternate(i: usize) -> Self {
        if i % 2 == 0 {
            Column::First
        } else {
            Column::Second
        }
    }

    fn other(self) -> Self {
        match self {
            Column::First => Column::Second,
            Column::Second => Column::First,
        }
    }
}

/// CNOT pattern for `graph` using only its couplings.
pub fn adapt_layout(graph: &ConnectivityGraph) -> Result<CnotPattern> {
    match graph.longest_cycle()? {
        Some(cycle) => layout_from_backbone(graph, &cycle, true),
        None => layout_from_backbone(graph, &graph.longest_path()?, false),
    }
}

/// Same as [`adapt_layout`] with a caller-chosen cycle (in traversal order),
/// for graphs too large for the exhaustive search.
pub fn adapt_layout_with_cycle(graph: &ConnectivityGraph, cycle: &[usize]) -> Result<CnotPattern> {
    if cycle.len() < 3 {
        return Err(Error::Config("a cycle needs at least 3 qubits".into()));
    }
    let mut seen = vec![false; graph.num_qubits()];
    for &q in cycle {
        if q >= graph.num_qubits() || std::mem::replace(&mut seen[q], true) {
            return Err(Error::Config(format!("invalid cycle {cycle:?}")));
        }
    }
    layout_from_backbone(graph, cycle, true)
}

fn layout_from_backbone(graph: &ConnectivityGraph, backbone: &[usize], closed: bool) -> Result<CnotPattern> {
    let n = graph.num_qubits();
    let mut entering: Vec<Option<Column>> = vec![None; n];
    let mut leaving: Vec<Option<Column>> = vec![None; n];
    let mut placed = vec![false; n];
    let mut pattern = CnotPattern { first: Vec::new(), second: Vec::new() };
    let push = |pattern: &mut CnotPattern, col: Column, c: usize, t: usize| match col {
        Column::First => pattern.first.push(Cnot::new(c, t)),
        Column::Second => pattern.second.push(Cnot::new(c, t)),
    };

    let arcs = if closed { backbone.len() } else { backbone.len().saturating_sub(1) };
    for i in 0..arcs {
        let (c, t) = (backbone[i], backbone[(i + 1) % backbone.len()]);
        if !graph.has_coupling(c, t) {
            return Err(Error::Config(format!("qubits {c} and {t} are not coupled")));
        }
        let col = Column::alternate(i);
        push(&mut pattern, col, c, t);
        leaving[c] = Some(col);
        entering[t] = Some(col);
    }
    let mut queue = VecDeque::new();
    for &q in backbone {
        placed[q] = true;
        queue.push_back(q);
    }
    while let Some(anchor) = queue.pop_front() {
        for &q in &graph.adjacency[anchor] {
            if placed[q] {
                continue;
            }
            let col = entering[anchor]
                .or_else(|| leaving[anchor].map(Column::other))
                .unwrap_or(Column::First);
            push(&mut pattern, col, q, anchor);
            leaving[q] = Some(col);
            placed[q] = true;
            queue.push_back(q);
        }
    }
    Ok(pattern)
}
