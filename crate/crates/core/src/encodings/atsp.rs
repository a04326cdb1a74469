//! Asymmetric TSP through a binary -> Lehmer -> route decoder.
//!
//! A bit string is read as an integer (qubit 0 most significant), the integer
//! ranks a permutation of the first `n - 1` cities and the last city closes
//! the route. No penalty terms are needed: every string is a feasible route.

use crate::bits::BitString;
use crate::encodings::branching::{max_branching_any_root, min_branching_any_root};
use crate::encodings::lehmer::{bits_for_permutations, factorial, lehmer_decode, lehmer_encode};
use crate::error::{Error, Result};

/// Largest city count whose `(n-1)!` still fits the 64-bit index.
pub const MAX_CITIES: usize = 21;

#[derive(Clone, Debug, PartialEq)]
pub struct AtspInstance {
    n: usize,
    weights: Vec<f64>,
    num_qubits: usize,
    routes: u64,
}

/// City order with the last city fixed in the final position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Route(Vec<usize>);

impl Route {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidInstance(format!("{order:?} is not a permutation")));
            }
        }
        if order.last() != Some(&(n - 1)) {
            return Err(Error::InvalidInstance("route must end at the last city".into()));
        }
        Ok(Self(order))
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    /// Swap positions `i` and `i + 1`, both within the free prefix.
    pub fn swap_adjacent(&mut self, i: usize) {
        assert!(i + 2 < self.0.len(), "adjacent swap must leave the last city in place");
        self.0.swap(i, i + 1);
    }
}

impl AtspInstance {
    /// `weights` is row-major `n x n`: `weights[i * n + j]` is the cost of
    /// travelling from city `i` to city `j`.
    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInstance(format!("ATSP needs at least 3 cities, got {n}")));
        }
        if n > MAX_CITIES {
            return Err(Error::InvalidInstance(format!("{n} cities exceed the {MAX_CITIES}-city limit")));
        }
        if weights.len() != n * n {
            return Err(Error::InvalidInstance(format!("expected {} weights, got {}", n * n, weights.len())));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if i == j && w != 0.0 {
                    return Err(Error::InvalidInstance(format!("diagonal entry ({i},{i}) must be zero")));
                }
                if i != j && !(w > 0.0) {
                    return Err(Error::InvalidInstance(format!("entry ({i},{j}) = {w} must be positive")));
                }
            }
        }
        Ok(Self {
            n,
            weights,
            num_qubits: bits_for_permutations(n - 1).expect("bounded by MAX_CITIES"),
            routes: factorial(n - 1).expect("bounded by MAX_CITIES"),
        })
    }

    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInstance("distance matrix must be square".into()));
        }
        Self::new(n, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.weights[from * self.n + to]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.weights.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// `ceil(log2((n-1)!))`.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// `(n-1)!`, the number of distinct routes.
    pub fn num_routes(&self) -> u64 {
        self.routes
    }

    pub fn decode(&self, x: &BitString) -> Result<Route> {
        if x.len() != self.num_qubits {
            return Err(Error::LengthMismatch { left: x.len(), right: self.num_qubits });
        }
        Ok(self.decode_index(x.to_binary_index()))
    }

    fn decode_index(&self, index: u64) -> Route {
        let cities: Vec<usize> = (0..self.n - 1).collect();
        let mut order = lehmer_decode(index, &cities).expect("index fits the register");
        order.push(self.n - 1);
        Route(order)
    }

    /// Canonical bit string of a route: the Lehmer rank in binary, always in
    /// `[0, (n-1)!)`.
    pub fn encode(&self, route: &Route) -> Result<BitString> {
        if route.0.len() != self.n {
            return Err(Error::LengthMismatch { left: route.0.len(), right: self.n });
        }
        let index = lehmer_encode(&route.0[..self.n - 1])?;
        BitString::from_binary_index(index, self.num_qubits)
    }

    /// Closed tour length `W[last, first] + sum W[r_i, r_{i+1}]`.
    pub fn route_cost(&self, route: &Route) -> f64 {
        let r = &route.0;
        let closing = self.weight(r[r.len() - 1], r[0]);
        r.windows(2).fold(closing, |acc, w| acc + self.weight(w[0], w[1]))
    }

    pub fn cost(&self, x: &BitString) -> Result<f64> {
        Ok(self.route_cost(&self.decode(x)?))
    }

    /// [`AtspInstance::cost`] on a packed word, no length check.
    pub fn cost_word(&self, word: u64) -> f64 {
        let x = BitString::from_word(word, self.num_qubits).expect("word fits the register");
        self.route_cost(&self.decode_index(x.to_binary_index()))
    }

    /// Lower bound: minimum spanning arborescence (a tour minus one arc is a
    /// Hamiltonian path, itself an arborescence). Upper bound: maximum
    /// arborescence plus the heaviest arc.
    pub fn bounds(&self) -> Result<(f64, f64)> {
        if self.weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Disconnected("distance matrix has non-finite entries".into()));
        }
        let n = self.n;
        let edges: Vec<(usize, usize, f64)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, self.weight(u, v)))
            .collect();
        let lower = min_branching_any_root(n, &edges)
            .ok_or_else(|| Error::Disconnected("no spanning arborescence".into()))?;
        let max_tree = max_branching_any_root(n, &edges)
            .ok_or_else(|| Error::Disconnected("no spanning arborescence".into()))?;
        let max_edge = edges.iter().map(|e| e.2).fold(f64::NEG_INFINITY, f64::max);
        Ok((lower, max_tree + max_edge))
    }
}
