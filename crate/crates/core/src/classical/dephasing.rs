//! Gate-level density-matrix oracle for the fully dephased IQP circuit.
//!
//! Only meant for tiny registers: the whole `2^N x 2^N` matrix is kept.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::iqp::{Cnot, IqpCircuit};

pub const DENSITY_CAP: usize = 6;

struct Density {
    dim: usize,
    rho: Vec<Complex64>,
}

impl Density {
    fn ground(n: usize) -> Self {
        let dim = 1 << n;
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        rho[0] = Complex64::new(1.0, 0.0);
        Self { dim, rho }
    }

    /// `rho <- U rho U^dagger` with `U = cos(theta/2) I - i sin(theta/2) X_q`.
    fn rx(&mut self, q: usize, theta: f64) {
        let (s, c) = (theta / 2.0).sin_cos();
        let u = [[Complex64::new(c, 0.0), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), Complex64::new(c, 0.0)]];
        let bit = 1 << q;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for x in 0..d {
            for y in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                // (U rho U^dag)_{xy} = sum_{a,b} U_{x a} rho_{a b} conj(U_{y b})
                for (ia, a) in [x & !bit, x | bit].into_iter().enumerate() {
                    let ux = u[(x & bit != 0) as usize][ia];
                    for (ib, b) in [y & !bit, y | bit].into_iter().enumerate() {
                        let uy = u[(y & bit != 0) as usize][ib].conj();
                        acc += ux * self.rho[a * d + b] * uy;
                    }
                }
                out[x * d + y] = acc;
            }
        }
        self.rho = out;
    }

    /// `rho <- rho/2 + Z_q rho Z_q / 2`: kills coherences across bit `q`.
    fn dephase(&mut self, q: usize) {
        let bit = 1 << q;
        for x in 0..self.dim {
            for y in 0..self.dim {
                if (x ^ y) & bit != 0 {
                    self.rho[x * self.dim + y] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }

    fn cnot(&mut self, g: Cnot) {
        let perm = |x: usize| if x >> g.control & 1 == 1 { x ^ (1 << g.target) } else { x };
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for x in 0..d {
            for y in 0..d {
                out[perm(x) * d + perm(y)] = self.rho[x * d + y];
            }
        }
        self.rho = out;
    }
}

/// Diagonal of the explicit gate sequence of `circuit` (rotation layers
/// with CNOT blocks in between), with every qubit fully dephased after each
/// single-qubit rotation. Deleted duplicate rotations carry angle zero.
pub fn dephased_iqp_oracle(circuit: &IqpCircuit) -> Result<Vec<f64>> {
    let n = circuit.num_qubits();
    if n > DENSITY_CAP {
        return Err(Error::SizeCap { what: "dephased density oracle", got: n, cap: DENSITY_CAP });
    }
    let grid = circuit.angle_grid();
    let mut rho = Density::ground(n);
    for (l, row) in grid.iter().enumerate() {
        for (q, &theta) in row.iter().enumerate() {
            rho.rx(q, theta);
            for p in 0..n {
                rho.dephase(p);
            }
        }
        if l + 1 < grid.len() {
            let pattern = circuit.pattern();
            for &g in pattern.first.iter().chain(&pattern.second) {
                rho.cnot(g);
            }
        }
    }
    Ok((0..rho.dim).map(|x| rho.rho[x * rho.dim + x].re).collect())
}
