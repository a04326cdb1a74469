//! Exact state-vector simulation of commuting X-string rotations.

use num_complex::Complex64;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::iqp::circuit::IqpCircuit;
use crate::rng::SeededRng;

/// Default largest register the simulator accepts.
pub const DEFAULT_SIMULATOR_CAP: usize = 29;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize, cap: usize) -> Result<Self> {
        if num_qubits > cap {
            return Err(Error::SizeCap { what: "state vector", got: num_qubits, cap });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, x: &BitString) -> Complex64 {
        self.amplitudes[x.word() as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Applies `exp(-i theta X_mask / 2)`: amplitudes of `x` and `x ^ mask`
    /// mix as `cos(theta/2) a_x - i sin(theta/2) a_{x^mask}`.
    pub fn apply_rotation(&mut self, mask: u64, theta: f64) {
        assert!(mask != 0, "rotation on the empty subset");
        assert!(mask >> self.num_qubits == 0, "mask outside register");
        let (s, c) = (theta / 2.0).sin_cos();
        let top = 1u64 << (63 - mask.leading_zeros());
        let dim = self.amplitudes.len() as u64;
        let mut base = 0;
        while base < dim {
            for x in base..base + top {
                let y = x ^ mask;
                let (a, b) = (self.amplitudes[x as usize], self.amplitudes[y as usize]);
                self.amplitudes[x as usize] = Complex64::new(c * a.re + s * b.im, c * a.im - s * b.re);
                self.amplitudes[y as usize] = Complex64::new(c * b.re + s * a.im, c * b.im - s * a.re);
            }
            base += 2 * top;
        }
    }

    /// `|a_x|^2` for every basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    /// Distribution after one extra `exp(-i theta X_mask / 2)`, without
    /// materialising the rotated state.
    pub fn rotated_probabilities(&self, mask: u64, theta: f64) -> Vec<f64> {
        let (s, c) = (theta / 2.0).sin_cos();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(x, a)| {
                let b = self.amplitudes[x ^ mask as usize];
                Complex64::new(c * a.re + s * b.im, c * a.im - s * b.re).norm_sqr()
            })
            .collect()
    }
}

/// `exp(-i sum_k theta_k X_{Q_k} / 2) |0...0>`.
pub fn apply_generators(circuit: &IqpCircuit, cap: usize) -> Result<StateVector> {
    let mut state = StateVector::zero(circuit.num_qubits(), cap)?;
    for g in circuit.generators() {
        state.apply_rotation(g.mask.word(), g.theta);
    }
    Ok(state)
}

/// Same as [`apply_generators`] with angles supplied separately.
pub fn state_for(masks: &[BitString], thetas: &[f64], num_qubits: usize, cap: usize) -> Result<StateVector> {
    if masks.len() != thetas.len() {
        return Err(Error::LengthMismatch { left: masks.len(), right: thetas.len() });
    }
    let mut state = StateVector::zero(num_qubits, cap)?;
    for (m, &t) in masks.iter().zip(thetas) {
        state.apply_rotation(m.word(), t);
    }
    Ok(state)
}

/// Inverse-CDF sampler over a fixed distribution.
#[derive(Clone, Debug)]
pub struct Sampler {
    num_qubits: usize,
    cumulative: Vec<f64>,
}

impl Sampler {
    pub fn new(probabilities: &[f64]) -> Self {
        assert!(probabilities.len().is_power_of_two(), "distribution over 2^N outcomes expected");
        let mut acc = 0.0;
        let cumulative = probabilities
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect();
        Self { num_qubits: probabilities.len().trailing_zeros() as usize, cumulative }
    }

    #[inline]
    pub fn draw_word(&self, rng: &mut SeededRng) -> u64 {
        let total = *self.cumulative.last().expect("non-empty");
        let u = rng.uniform() * total;
        let i = self.cumulative.partition_point(|&c| c <= u);
        // Rounding can push u past the last positive entry; back off to it.
        let mut i = i.min(self.cumulative.len() - 1);
        while i > 0 && self.cumulative[i] == self.cumulative[i - 1] {
            i -= 1;
        }
        i as u64
    }

    pub fn draw(&self, rng: &mut SeededRng) -> BitString {
        BitString::from_word(self.draw_word(rng), self.num_qubits).expect("index fits")
    }

    pub fn draw_many(&self, shots: usize, rng: &mut SeededRng) -> Vec<BitString> {
        (0..shots).map(|_| self.draw(rng)).collect()
    }
}

/// `shots` independent measurements of `state` in the computational basis.
pub fn sample(state: &StateVector, shots: usize, rng: &mut SeededRng) -> Vec<BitString> {
    Sampler::new(&state.probabilities()).draw_many(shots, rng)
}

/// Maps samples of the `+pi/2`-shifted circuit on generator `mask` onto
/// samples of the `-pi/2`-shifted one: the two states differ by `X_mask`.
pub fn shifted_distribution_pushforward(samples: &[BitString], mask: &BitString) -> Result<Vec<BitString>> {
    samples.iter().map(|x| x.xor(mask)).collect()
}
