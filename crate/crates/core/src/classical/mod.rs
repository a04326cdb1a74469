//! Probabilistic bit-flip ansatz sharing the IQP generator subsets.

pub mod dephasing;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::iqp::IqpCircuit;
use crate::rng::SeededRng;

/// Largest register for which the exact distribution is tabulated.
pub const EXACT_CAP: usize = 20;

/// Bit-flip channels `rho -> cos^2(theta/2) rho + sin^2(theta/2) X_Q rho X_Q`
/// applied in order to `|0...0>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalAnsatz {
    num_qubits: usize,
    masks: Vec<BitString>,
    thetas: Vec<f64>,
}

/// Probability that channel `theta` flips its subset.
#[inline]
pub fn flip_probability(theta: f64) -> f64 {
    let s = (theta / 2.0).sin();
    s * s
}

impl ClassicalAnsatz {
    pub fn new(num_qubits: usize, masks: Vec<BitString>, thetas: Vec<f64>) -> Result<Self> {
        if masks.len() != thetas.len() {
            return Err(Error::LengthMismatch { left: masks.len(), right: thetas.len() });
        }
        if let Some(m) = masks.iter().find(|m| m.len() != num_qubits) {
            return Err(Error::LengthMismatch { left: m.len(), right: num_qubits });
        }
        Ok(Self { num_qubits, masks, thetas })
    }

    /// Same subsets, order and angles as `circuit`.
    pub fn from_circuit(circuit: &IqpCircuit) -> Self {
        Self { num_qubits: circuit.num_qubits(), masks: circuit.masks(), thetas: circuit.thetas() }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn masks(&self) -> &[BitString] {
        &self.masks
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn set_thetas(&mut self, thetas: &[f64]) -> Result<()> {
        if thetas.len() != self.thetas.len() {
            return Err(Error::LengthMismatch { left: thetas.len(), right: self.thetas.len() });
        }
        self.thetas.copy_from_slice(thetas);
        Ok(())
    }

    pub fn with_thetas(mut self, thetas: &[f64]) -> Result<Self> {
        self.set_thetas(thetas)?;
        Ok(self)
    }
}

/// Draws from channels given as `(mask word, flip probability)` pairs.
pub fn sample_words(channels: &[(u64, f64)], shots: usize, rng: &mut SeededRng) -> Vec<u64> {
    (0..shots)
        .map(|_| {
            channels.iter().fold(0u64, |x, &(m, p)| if rng.uniform() < p { x ^ m } else { x })
        })
        .collect()
}

pub fn channels(ansatz: &ClassicalAnsatz) -> Vec<(u64, f64)> {
    ansatz.masks.iter().zip(&ansatz.thetas).map(|(m, &t)| (m.word(), flip_probability(t))).collect()
}

pub fn sample_classical(ansatz: &ClassicalAnsatz, shots: usize, rng: &mut SeededRng) -> Vec<BitString> {
    sample_words(&channels(ansatz), shots, rng)
        .into_iter()
        .map(|w| BitString::from_word(w, ansatz.num_qubits).expect("mask words fit"))
        .collect()
}

/// Exact table over the `2^N` strings obtained by two-point XOR
/// convolutions.
pub fn exact_classical_distribution(ansatz: &ClassicalAnsatz) -> Result<Vec<f64>> {
    exact_distribution_words(ansatz.num_qubits, &channels(ansatz))
}

pub fn exact_distribution_words(num_qubits: usize, channels: &[(u64, f64)]) -> Result<Vec<f64>> {
    if num_qubits > EXACT_CAP {
        return Err(Error::SizeCap { what: "exact classical distribution", got: num_qubits, cap: EXACT_CAP });
    }
    let mut p = vec![0.0; 1 << num_qubits];
    p[0] = 1.0;
    for &(m, flip) in channels {
        convolve(&mut p, m, flip);
    }
    Ok(p)
}

/// `p(x) <- (1 - flip) p(x) + flip p(x ^ mask)`, in place.
pub fn convolve(p: &mut [f64], mask: u64, flip: f64) {
    let top = 1usize << (63 - mask.leading_zeros());
    let m = mask as usize;
    let mut base = 0;
    while base < p.len() {
        for x in base..base + top {
            let y = x ^ m;
            let (a, b) = (p[x], p[y]);
            p[x] = (1.0 - flip) * a + flip * b;
            p[y] = (1.0 - flip) * b + flip * a;
        }
        base += 2 * top;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn full_flip_is_deterministic() {
        let mask = BitString::from_qubits(&[1, 3], 5).unwrap();
        let a = ClassicalAnsatz::new(5, vec![mask], vec![PI]).unwrap();
        let xs = sample_classical(&a, 20, &mut SeededRng::new(1));
        assert!(xs.iter().all(|x| x.to_string() == "01010"));
    }

    #[test]
    fn zero_angles_stay_at_origin() {
        let c = IqpCircuit::line(4, 3).unwrap();
        let a = ClassicalAnsatz::from_circuit(&c);
        assert!(sample_classical(&a, 50, &mut SeededRng::new(2)).iter().all(BitString::is_zero));
        let p = exact_classical_distribution(&a).unwrap();
        assert_eq!(p[0], 1.0);
        let empty = ClassicalAnsatz::new(3, vec![], vec![]).unwrap();
        assert_eq!(exact_classical_distribution(&empty).unwrap()[0], 1.0);
    }

    #[test]
    fn half_flip_on_one_bit() {
        let mask = BitString::from_qubits(&[0], 2).unwrap();
        let a = ClassicalAnsatz::new(2, vec![mask], vec![FRAC_PI_2]).unwrap();
        let p = exact_classical_distribution(&a).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn initial_parameters_match_exact_table() {
        let c = IqpCircuit::line_min_layers(4).unwrap();
        let c = c.clone().with_thetas(&c.initial_parameters()).unwrap();
        let a = ClassicalAnsatz::from_circuit(&c);
        let p = exact_classical_distribution(&a).unwrap();
        assert!(p.iter().all(|&px| (px - 1.0 / 16.0).abs() < 1e-12));
        let xs = sample_classical(&a, 64_000, &mut SeededRng::new(3));
        let mut counts = [0usize; 16];
        for x in &xs {
            counts[x.word() as usize] += 1;
        }
        assert!(counts.iter().all(|&c| (c as f64 - 4000.0).abs() < 300.0), "{counts:?}");
    }

    fn random_ansatz(n: usize, seed: u64) -> ClassicalAnsatz {
        let c = IqpCircuit::line_min_layers(n).unwrap();
        let mut rng = SeededRng::new(seed);
        let thetas: Vec<f64> = (0..c.num_parameters()).map(|_| (rng.uniform() - 0.5) * PI).collect();
        ClassicalAnsatz::from_circuit(&c).with_thetas(&thetas).unwrap()
    }

    #[test]
    fn channel_order_is_irrelevant() {
        let a = random_ansatz(5, 7);
        let p = exact_classical_distribution(&a).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mut masks = a.masks().to_vec();
        let mut thetas = a.thetas().to_vec();
        masks.reverse();
        thetas.reverse();
        masks.swap(0, 3);
        thetas.swap(0, 3);
        let q = exact_classical_distribution(&ClassicalAnsatz::new(5, masks, thetas).unwrap()).unwrap();
        assert!(p.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn shift_symmetry_holds_classically() {
        let a = random_ansatz(4, 11);
        for k in 0..a.masks().len() {
            let mut plus = a.thetas().to_vec();
            plus[k] += FRAC_PI_2;
            let mut minus = a.thetas().to_vec();
            minus[k] -= FRAC_PI_2;
            let pp = exact_classical_distribution(&a.clone().with_thetas(&plus).unwrap()).unwrap();
            let pm = exact_classical_distribution(&a.clone().with_thetas(&minus).unwrap()).unwrap();
            let q = a.masks()[k].word() as usize;
            for x in 0..16 {
                assert!((pm[x] - pp[x ^ q]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_cap() {
        assert!(matches!(exact_distribution_words(21, &[]), Err(Error::SizeCap { .. })));
    }
}
