use rayon::prelude::*;

use super::ansatz::{Ansatz, Prepared};
use super::filter;
use crate::cost::Objective;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Filter value of every string, indexed by packed word.
pub fn filter_table(objective: &Objective, tau: f64) -> Result<Vec<f64>> {
    let n = objective.num_qubits();
    if n > crate::cost::TABLE_CAP {
        return Err(Error::SizeCap { what: "filter table", got: n, cap: crate::cost::TABLE_CAP });
    }
    (0..1u64 << n).into_par_iter().map(|w| filter(objective.rescaled_word(w), tau)).collect()
}

/// `E(f) / (2 E(f^2))`, the positive factor turning `E_- - E_+` into
/// `dL/dtheta_k` at the current parameters.
pub fn loss_prefactor(p: &[f64], f: &[f64]) -> f64 {
    let (e1, e2) = p.iter().zip(f).fold((0.0, 0.0), |(a, b), (p, f)| (a + p * f, b + p * f * f));
    e1 / (2.0 * e2)
}

/// `(E_{-k}(f), E_{+k}(f))` from the `+pi/2` distribution alone.
fn shifted_expectations(plus: &[f64], mask: u64, f: &[f64]) -> (f64, f64) {
    let m = mask as usize;
    plus.iter().enumerate().fold((0.0, 0.0), |(em, ep), (x, &px)| (em + px * f[x ^ m], ep + px * f[x]))
}

pub(crate) fn exact_gradient_prepared(prep: &Prepared<'_>, masks: &[u64], k: usize, f: &[f64]) -> Result<f64> {
    let plus = prep.probabilities(Some(k))?;
    let (em, ep) = shifted_expectations(&plus, masks[k], f);
    Ok(em - ep)
}

/// `E_{-k}(f) - E_{+k}(f)` from exact shifted distributions.
pub fn exact_gradient(ansatz: &Ansatz, thetas: &[f64], k: usize, f: &[f64]) -> Result<f64> {
    check_table(ansatz, f)?;
    if k >= ansatz.num_parameters() {
        return Err(Error::Config(format!("parameter {k} out of range")));
    }
    exact_gradient_prepared(&ansatz.prepare(thetas)?, ansatz.mask_words(), k, f)
}

/// [`exact_gradient`] for every parameter.
pub fn exact_gradients(ansatz: &Ansatz, thetas: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    check_table(ansatz, f)?;
    let prep = ansatz.prepare(thetas)?;
    (0..ansatz.num_parameters())
        .into_par_iter()
        .map(|k| exact_gradient_prepared(&prep, ansatz.mask_words(), k, f))
        .collect()
}

fn check_table(ansatz: &Ansatz, f: &[f64]) -> Result<()> {
    if f.len() != 1usize << ansatz.num_qubits() {
        return Err(Error::LengthMismatch { left: f.len(), right: 1 << ansatz.num_qubits() });
    }
    Ok(())
}

/// Mean of `fval(x ^ q_k) - fval(x)` over shots drawn from the
/// `+pi/2`-shifted circuit only.
pub fn estimate_gradient_single_circuit(
    prep: &Prepared<'_>,
    masks: &[u64],
    k: usize,
    shots: usize,
    fval: impl Fn(u64) -> f64,
    rng: &mut SeededRng,
) -> f64 {
    let xs = prep.sample(Some(k), shots, rng);
    estimate_from_samples(&xs, masks[k], fval)
}

pub(crate) fn estimate_from_samples(xs: &[u64], mask: u64, fval: impl Fn(u64) -> f64) -> f64 {
    let total: f64 = xs.iter().map(|&x| fval(x ^ mask) - fval(x)).sum();
    total / xs.len() as f64
}
