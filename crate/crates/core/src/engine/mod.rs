//! Filtering, gradients and the F-VQE training loop.

mod ansatz;
mod gradient;
mod hyper;
mod trainer;

pub use ansatz::{Ansatz, AnsatzKind, Prepared};
pub use gradient::{
    estimate_gradient_single_circuit, exact_gradient, exact_gradients, filter_table, loss_prefactor,
};
pub use hyper::{Hyperparameters, Preset, DEFAULT_STEPS, VQE_LEARNING_RATE};
pub use trainer::{run_fvqe, TrainerConfig, SUCCESS_THRESHOLDS};

use crate::error::{Error, Result};

/// `tau` for plain VQE: the filter is the cost itself.
pub const VQE_TAU: f64 = -1.0;

/// Inverse filter `c^-tau` on a rescaled cost.
#[inline]
pub fn filter(c: f64, tau: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::FilterDomain(c));
    }
    Ok(c.powf(-tau))
}

pub fn is_vqe(tau: f64) -> bool {
    tau == VQE_TAU
}

/// `f^2 P / E_P(f^2)` for filter values `f` given per string.
pub fn exact_filtered_distribution(p: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    if p.len() != f.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: f.len() });
    }
    let z: f64 = p.iter().zip(f).map(|(p, f)| p * f * f).sum();
    if !(z > 0.0) {
        return Err(Error::Config("filtered distribution has zero mass".into()));
    }
    Ok(p.iter().zip(f).map(|(p, f)| p * f * f / z).collect())
}

/// Infidelity `1 - (sum_x sqrt(P(x) Q(x)))^2` between two distributions.
pub fn loss(p: &[f64], target: &[f64]) -> f64 {
    let overlap: f64 = p.iter().zip(target).map(|(a, b)| (a * b).sqrt()).sum();
    (1.0 - overlap * overlap).clamp(0.0, 1.0)
}

/// `theta - eta g / |g|`. Returns `None` when `g` vanishes.
pub fn update(theta: &[f64], g: &[f64], eta: f64) -> Option<Vec<f64>> {
    assert_eq!(theta.len(), g.len());
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return None;
    }
    Some(theta.iter().zip(g).map(|(t, gi)| t - eta * gi / norm).collect())
}
