//! Filtering variational quantum eigensolver (F-VQE) on a noiseless simulator.
//!
//! The crate bundles everything needed to train IQP and bit-flip ansatze on
//! combinatorial problems and compare them against classical baselines:
//!
//! - [`bits`], [`cost`], [`rng`]: shared domain types.
//! - [`encodings`]: weighted MaxCut and the Lehmer-coded ATSP cost function.
//! - [`iqp`]: layered IQP circuits, layout adaptation and exact state vectors.
//! - [`classical`]: the probabilistic bit-flip mirror of an IQP circuit.
//! - [`engine`]: filters, gradient estimators and the training loop.
//! - [`baselines`]: brute-force search and simulated annealing.
//! - [`instances`]: random instance generation and solution spectra.
//! - [`harness`]: traces, batch sweeps, metrics and plot data.

pub mod baselines;
pub mod bits;
pub mod classical;
pub mod cost;
pub mod encodings;
pub mod engine;
pub mod error;
pub mod harness;
pub mod instances;
pub mod iqp;
pub mod rng;

pub use bits::BitString;
pub use cost::{approximation_ratio, CostModel, CostTable, Extremes};
pub use encodings::Problem;
pub use error::{Error, Result};
pub use rng::SeededRng;
