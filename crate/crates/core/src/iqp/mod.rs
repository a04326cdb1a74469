//! IQP ansatz: circuit construction, device layout and simulation.

pub mod circuit;
pub mod layout;
pub mod state;

pub use circuit::{minimal_layers, Cnot, CnotPattern, Generator, IqpCircuit};
pub use layout::{adapt_layout, adapt_layout_with_cycle, ConnectivityGraph};
pub use state::{
    apply_generators, sample, shifted_distribution_pushforward, state_for, Sampler, StateVector,
    DEFAULT_SIMULATOR_CAP,
};
