//! Classical reference solvers.

mod bfs;
mod sa;

pub use bfs::bfs_run;
pub use sa::{
    acceptance_probability, metropolis_accept, sa_run, select_final_temperature, select_final_temperature_by,
    sa_run_with_stats, SaConfig, SaStats, FINAL_TEMPERATURES, INITIAL_TEMPERATURE,
};
