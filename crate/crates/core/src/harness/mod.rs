//! Batch runs, metrics over traces and plot-data export.

pub mod batch;
pub mod metrics;
pub mod plot;
pub mod trace;

pub use batch::{load_traces, run_batch, AlgorithmSpec, FvqeSpec, Manifest, SweepConfig};
pub use metrics::{
    cumulative_success_samples, fraction_solved_curve, gradient_statistics, success_table, Curve, GradientStats,
    SuccessTable,
};
pub use plot::{emit_plot_data, Analysis};
pub use trace::{RunTrace, TracePoint};

use std::path::Path;

use crate::error::Result;

/// Curves, success table and gradient statistics for a finished sweep.
pub fn analyze_dir(dir: &Path) -> Result<(Analysis, GradientStats)> {
    let traces = load_traces(dir)?;
    Ok(analyze(&traces))
}

pub fn analyze(traces: &[RunTrace]) -> (Analysis, GradientStats) {
    let curves = metrics::curves_by_group(traces, &metrics::RATIO_THRESHOLDS);
    let mut a = Analysis::default();
    a.add_curves(&curves);
    a.add_success(&success_table(&curves));
    let grads = gradient_statistics(&metrics::gradient_samples(traces));
    a.add_gradients(&grads);
    (a, grads)
}
