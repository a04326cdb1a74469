//! Metrics computed from run traces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::trace::RunTrace;

pub const RATIO_THRESHOLDS: [f64; 3] = [0.9, 0.95, 1.0];
pub const INSTANCE_FRACTIONS: [f64; 3] = [0.3, 0.6, 0.9];
/// Target cumulative probability for the exact success-samples metric.
pub const CUMULATIVE_TARGET: f64 = 0.95;

/// Right-continuous step function: `fraction` holds from `samples` on.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub points: Vec<(u64, f64)>,
}

impl Curve {
    pub fn value_at(&self, samples: u64) -> f64 {
        let i = self.points.partition_point(|p| p.0 <= samples);
        if i == 0 {
            0.0
        } else {
            self.points[i - 1].1
        }
    }

    pub fn max(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.1)
    }

    /// Earliest sample count where the curve reaches `fraction`.
    pub fn min_samples(&self, fraction: f64) -> Option<u64> {
        self.points.iter().find(|p| p.1 >= fraction).map(|p| p.0)
    }
}

/// Fraction of traces whose best ratio has reached `threshold`, as a
/// function of samples consumed.
pub fn fraction_solved_curve(traces: &[RunTrace], threshold: f64) -> Curve {
    if traces.is_empty() {
        return Curve::default();
    }
    let mut hits: Vec<u64> = traces.iter().filter_map(|t| t.first_reaching(threshold)).collect();
    hits.sort_unstable();
    let total = traces.len() as f64;
    let mut points: Vec<(u64, f64)> = Vec::new();
    for (i, &h) in hits.iter().enumerate() {
        let frac = (i + 1) as f64 / total;
        match points.last_mut() {
            Some(last) if last.0 == h => last.1 = frac,
            _ => points.push((h, frac)),
        }
    }
    Curve { points }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuccessEntry {
    pub size: usize,
    pub algorithm: String,
    pub threshold: f64,
    pub fraction: f64,
    pub samples: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuccessTable {
    pub entries: Vec<SuccessEntry>,
}

/// A curve labelled by problem size, algorithm and ratio threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelledCurve {
    pub size: usize,
    pub algorithm: String,
    pub threshold: f64,
    pub curve: Curve,
}

pub fn success_table(curves: &[LabelledCurve]) -> SuccessTable {
    let entries = curves
        .iter()
        .flat_map(|c| {
            INSTANCE_FRACTIONS.iter().map(move |&fraction| SuccessEntry {
                size: c.size,
                algorithm: c.algorithm.clone(),
                threshold: c.threshold,
                fraction,
                samples: c.curve.min_samples(fraction),
            })
        })
        .collect();
    SuccessTable { entries }
}

/// Groups traces by `(num_qubits, algorithm)` and builds one curve per
/// ratio threshold.
pub fn curves_by_group(traces: &[RunTrace], thresholds: &[f64]) -> Vec<LabelledCurve> {
    let mut groups: BTreeMap<(usize, String), Vec<RunTrace>> = BTreeMap::new();
    for t in traces {
        groups.entry((t.num_qubits, t.algorithm.clone())).or_default().push(t.clone());
    }
    groups
        .into_iter()
        .flat_map(|((size, algorithm), ts)| {
            thresholds
                .iter()
                .map(|&threshold| LabelledCurve {
                    size,
                    algorithm: algorithm.clone(),
                    threshold,
                    curve: fraction_solved_curve(&ts, threshold),
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// First cumulative sample count where `1 - prod_t (1 - p_t)^{s_t}`
/// exceeds `target`; steps are `(s_t, p_t)`.
pub fn cumulative_success_samples(steps: &[(u64, f64)], target: f64) -> Option<u64> {
    let mut log_miss = 0.0f64;
    let mut samples = 0u64;
    for &(s, p) in steps {
        samples += s;
        if p >= 1.0 {
            return Some(samples);
        }
        log_miss += s as f64 * (1.0 - p).ln();
        if 1.0 - log_miss.exp() > target {
            return Some(samples);
        }
    }
    None
}

/// Per-step `(samples, probability)` pairs recorded by an exact run for the
/// `index`-th success threshold.
pub fn success_steps(trace: &RunTrace, index: usize) -> Option<Vec<(u64, f64)>> {
    let mut prev = 0;
    trace
        .steps
        .iter()
        .map(|st| {
            let p = st.success_probability.as_ref()?.get(index).copied()?;
            let s = st.samples - prev;
            prev = st.samples;
            Some((s, p))
        })
        .collect()
}

/// Quantiles (linear interpolation) and 1.5 IQR whiskers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub count: usize,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers_low: usize,
    pub outliers_high: usize,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

impl BoxStats {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let (q25, median, q75) = (quantile(&v, 0.25), quantile(&v, 0.5), quantile(&v, 0.75));
        let iqr = q75 - q25;
        let (lo_fence, hi_fence) = (q25 - 1.5 * iqr, q75 + 1.5 * iqr);
        let inside: Vec<f64> = v.iter().copied().filter(|&x| x >= lo_fence && x <= hi_fence).collect();
        Some(Self {
            count: v.len(),
            min: v[0],
            q25,
            median,
            q75,
            max: v[v.len() - 1],
            whisker_low: inside.first().copied().unwrap_or(q25),
            whisker_high: inside.last().copied().unwrap_or(q75),
            outliers_low: v.iter().filter(|&&x| x < lo_fence).count(),
            outliers_high: v.iter().filter(|&&x| x > hi_fence).count(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
}

/// Least-squares line `y = c0 + c1 x`, with `R^2` of the fit.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let c1 = sxy / sxx;
    let c0 = my - c1 * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - c0 - c1 * a).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    (c0, c1, r2.clamp(0.0, 1.0))
}

/// `y = a b^N`, fitted as `ln y = ln a + N ln b`.
pub fn fit_exponential(sizes: &[f64], medians: &[f64]) -> Option<Fit> {
    fit_log(sizes, medians, |n| n)
}

/// `y = a N^b`, fitted as `ln y = ln a + b ln N`.
pub fn fit_polynomial(sizes: &[f64], medians: &[f64]) -> Option<Fit> {
    let fit = fit_log(sizes, medians, f64::ln)?;
    Some(Fit { b: fit.b.ln(), ..fit })
}

fn fit_log(sizes: &[f64], medians: &[f64], xmap: impl Fn(f64) -> f64) -> Option<Fit> {
    if sizes.len() < 3 || sizes.len() != medians.len() || medians.iter().any(|&m| !(m > 0.0)) {
        return None;
    }
    let x: Vec<f64> = sizes.iter().map(|&n| xmap(n)).collect();
    let y: Vec<f64> = medians.iter().map(|m| m.ln()).collect();
    let (c0, c1, r2) = linear_fit(&x, &y);
    Some(Fit { a: c0.exp(), b: c1.exp(), r2 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeGradients {
    pub size: usize,
    pub stats: BoxStats,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GradientStats {
    pub sizes: Vec<SizeGradients>,
    pub exponential: Option<Fit>,
    pub polynomial: Option<Fit>,
}

impl GradientStats {
    /// `"polynomial"` or `"exponential"`, whichever has the larger `R^2`.
    pub fn better_fit(&self) -> Option<&'static str> {
        match (self.exponential, self.polynomial) {
            (Some(e), Some(p)) => Some(if p.r2 > e.r2 { "polynomial" } else { "exponential" }),
            _ => None,
        }
    }
}

/// Pools `|dL/dtheta_k|` over every step and parameter by register size.
pub fn gradient_samples(traces: &[RunTrace]) -> BTreeMap<usize, Vec<f64>> {
    let mut out: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for t in traces {
        for st in &t.steps {
            if let Some(g) = &st.exact_gradient {
                out.entry(t.num_qubits).or_default().extend(g.iter().map(|x| x.abs()));
            }
        }
    }
    out
}

/// Box statistics per size and fits to the medians; fits need three sizes.
pub fn gradient_statistics(samples: &BTreeMap<usize, Vec<f64>>) -> GradientStats {
    let sizes: Vec<SizeGradients> = samples
        .iter()
        .filter_map(|(&size, v)| BoxStats::from_values(v).map(|stats| SizeGradients { size, stats }))
        .collect();
    let ns: Vec<f64> = sizes.iter().map(|s| s.size as f64).collect();
    let meds: Vec<f64> = sizes.iter().map(|s| s.stats.median).collect();
    GradientStats { exponential: fit_exponential(&ns, &meds), polynomial: fit_polynomial(&ns, &meds), sizes }
}
