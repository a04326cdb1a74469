//! CSV tables for external plotting.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::metrics::{GradientStats, LabelledCurve, SuccessTable};
use crate::error::Result;
use crate::instances::SpectrumReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub size: usize,
    pub algorithm: String,
    pub threshold: f64,
    pub samples: u64,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuccessRow {
    pub size: usize,
    pub algorithm: String,
    pub threshold: f64,
    pub fraction: f64,
    pub samples: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientRow {
    pub size: usize,
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

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    pub model: String,
    pub a: f64,
    pub b: f64,
    pub r2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub instance: String,
    pub num_qubits: usize,
    pub threshold: f64,
    pub fraction: f64,
    pub reference: f64,
}

/// Everything the plotting side consumes, already flattened.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Analysis {
    pub curves: Vec<CurveRow>,
    pub success: Vec<SuccessRow>,
    pub gradients: Vec<GradientRow>,
    pub fits: Vec<FitRow>,
    pub spectra: Vec<SpectrumRow>,
}

impl Analysis {
    pub fn add_curves(&mut self, curves: &[LabelledCurve]) {
        for c in curves {
            self.curves.extend(c.curve.points.iter().map(|&(samples, fraction)| CurveRow {
                size: c.size,
                algorithm: c.algorithm.clone(),
                threshold: c.threshold,
                samples,
                fraction,
            }));
        }
    }

    pub fn add_success(&mut self, table: &SuccessTable) {
        self.success.extend(table.entries.iter().map(|e| SuccessRow {
            size: e.size,
            algorithm: e.algorithm.clone(),
            threshold: e.threshold,
            fraction: e.fraction,
            samples: e.samples,
        }));
    }

    pub fn add_gradients(&mut self, g: &GradientStats) {
        self.gradients.extend(g.sizes.iter().map(|s| {
            let b = &s.stats;
            GradientRow {
                size: s.size,
                count: b.count,
                min: b.min,
                q25: b.q25,
                median: b.median,
                q75: b.q75,
                max: b.max,
                whisker_low: b.whisker_low,
                whisker_high: b.whisker_high,
                outliers_low: b.outliers_low,
                outliers_high: b.outliers_high,
            }
        }));
        for (model, fit) in [("exponential", g.exponential), ("polynomial", g.polynomial)] {
            if let Some(f) = fit {
                self.fits.push(FitRow { model: model.into(), a: f.a, b: f.b, r2: f.r2 });
            }
        }
    }

    pub fn add_spectrum(&mut self, instance: &str, r: &SpectrumReport) {
        self.spectra.extend(r.thresholds.iter().zip(&r.fractions).map(|(&threshold, &fraction)| SpectrumRow {
            instance: instance.into(),
            num_qubits: r.num_qubits,
            threshold,
            fraction,
            reference: r.reference,
        }));
    }
}

pub const CURVES_FILE: &str = "fraction_solved.csv";
pub const SUCCESS_FILE: &str = "success_table.csv";
pub const GRADIENTS_FILE: &str = "gradient_boxplot.csv";
pub const FITS_FILE: &str = "gradient_fits.csv";
pub const SPECTRA_FILE: &str = "spectrum.csv";

const CURVE_HEADER: &[&str] = &["size", "algorithm", "threshold", "samples", "fraction"];
const SUCCESS_HEADER: &[&str] = &["size", "algorithm", "threshold", "fraction", "samples"];
const GRADIENT_HEADER: &[&str] = &[
    "size", "count", "min", "q25", "median", "q75", "max", "whisker_low", "whisker_high", "outliers_low", "outliers_high",
];
const FIT_HEADER: &[&str] = &["model", "a", "b", "r2"];
const SPECTRUM_HEADER: &[&str] = &["instance", "num_qubits", "threshold", "fraction", "reference"];

/// CSV text with an explicit header line, so empty tables still carry one.
pub fn to_csv<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?)
}

/// Writes one CSV per table into `dir` and returns their paths.
pub fn emit_plot_data(analysis: &Analysis, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let files = [
        (CURVES_FILE, to_csv(CURVE_HEADER, &analysis.curves)?),
        (SUCCESS_FILE, to_csv(SUCCESS_HEADER, &analysis.success)?),
        (GRADIENTS_FILE, to_csv(GRADIENT_HEADER, &analysis.gradients)?),
        (FITS_FILE, to_csv(FIT_HEADER, &analysis.fits)?),
        (SPECTRA_FILE, to_csv(SPECTRUM_HEADER, &analysis.spectra)?),
    ];
    let mut out = Vec::new();
    for (name, text) in files {
        let p = dir.join(name);
        std::fs::write(&p, text)?;
        out.push(p);
    }
    Ok(out)
}

/// Reads back what [`emit_plot_data`] wrote.
pub fn load_plot_data(dir: &Path) -> Result<Analysis> {
    let read = |name: &str| std::fs::read_to_string(dir.join(name));
    Ok(Analysis {
        curves: from_csv(&read(CURVES_FILE)?)?,
        success: from_csv(&read(SUCCESS_FILE)?)?,
        gradients: from_csv(&read(GRADIENTS_FILE)?)?,
        fits: from_csv(&read(FITS_FILE)?)?,
        spectra: from_csv(&read(SPECTRA_FILE)?)?,
    })
}
