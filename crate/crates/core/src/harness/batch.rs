//! Sweeps over instances, algorithms and seeds with on-disk idempotence.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::trace::RunTrace;
use crate::baselines::{bfs_run, sa_run, SaConfig};
use crate::cost::Objective;
use crate::engine::{run_fvqe, AnsatzKind, Hyperparameters, Preset, TrainerConfig};
use crate::error::{Error, Result};
use crate::iqp::DEFAULT_SIMULATOR_CAP;
use crate::Problem;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const TRACE_DIR: &str = "traces";

/// F-VQE or VQE run; `preset = None` means custom values for all of
/// `shots`, `tau` and `eta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FvqeSpec {
    pub ansatz: AnsatzKind,
    #[serde(default)]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default)]
    pub record_exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulator_cap: Option<usize>,
}

impl FvqeSpec {
    pub fn new(ansatz: AnsatzKind, preset: Preset) -> Self {
        Self {
            ansatz,
            preset: Some(preset),
            shots: None,
            tau: None,
            eta: None,
            steps: None,
            layers: None,
            budget: None,
            record_exact: false,
            simulator_cap: None,
        }
    }

    pub fn trainer_config(&self, num_qubits: usize) -> Result<TrainerConfig> {
        let base = match self.preset {
            Some(p) => p.hyperparameters(num_qubits),
            None => match (self.shots, self.tau, self.eta) {
                (Some(shots), Some(tau), Some(eta)) => Hyperparameters { shots, tau, eta, ..Default::default() },
                _ => return Err(Error::Config("custom preset needs shots, tau and eta".into())),
            },
        };
        let hyper = Hyperparameters {
            shots: self.shots.unwrap_or(base.shots),
            tau: self.tau.unwrap_or(base.tau),
            eta: self.eta.unwrap_or(base.eta),
            steps: self.steps.unwrap_or(base.steps),
        };
        Ok(TrainerConfig {
            ansatz: self.ansatz,
            hyper,
            layers: self.layers,
            max_samples: self.budget,
            record_exact: self.record_exact,
            simulator_cap: self.simulator_cap.unwrap_or(DEFAULT_SIMULATOR_CAP),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgorithmSpec {
    Fvqe(FvqeSpec),
    Bfs { budget: u64 },
    Sa { t_final: f64, budget: u64 },
}

impl AlgorithmSpec {
    pub fn label(&self) -> String {
        match self {
            AlgorithmSpec::Fvqe(f) => {
                let preset = f.preset.map_or("custom", |p| p.name());
                format!("fvqe-{}-{preset}", f.ansatz.name())
            }
            AlgorithmSpec::Bfs { .. } => "bfs".into(),
            AlgorithmSpec::Sa { t_final, .. } => format!("sa-{t_final}"),
        }
    }

    pub fn run(&self, objective: &Objective, seed: u64, instance: &str) -> Result<RunTrace> {
        match self {
            AlgorithmSpec::Fvqe(f) => run_fvqe(objective, &f.trainer_config(objective.num_qubits())?, seed, instance),
            AlgorithmSpec::Bfs { budget } => Ok(bfs_run(objective, *budget, seed, instance)),
            AlgorithmSpec::Sa { t_final, budget } => sa_run(objective, &SaConfig::new(*t_final, *budget), seed, instance),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub instances: Vec<PathBuf>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub seeds: Vec<u64>,
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(dir.join(MANIFEST_FILE))?)?)
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.status == RunStatus::Failed).count()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BatchReport {
    pub manifest: Manifest,
    pub ran: usize,
    pub skipped: usize,
    pub failed: usize,
}

/// Stable run id from the instance bytes, the algorithm spec and the seed.
pub fn run_id(instance_bytes: &[u8], algorithm: &AlgorithmSpec, seed: u64) -> Result<String> {
    let mut h = Sha256::new();
    h.update(Sha256::digest(instance_bytes));
    h.update(serde_json::to_vec(algorithm)?);
    h.update(seed.to_le_bytes());
    Ok(hex::encode(&h.finalize()[..12]))
}

struct Job<'a> {
    id: String,
    instance: &'a str,
    algorithm: &'a AlgorithmSpec,
    seed: u64,
    objective: &'a std::result::Result<Objective, String>,
}

/// Runs every combination into `out_dir/traces/<id>.json`. Runs whose trace
/// already exists are skipped; failures are recorded, never fatal.
pub fn run_batch(config: &SweepConfig, out_dir: &Path, jobs: usize) -> Result<BatchReport> {
    let trace_dir = out_dir.join(TRACE_DIR);
    std::fs::create_dir_all(&trace_dir)?;

    let mut loaded: BTreeMap<String, (Vec<u8>, std::result::Result<Objective, String>)> = BTreeMap::new();
    let mut names = Vec::with_capacity(config.instances.len());
    for path in &config.instances {
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        let (bytes, objective) = match std::fs::read(path) {
            Ok(bytes) => {
                let obj = std::str::from_utf8(&bytes)
                    .map_err(|e| Error::Config(e.to_string()))
                    .and_then(Problem::from_json)
                    .and_then(Objective::new)
                    .map_err(|e| e.to_string());
                (bytes, obj)
            }
            Err(e) => (path.display().to_string().into_bytes(), Err(e.to_string())),
        };
        names.push(name.clone());
        loaded.insert(name, (bytes, objective));
    }

    let mut jobs_list = Vec::new();
    for name in &names {
        let (bytes, objective) = &loaded[name];
        for algorithm in &config.algorithms {
            for &seed in &config.seeds {
                jobs_list.push(Job { id: run_id(bytes, algorithm, seed)?, instance: name, algorithm, seed, objective });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<(ManifestEntry, bool)> = pool.install(|| {
        jobs_list
            .par_iter()
            .map(|job| {
                let file = format!("{TRACE_DIR}/{}.json", job.id);
                let path = out_dir.join(&file);
                let mut entry = ManifestEntry {
                    id: job.id.clone(),
                    instance: job.instance.to_string(),
                    algorithm: job.algorithm.label(),
                    seed: job.seed,
                    status: RunStatus::Ok,
                    trace: Some(file),
                    error: None,
                };
                if RunTrace::load(&path).is_ok() {
                    return (entry, true);
                }
                let outcome = match job.objective {
                    Ok(obj) => catch_unwind(AssertUnwindSafe(|| job.algorithm.run(obj, job.seed, job.instance)))
                        .unwrap_or_else(|_| Err(Error::Config("run panicked".into())))
                        .and_then(|t| t.save(&path)),
                    Err(msg) => Err(Error::InvalidInstance(msg.clone())),
                };
                if let Err(e) = outcome {
                    log::warn!("run {} ({} on {}, seed {}) failed: {e}", job.id, entry.algorithm, job.instance, job.seed);
                    entry.status = RunStatus::Failed;
                    entry.trace = None;
                    entry.error = Some(e.to_string());
                }
                (entry, false)
            })
            .collect()
    });

    let mut report = BatchReport::default();
    for (entry, skipped) in results {
        if skipped {
            report.skipped += 1;
        } else if entry.status == RunStatus::Failed {
            report.failed += 1;
        } else {
            report.ran += 1;
        }
        report.manifest.entries.push(entry);
    }
    std::fs::write(out_dir.join(MANIFEST_FILE), serde_json::to_string_pretty(&report.manifest)? + "\n")?;
    Ok(report)
}

/// Traces of every successful manifest entry under `dir`.
pub fn load_traces(dir: &Path) -> Result<Vec<RunTrace>> {
    let manifest = Manifest::load(dir)?;
    manifest
        .entries
        .iter()
        .filter_map(|e| e.trace.as_ref())
        .map(|t| RunTrace::load(&dir.join(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::generate_maxcut;

    fn write_instances(dir: &Path, count: u64) -> Vec<PathBuf> {
        (0..count)
            .map(|s| {
                let p = dir.join(format!("g{s}.json"));
                Problem::MaxCut(generate_maxcut(6, s).unwrap()).save(&p).unwrap();
                p
            })
            .collect()
    }

    #[test]
    fn empty_sweep() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_batch(&SweepConfig::default(), dir.path(), 2).unwrap();
        assert!(r.manifest.entries.is_empty());
        assert_eq!(Manifest::load(dir.path()).unwrap(), Manifest::default());
    }

    #[test]
    fn cardinality_idempotence_and_failures() {
        let dir = tempfile::tempdir().unwrap();
        let mut instances = write_instances(dir.path(), 2);
        let mut spec = FvqeSpec::new(AnsatzKind::Iqp, Preset::Hp2);
        spec.steps = Some(3);
        let cfg = SweepConfig {
            instances: instances.clone(),
            algorithms: vec![AlgorithmSpec::Fvqe(spec), AlgorithmSpec::Bfs { budget: 16 }],
            seeds: vec![1, 2],
        };
        let out = dir.path().join("sweep");
        let r = run_batch(&cfg, &out, 2).unwrap();
        assert_eq!((r.ran, r.skipped, r.failed), (8, 0, 0));
        assert_eq!(std::fs::read_dir(out.join(TRACE_DIR)).unwrap().count(), 8);
        let again = run_batch(&cfg, &out, 2).unwrap();
        assert_eq!((again.ran, again.skipped), (0, 8));
        assert_eq!(load_traces(&out).unwrap().len(), 8);

        instances.push(dir.path().join("missing.json"));
        let cfg = SweepConfig { instances, ..cfg };
        let r = run_batch(&cfg, &out, 2).unwrap();
        assert_eq!((r.ran, r.skipped, r.failed), (0, 8, 4));
        assert_eq!(r.manifest.failures(), 4);
    }

    #[test]
    fn ids_depend_on_everything() {
        let a = AlgorithmSpec::Bfs { budget: 10 };
        let id = run_id(b"x", &a, 1).unwrap();
        assert_eq!(id, run_id(b"x", &a, 1).unwrap());
        assert_ne!(id, run_id(b"y", &a, 1).unwrap());
        assert_ne!(id, run_id(b"x", &a, 2).unwrap());
        assert_ne!(id, run_id(b"x", &AlgorithmSpec::Bfs { budget: 11 }, 1).unwrap());
    }

    #[test]
    fn custom_preset_needs_values() {
        let mut s = FvqeSpec::new(AnsatzKind::Classical, Preset::Hp1);
        s.preset = None;
        assert!(s.trainer_config(8).is_err());
        s.shots = Some(10);
        s.tau = Some(1.0);
        s.eta = Some(0.1);
        assert_eq!(s.trainer_config(8).unwrap().hyper.shots, 10);
    }
}
