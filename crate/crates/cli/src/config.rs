//! Single-run configuration, read from JSON or flat `key=value` lines.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use fvqe::engine::{AnsatzKind, Preset};
use fvqe::harness::{AlgorithmSpec, FvqeSpec, SweepConfig};

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub instance: Vec<PathBuf>,
    pub algorithm: Option<String>,
    pub ansatz: Option<String>,
    pub preset: Option<String>,
    pub seed: Option<u64>,
    pub repeats: Option<u64>,
    #[serde(alias = "T")]
    pub steps: Option<usize>,
    pub shots: Option<usize>,
    pub tau: Option<f64>,
    pub eta: Option<f64>,
    pub layers: Option<usize>,
    pub budget: Option<u64>,
    pub t_final: Option<f64>,
    pub simulator_cap: Option<usize>,
    pub record_exact: Option<bool>,
}

impl RunConfig {
    /// JSON object or `key=value` lines (`#` starts a comment).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).context("invalid JSON run configuration");
        }
        let mut cfg = RunConfig::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                cfg.set(line)?;
            }
        }
        Ok(cfg)
    }

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment.split_once('=').ok_or_else(|| anyhow!("expected key=value, got {assignment:?}"))?;
        let (k, v) = (k.trim(), v.trim());
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| anyhow!("invalid value {v:?} for {k}"))
        }
        match k {
            "instance" => self.instance.extend(v.split(',').map(|p| PathBuf::from(p.trim()))),
            "algorithm" => self.algorithm = Some(v.into()),
            "ansatz" => self.ansatz = Some(v.into()),
            "preset" => self.preset = Some(v.into()),
            "seed" => self.seed = Some(num(k, v)?),
            "repeats" => self.repeats = Some(num(k, v)?),
            "steps" | "T" => self.steps = Some(num(k, v)?),
            "shots" => self.shots = Some(num(k, v)?),
            "tau" => self.tau = Some(num(k, v)?),
            "eta" => self.eta = Some(num(k, v)?),
            "layers" => self.layers = Some(num(k, v)?),
            "budget" => self.budget = Some(num(k, v)?),
            "t_final" => self.t_final = Some(num(k, v)?),
            "simulator_cap" => self.simulator_cap = Some(num(k, v)?),
            "record_exact" => self.record_exact = Some(num(k, v)?),
            other => bail!("unknown configuration key {other:?}"),
        }
        Ok(())
    }

    pub fn algorithms(&self) -> Result<Vec<AlgorithmSpec>> {
        let names = self.algorithm.as_deref().unwrap_or("fvqe");
        names.split(',').map(|a| self.algorithm_spec(a.trim())).collect()
    }

    fn algorithm_spec(&self, name: &str) -> Result<AlgorithmSpec> {
        let budget = || self.budget.ok_or_else(|| anyhow!("{name} needs a budget"));
        Ok(match name {
            "fvqe" | "vqe" => {
                let ansatz: AnsatzKind = self.ansatz.as_deref().unwrap_or("iqp").parse()?;
                let preset = match (name, self.preset.as_deref()) {
                    ("vqe", _) => Some(Preset::Vqe),
                    (_, Some("custom")) => None,
                    (_, p) => Some(p.unwrap_or("hp2").parse()?),
                };
                AlgorithmSpec::Fvqe(FvqeSpec {
                    ansatz,
                    preset,
                    shots: self.shots,
                    tau: self.tau,
                    eta: self.eta,
                    steps: self.steps,
                    layers: self.layers,
                    budget: self.budget,
                    record_exact: self.record_exact.unwrap_or(false),
                    simulator_cap: self.simulator_cap,
                })
            }
            "bfs" => AlgorithmSpec::Bfs { budget: budget()? },
            "sa" => AlgorithmSpec::Sa { t_final: self.t_final.unwrap_or(0.01), budget: budget()? },
            other => bail!("unknown algorithm {other:?} (expected fvqe, vqe, bfs or sa)"),
        })
    }

    pub fn sweep(&self) -> Result<SweepConfig> {
        if self.instance.is_empty() {
            bail!("no instances given");
        }
        let seed = self.seed.unwrap_or(0);
        let repeats = self.repeats.unwrap_or(1);
        Ok(SweepConfig {
            instances: self.instance.clone(),
            algorithms: self.algorithms()?,
            seeds: (seed..seed + repeats).collect(),
        })
    }
}
