//! `fvqe`: generate instances, run sweeps and turn traces into plot data.

mod config;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fvqe::encodings::bits_for_permutations;
use fvqe::harness::{analyze, analyze_dir, emit_plot_data, load_traces, run_batch, Analysis};
use fvqe::instances::{default_thresholds, generate_atsp, generate_maxcut, spectrum, InstanceMeta};
use fvqe::{Extremes, Problem};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "fvqe", version, about = "F-VQE experiments on a noiseless simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write random instances plus a `.meta.json` sidecar for each.
    Generate(GenerateArgs),
    /// Run a sweep of algorithms over instances and seeds.
    Run(RunArgs),
    /// Compute curves, success tables and gradient fits for a sweep directory.
    Analyze(AnalyzeArgs),
    /// Exact fraction of strings above each ratio threshold.
    Spectrum(SpectrumArgs),
    /// Train with exact gradients recorded and fit their decay with size.
    Grads(GradsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProblemKind {
    Maxcut,
    Atsp,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// Register sizes (qubit counts), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Instances per size.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Seed of the first instance; later ones count upwards.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Sweep file (`instances`, `algorithms`, `seeds`) or a single-run
    /// configuration in JSON or `key=value` form.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` settings applied after the configuration file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Instance files or directories of them.
    #[arg(long, value_delimiter = ',')]
    instances: Vec<PathBuf>,
    /// Comma separated: fvqe, vqe, bfs, sa.
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    ansatz: Option<String>,
    /// hp1..hp4, vqe or custom.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of consecutive seeds per instance.
    #[arg(long)]
    repeats: Option<u64>,
    /// Sample budget per run.
    #[arg(long)]
    budget: Option<u64>,
    /// Parallel runs; defaults to the number of CPUs.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Directory written by `run`.
    #[arg(long)]
    out_dir: PathBuf,
    /// Where the CSV files go; defaults to `<out-dir>/plots`.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    instances: Vec<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct GradsArgs {
    /// MaxCut register sizes; ignored when `--instances` is given.
    #[arg(long, value_delimiter = ',', default_value = "7,9,11,13")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    count: u64,
    #[arg(long, value_delimiter = ',')]
    instances: Vec<PathBuf>,
    #[arg(long, default_value = "iqp")]
    ansatz: String,
    #[arg(long, default_value = "hp2")]
    preset: String,
    #[arg(long, default_value_t = 30)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match dispatch(Cli::parse().command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Generate(a) => generate(&a).map(|_| 0),
        Command::Run(a) => run(&a),
        Command::Analyze(a) => analyze_cmd(&a).map(|_| 0),
        Command::Spectrum(a) => spectrum_cmd(&a).map(|_| 0),
        Command::Grads(a) => grads(&a),
    }
}

/// Vertex or city count for a register of `qubits` qubits.
fn problem_size(kind: ProblemKind, qubits: usize) -> Result<usize> {
    match kind {
        ProblemKind::Maxcut => Ok(qubits + 1),
        ProblemKind::Atsp => (3..=21)
            .find(|&n| bits_for_permutations(n - 1) == Some(qubits))
            .with_context(|| format!("no ATSP city count encodes into exactly {qubits} qubits")),
    }
}

fn write_instances(kind: ProblemKind, sizes: &[usize], count: u64, seed: u64, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for &q in sizes {
        let n = problem_size(kind, q)?;
        for s in seed..seed + count {
            let problem: Problem = match kind {
                ProblemKind::Maxcut => generate_maxcut(n, s)?.into(),
                ProblemKind::Atsp => generate_atsp(n, s)?.into(),
            };
            let stem = format!("{}-q{q}-s{s}", problem.kind());
            let path = dir.join(format!("{stem}.json"));
            problem.save(&path)?;
            let extremes = Extremes::exhaustive(&problem)?;
            InstanceMeta::for_problem(&problem, s, &extremes).save(&dir.join(format!("{stem}.meta.json")))?;
            out.push(path);
        }
    }
    Ok(out)
}

fn generate(a: &GenerateArgs) -> Result<()> {
    let paths = write_instances(a.problem, &a.sizes, a.count, a.seed, &a.out_dir)?;
    println!("wrote {} instances to {}", paths.len(), a.out_dir.display());
    Ok(())
}

/// Files as given; directories contribute their `*.json` minus sidecars.
fn expand_instances(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| {
                    let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                    name.ends_with(".json") && !name.ends_with(".meta.json")
                })
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn sweep_from_args(a: &RunArgs) -> Result<fvqe::harness::SweepConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if let Ok(sweep) = serde_json::from_str::<fvqe::harness::SweepConfig>(&text) {
            if !a.set.is_empty() || !a.instances.is_empty() {
                bail!("a sweep file cannot be combined with --set or --instances");
            }
            return Ok(sweep);
        }
        cfg = RunConfig::parse(&text)?;
    }
    for s in &a.set {
        cfg.set(s)?;
    }
    cfg.instance.extend(a.instances.iter().cloned());
    let overrides = [
        ("algorithm", a.algorithm.clone()),
        ("ansatz", a.ansatz.clone()),
        ("preset", a.preset.clone()),
        ("seed", a.seed.map(|v| v.to_string())),
        ("repeats", a.repeats.map(|v| v.to_string())),
        ("budget", a.budget.map(|v| v.to_string())),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            cfg.set(&format!("{k}={v}"))?;
        }
    }
    cfg.instance = expand_instances(&cfg.instance)?;
    Ok(cfg.sweep()?)
}

fn run(a: &RunArgs) -> Result<i32> {
    let sweep = sweep_from_args(a)?;
    std::fs::create_dir_all(&a.out_dir)?;
    std::fs::write(a.out_dir.join("sweep.json"), serde_json::to_string_pretty(&sweep)? + "\n")?;
    let report = run_batch(&sweep, &a.out_dir, a.jobs)?;
    println!("ran {}, skipped {}, failed {}", report.ran, report.skipped, report.failed);
    for e in report.manifest.entries.iter().filter(|e| e.error.is_some()) {
        eprintln!("failed: {} {} seed {}: {}", e.instance, e.algorithm, e.seed, e.error.as_deref().unwrap_or(""));
    }
    Ok(if report.failed > 0 { 1 } else { 0 })
}

fn print_fits(grads: &fvqe::harness::GradientStats) {
    for s in &grads.sizes {
        println!("N={:<3} median |dL/dtheta| = {:.4e} ({} values)", s.size, s.stats.median, s.stats.count);
    }
    if let (Some(e), Some(p)) = (grads.exponential, grads.polynomial) {
        println!("exponential fit a*b^N:  a={:.4e} b={:.4} R2={:.4}", e.a, e.b, e.r2);
        println!("polynomial fit a*N^b:   a={:.4e} b={:.4} R2={:.4}", p.a, p.b, p.r2);
    }
    if let Some(better) = grads.better_fit() {
        println!("better fit: {better}");
    }
}

fn write_plots(analysis: &Analysis, dir: &Path) -> Result<()> {
    for p in emit_plot_data(analysis, dir)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn analyze_cmd(a: &AnalyzeArgs) -> Result<()> {
    let (analysis, grads) = analyze_dir(&a.out_dir)?;
    for row in &analysis.success {
        let samples = row.samples.map_or_else(|| "-".into(), |s| s.to_string());
        println!(
            "N={:<3} {:<24} A>={:<4} fraction={:.2} samples={samples}",
            row.size, row.algorithm, row.threshold, row.fraction
        );
    }
    print_fits(&grads);
    write_plots(&analysis, &a.plot_dir.clone().unwrap_or_else(|| a.out_dir.join("plots")))
}

fn spectrum_cmd(a: &SpectrumArgs) -> Result<()> {
    let thresholds = default_thresholds();
    let mut analysis = Analysis::default();
    for path in expand_instances(&a.instances)? {
        let problem = Problem::load(&path).with_context(|| format!("loading {}", path.display()))?;
        let report = spectrum(&problem, &thresholds)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        println!("{name}: N={} reference={:.3e}", report.num_qubits, report.reference);
        analysis.add_spectrum(&name, &report);
    }
    write_plots(&analysis, &a.out_dir)
}

fn grads(a: &GradsArgs) -> Result<i32> {
    let instances = if a.instances.is_empty() {
        write_instances(ProblemKind::Maxcut, &a.sizes, a.count, a.seed, &a.out_dir.join("instances"))?
    } else {
        expand_instances(&a.instances)?
    };
    let cfg = RunConfig {
        instance: instances,
        algorithm: Some("fvqe".into()),
        ansatz: Some(a.ansatz.clone()),
        preset: Some(a.preset.clone()),
        seed: Some(a.seed),
        steps: Some(a.steps),
        record_exact: Some(true),
        ..Default::default()
    };
    let report = run_batch(&cfg.sweep()?, &a.out_dir, a.jobs)?;
    println!("ran {}, skipped {}, failed {}", report.ran, report.skipped, report.failed);
    let (analysis, grads) = analyze(&load_traces(&a.out_dir)?);
    print_fits(&grads);
    write_plots(&analysis, &a.out_dir.join("plots"))?;
    Ok(if report.failed > 0 { 1 } else { 0 })
}
