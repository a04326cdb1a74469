use fvqe::cost::Objective;
use fvqe::engine::{AnsatzKind, Preset};
use fvqe::harness::{analyze_dir, emit_plot_data, load_traces, run_batch, AlgorithmSpec, FvqeSpec, SweepConfig};
use fvqe::harness::plot::load_plot_data;
use fvqe::instances::{generate_atsp, generate_maxcut};
use fvqe::Problem;

#[test]
fn sweep_to_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let mut instances = Vec::new();
    for s in 0..2 {
        let p = dir.path().join(format!("g{s}.json"));
        Problem::from(generate_maxcut(8, s).unwrap()).save(&p).unwrap();
        instances.push(p);
    }
    let p = dir.path().join("tsp.json");
    Problem::from(generate_atsp(6, 9).unwrap()).save(&p).unwrap();
    instances.push(p);

    let mut fvqe = FvqeSpec::new(AnsatzKind::Iqp, Preset::Hp2);
    fvqe.budget = Some(3000);
    let mut classical = FvqeSpec::new(AnsatzKind::Classical, Preset::Hp1);
    classical.budget = Some(3000);
    let config = SweepConfig {
        instances,
        algorithms: vec![
            AlgorithmSpec::Fvqe(fvqe),
            AlgorithmSpec::Fvqe(classical),
            AlgorithmSpec::Bfs { budget: 3000 },
            AlgorithmSpec::Sa { t_final: 0.01, budget: 3000 },
        ],
        seeds: vec![1, 2],
    };
    let out = dir.path().join("sweep");
    let report = run_batch(&config, &out, 2).unwrap();
    assert_eq!((report.ran, report.failed), (24, 0));

    let traces = load_traces(&out).unwrap();
    assert_eq!(traces.len(), 24);
    for t in &traces {
        assert!(t.total_samples <= 3000);
        assert!(t.points.windows(2).all(|w| w[0].samples < w[1].samples && w[0].best_ratio < w[1].best_ratio));
        let obj = Objective::new(Problem::load(&dir.path().join(format!("{}.json", t.instance))).unwrap()).unwrap();
        let best = t.best.as_ref().unwrap();
        assert!((obj.raw_word(best.x.word()) - best.cost).abs() < 1e-12);
    }

    let (analysis, _) = analyze_dir(&out).unwrap();
    assert!(!analysis.curves.is_empty() && !analysis.success.is_empty());
    let plots = out.join("plots");
    emit_plot_data(&analysis, &plots).unwrap();
    assert_eq!(load_plot_data(&plots).unwrap().success.len(), analysis.success.len());
}
