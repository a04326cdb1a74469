use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fvqe::classical::{channels, sample_words, ClassicalAnsatz};
use fvqe::cost::Objective;
use fvqe::engine::{filter_table, Ansatz, AnsatzKind};
use fvqe::instances::{generate_atsp, generate_maxcut};
use fvqe::iqp::{apply_generators, IqpCircuit, Sampler};
use fvqe::{Problem, SeededRng};

fn circuit(n: usize) -> IqpCircuit {
    let c = IqpCircuit::line_min_layers(n).unwrap();
    let thetas: Vec<f64> = (0..c.num_parameters()).map(|k| 0.1 + 0.01 * k as f64).collect();
    c.with_thetas(&thetas).unwrap()
}

fn state_vector(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_generators");
    for n in [10, 14, 18] {
        let circ = circuit(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &circ, |b, circ| {
            b.iter(|| apply_generators(black_box(circ), 29).unwrap())
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_1000");
    for n in [10, 16] {
        let circ = circuit(n);
        let sampler = Sampler::new(&apply_generators(&circ, 29).unwrap().probabilities());
        group.bench_with_input(BenchmarkId::new("iqp", n), &sampler, |b, s| {
            let mut rng = SeededRng::new(1);
            b.iter(|| (0..1000).map(|_| s.draw_word(&mut rng)).fold(0u64, |a, w| a ^ w))
        });
        let ch = channels(&ClassicalAnsatz::from_circuit(&circ));
        group.bench_with_input(BenchmarkId::new("classical", n), &ch, |b, ch| {
            let mut rng = SeededRng::new(1);
            b.iter(|| sample_words(black_box(ch), 1000, &mut rng))
        });
    }
    group.finish();
}

fn costs(c: &mut Criterion) {
    let maxcut: Problem = generate_maxcut(16, 3).unwrap().into();
    let atsp: Problem = generate_atsp(9, 3).unwrap().into();
    for (name, p) in [("maxcut_n16", &maxcut), ("atsp_n9", &atsp)] {
        c.bench_function(&format!("cost_word_4096/{name}"), |b| {
            b.iter(|| (0..4096u64).map(|w| p.cost_word(black_box(w))).sum::<f64>())
        });
    }
    let obj = Objective::new(generate_maxcut(14, 3).unwrap().into()).unwrap();
    c.bench_function("filter_table/maxcut_n14", |b| b.iter(|| filter_table(black_box(&obj), 1.0).unwrap()));
    let ansatz = Ansatz::new(AnsatzKind::Iqp, circuit(13));
    let thetas = ansatz.initial_parameters();
    c.bench_function("prepare/iqp_n13", |b| b.iter(|| ansatz.prepare(black_box(&thetas)).unwrap().probabilities(None)));
}

criterion_group!(benches, state_vector, sampling, costs);
criterion_main!(benches);
