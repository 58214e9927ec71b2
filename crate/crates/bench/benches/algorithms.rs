use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quivinv_core::linalg::RatMatrix;
use quivinv_core::local_model::{multiplicity, tangent_dim, DecompositionSpec, SummandKind, SummandSpec};
use quivinv_core::oracle::{check_spanning, fft_check, SpanOptions, DEFAULT_GUARD_RAIL};
use quivinv_core::pfaffian_so::{pfaffian_identity_check, PfaffianContext, generic_degree_report};
use quivinv_core::suite::bundled_instances;
use quivinv_core::{build_doubled, enumerate_cycles, evaluate::Evaluator, gram_matrix, rng, Representation};

fn words(c: &mut Criterion) {
    let inst = bundled_instances().into_iter().find(|i| i.name == "mixed-triangle").unwrap();
    let dq = build_doubled(&inst.quiver);
    c.bench_function("enumerate_cycles/mixed-triangle/len6", |b| {
        b.iter(|| enumerate_cycles(black_box(&dq), 6))
    });
    let forms = gram_matrix(&inst.quiver, &inst.alpha).unwrap();
    let eval = Evaluator::new(&dq, &forms);
    let ws = enumerate_cycles(&dq, 4);
    let rho = Representation::random(&inst.quiver, &inst.alpha, &mut rng::stream(1, 0), 100);
    c.bench_function("evaluate/mixed-triangle/all-words-len4", |b| {
        b.iter(|| {
            for w in &ws {
                black_box(eval.evaluate(w, black_box(&rho)).unwrap());
            }
        })
    });
}

fn oracle(c: &mut Criterion) {
    c.bench_function("fft_check/2,2,2", |b| b.iter(|| fft_check(2, 2, 2, DEFAULT_GUARD_RAIL).unwrap()));
    let inst = bundled_instances()
        .into_iter()
        .find(|i| i.name == "orthogonal-two-loops-2")
        .unwrap();
    let opts = SpanOptions::default();
    c.bench_function("check_spanning/orthogonal-two-loops-2/d4", |b| {
        b.iter(|| check_spanning(&inst.quiver, &inst.alpha, 4, &opts).unwrap())
    });
}

fn linalg(c: &mut Criterion) {
    let n = 12;
    let data: Vec<i64> = (0..n * n).map(|k| ((k * 7919) % 23) as i64 - 11).collect();
    let m = RatMatrix::from_i64(n, n, &data);
    c.bench_function("rank/12x12", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("det/12x12", |b| b.iter(|| black_box(&m).det()));
}

fn pfaffian(c: &mut Criterion) {
    c.bench_function("pfaffian_identity/sizes-2-8/x20", |b| {
        b.iter(|| pfaffian_identity_check(&[2, 4, 6, 8], 20, 3).unwrap())
    });
    let ctx = PfaffianContext::new(4, 1).unwrap();
    c.bench_function("degree_report/W4-m1/d4", |b| {
        b.iter(|| generic_degree_report(&ctx, 4, DEFAULT_GUARD_RAIL).unwrap())
    });
}

fn local(c: &mut Criterion) {
    let spec = DecompositionSpec::orthogonal(
        3,
        (0..4)
            .map(|i| SummandSpec::new(SummandKind::OrthogonalStable, 1 + i % 2, 1))
            .collect(),
    );
    c.bench_function("multiplicity/n4-g3", |b| b.iter(|| multiplicity(black_box(&spec)).unwrap()));
    c.bench_function("tangent_dim/n4-g3", |b| b.iter(|| tangent_dim(black_box(&spec)).unwrap()));
}

criterion_group!(benches, words, oracle, linalg, pfaffian, local);
criterion_main!(benches);
