use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gchain::holim::realize::Realization;
use gchain::holim::{derived_limits, pi_diagram, t_n_oracle};
use gchain::random::{InstanceGen, SeqShape};
use gchain::symseq::{compose_induction, compose_plethysm, Cell};
use gchain::verify::{run_battery, Counts, RunConfig};
use gchain::{Ctx, GradedDim, SignMode};

fn composition(c: &mut Criterion) {
    let mut g = InstanceGen::new(1);
    let a = g.seq(&SeqShape::reduced(4, 3), 8);
    let b = g.seq(&SeqShape::reduced(4, 3), 8);
    let ctx = Ctx::new(SignMode::Unsigned, 8);
    c.bench_function("compose/induction/8", |bench| {
        bench.iter(|| compose_induction(black_box(&a), &b, &ctx, false).unwrap())
    });
    c.bench_function("compose/induction-brute/8", |bench| {
        bench.iter(|| compose_induction(black_box(&a), &b, &ctx, true).unwrap())
    });
    c.bench_function("compose/plethysm/8", |bench| {
        bench.iter(|| compose_plethysm(black_box(&a), &b, &ctx).unwrap())
    });
}

fn limits(c: &mut Criterion) {
    let d = pi_diagram(3, 6, |t| GradedDim::concentrated(0, t.len() as u64)).unwrap();
    let linear = d.to_linear(0).unwrap();
    c.bench_function("split_limit/pi(3,6)", |bench| {
        bench.iter(|| gchain::holim::split_limit(black_box(&d)).unwrap())
    });
    c.bench_function("derived_limits/pi(3,6)", |bench| {
        bench.iter(|| derived_limits(black_box(&linear), None).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let cell = Cell {
        n: 3,
        composition: vec![2, 1],
        signed: false,
        degree: 0,
        multiplicity: 1,
    };
    let f = Realization::new(vec![cell], GradedDim::zero()).unwrap();
    let x = GradedDim::from_pairs([(0, 1), (1, 1)]);
    c.bench_function("tn_oracle/n=2", |bench| {
        bench.iter(|| t_n_oracle(black_box(&f), &x, 2, None, 1, 2000).unwrap())
    });
}

fn battery(c: &mut Criterion) {
    let cfg = RunConfig {
        counts: Counts::smoke(),
        ..RunConfig::default()
    };
    let mut group = c.benchmark_group("battery");
    group.sample_size(10);
    group.bench_function("smoke", |bench| bench.iter(|| run_battery(black_box(&cfg)).unwrap()));
    group.finish();
}

criterion_group!(benches, composition, limits, oracle, battery);
criterion_main!(benches);
