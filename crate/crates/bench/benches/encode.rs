use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use factorsat_bench::all_free;
use factorsat_core::{emit_dimacs, encode_composite, encode_factoring, BitPattern, IntervalMode};

fn encode(c: &mut Criterion) {
    let mut g = c.benchmark_group("encode_composite");
    for n in [8, 16, 32, 64] {
        let p = all_free(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| encode_composite(black_box(p), &[]))
        });
    }
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let p = BitPattern::of_number(39203);
    c.bench_function("encode_factoring_16", |b| {
        b.iter(|| encode_factoring(black_box(&p), 100, 250, IntervalMode::Closed))
    });
}

fn dimacs(c: &mut Criterion) {
    let e = encode_composite(&all_free(32), &[]).unwrap();
    let roles = e.roles();
    c.bench_function("emit_dimacs_32", |b| {
        b.iter(|| emit_dimacs(black_box(e.cnf()), &roles))
    });
}

criterion_group!(benches, encode, factoring, dimacs);
criterion_main!(benches);
