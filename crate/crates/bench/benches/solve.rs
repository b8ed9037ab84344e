use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use factorsat_bench::{semiprime_pattern, SEMIPRIMES};
use factorsat_core::{encode_composite, solve, BitPattern};

fn semiprimes(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_semiprime");
    g.sample_size(10);
    for (product, _, _) in SEMIPRIMES {
        let e = encode_composite(&semiprime_pattern(product), &[]).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(product), e.cnf(), |b, cnf| {
            b.iter(|| solve(black_box(cnf)))
        });
    }
    g.finish();
}

fn unsat(c: &mut Criterion) {
    // 1021 is prime, so the search must exhaust the space
    let e = encode_composite(&BitPattern::of_number(1021), &[]).unwrap();
    c.bench_function("solve_prime_1021", |b| b.iter(|| solve(black_box(e.cnf()))));
}

criterion_group!(benches, semiprimes, unsat);
criterion_main!(benches);
