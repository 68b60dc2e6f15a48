use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qhankel::asym::weighted_exponent_sum;
use qhankel::exact::rat;
use qhankel::hankel::{factorize, hankel_det, hankel_det_ball};
use qhankel::qseq::{NumericSeq, Param, Seed, SeqContext};
use qhankel::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn symbolic_determinant(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbolic_det");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 4), &exec, |b, &exec| {
            b.iter(|| hankel_det(&SeqContext::symbolic(), black_box(4), exec).unwrap())
        });
    }
    g.finish();
}

fn factorization(c: &mut Criterion) {
    let mut g = c.benchmark_group("factorize");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 7), &exec, |b, &exec| {
            b.iter(|| {
                let ctx = SeqContext::new(Param::Value(rat(3, 2)), Param::Value(rat(-2, 5)), Seed::Explicit(rat(7, 3)));
                factorize(&ctx, black_box(7), None, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn exponent_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("weighted_exponent_sum");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 10_000), &exec, |b, &exec| {
            b.iter(|| weighted_exponent_sum(black_box(10_000), exec))
        });
    }
    g.finish();
}

fn numeric_determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball_determinants");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    let n_max = 14;
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, n_max), &exec, |b, &exec| {
            b.iter(|| {
                let mut seq = NumericSeq::new(rat(2, 1), rat(1, 1), rat(0, 1), 2048).unwrap();
                let vals = seq.tails(2 * n_max as u32 - 1, exec);
                exec.map_range(1..n_max + 1, |n| hankel_det_ball(&vals, n).unwrap())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, symbolic_determinant, factorization, exponent_sum, numeric_determinants);
criterion_main!(benches);
