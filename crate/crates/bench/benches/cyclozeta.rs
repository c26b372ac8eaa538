use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclozeta::lvalues::residue;
use cyclozeta::oracle::{count_invariant_sublattices, OracleConfig};
use cyclozeta::series::{coefficient_at, coefficients_up_to};
use cyclozeta::{all_characters, Modulus};

fn modulus(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    for limit in [10_000u64, 1_000_000] {
        g.bench_with_input(BenchmarkId::new("n=5", limit), &limit, |b, &limit| {
            b.iter(|| coefficients_up_to(modulus(5), black_box(limit)).unwrap())
        });
    }
    g.bench_function("coefficient_at n=11 k=999999937*529", |b| {
        b.iter(|| coefficient_at(modulus(11), black_box(999_999_937 * 529)).unwrap())
    });
    g.finish();
}

fn characters(c: &mut Criterion) {
    for n in [20u64, 84] {
        c.bench_function(&format!("all_characters n={n}"), |b| {
            b.iter(|| all_characters(modulus(black_box(n))))
        });
    }
}

fn residues(c: &mut Criterion) {
    for n in [12u64, 84] {
        c.bench_function(&format!("residue n={n}"), |b| {
            b.iter(|| residue(modulus(black_box(n))).unwrap())
        });
    }
}

fn oracle(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for (n, k) in [(5u64, 60u64), (12, 60), (7, 64)] {
        g.bench_function(format!("n={n} k={k}"), |b| {
            b.iter(|| count_invariant_sublattices(modulus(n), black_box(k), &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sieve, characters, residues, oracle);
criterion_main!(benches);
