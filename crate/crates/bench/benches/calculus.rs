use std::hint::black_box;

use alcove_calculus::alcoves::{d_value, uparrow_leq};
use alcove_calculus::oracle::{verify_suite, VerifyConfig};
use alcove_calculus::tilting::{domexp_word, theta_product_char};
use alcove_calculus::Weight;
use alcove_calculus_bench::{levi, weights};
use criterion::{criterion_group, criterion_main, Criterion};

fn alcove_geometry(c: &mut Criterion) {
    let datum = levi("B2", &[], 7);
    let rs = datum.root_system();
    let box_weights = weights(2, 21);

    c.bench_function("d_value B2 box 21", |b| {
        b.iter(|| {
            box_weights
                .iter()
                .filter_map(|w| d_value(rs, black_box(w), 7).ok())
                .sum::<i64>()
        })
    });

    let (mu, lambda) = (Weight(vec![-14, -14]), Weight(vec![14, 14]));
    c.bench_function("uparrow_leq B2 distant pair", |b| {
        b.iter(|| uparrow_leq(rs, black_box(&mu), black_box(&lambda), 7))
    });
}

fn orbits(c: &mut Criterion) {
    let datum = levi("A2", &[0, 1], 5);
    let box_weights = weights(2, 15);
    c.bench_function("orbit_rep A2 I=all box 15", |b| {
        b.iter(|| {
            box_weights
                .iter()
                .map(|w| datum.orbit_rep(black_box(w)))
                .collect::<Vec<_>>()
        })
    });
    c.bench_function("n_i A2 I=all box 15", |b| {
        b.iter(|| {
            box_weights
                .iter()
                .filter_map(|w| datum.n_i(black_box(w)).ok())
                .sum::<u64>()
        })
    });
}

fn tilting(c: &mut Criterion) {
    let datum = levi("A2", &[], 5);
    let nu = Weight(vec![8, 8]);
    c.bench_function("domexp + theta product A2 (8,8)", |b| {
        b.iter(|| {
            let word = domexp_word(black_box(&nu), &datum).unwrap();
            theta_product_char(&word.letters, &datum).unwrap()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let mut cfg = VerifyConfig::new("A1", 5);
    cfg.radius = 15;
    cfg.samples = 20;
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("verify_suite A1 p=5", |b| {
        b.iter(|| verify_suite(black_box(&cfg)))
    });
    group.finish();
}

criterion_group!(benches, alcove_geometry, orbits, tilting, oracle);
criterion_main!(benches);
