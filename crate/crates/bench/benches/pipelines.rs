use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hsp_core::combinatorics::{enumerate_matchings, Partition};
use hsp_core::measurement::{observation_distribution, RegisterContext};
use hsp_core::oracle::{involution_subgroup, reduced_row_states};
use hsp_core::spectral::rsk_shape;
use hsp_core::yor::Irrep;

fn bench_yor_build(c: &mut Criterion) {
    let lam = Partition::new(vec![4, 2, 2]).unwrap();
    c.bench_function("irrep_build_8_422", |b| {
        b.iter(|| Irrep::build(std::hint::black_box(&lam)).unwrap())
    });
}

fn bench_observation(c: &mut Criterion) {
    let lam = Partition::new(vec![4, 2]).unwrap();
    let mu = Partition::new(vec![3, 2, 1]).unwrap();
    let ctx = RegisterContext::new(6, &[lam, mu], None).unwrap();
    let m = enumerate_matchings(6).unwrap().into_iter().next().unwrap();
    c.bench_function("observation_n6_pair", |b| {
        b.iter(|| observation_distribution(std::hint::black_box(&ctx), Some(&m)).unwrap())
    });
}

fn bench_oracle_reduction(c: &mut Criterion) {
    let m = enumerate_matchings(4).unwrap().into_iter().next().unwrap();
    let subgroup = involution_subgroup(&m);
    c.bench_function("oracle_reduced_states_n4", |b| {
        b.iter(|| reduced_row_states(4, std::hint::black_box(&subgroup)).unwrap())
    });
}

fn bench_rsk_sampling(c: &mut Criterion) {
    c.bench_function("rsk_shape_n100", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(5),
            |mut rng| rsk_shape(100, &mut rng),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_yor_build,
    bench_observation,
    bench_oracle_reduction,
    bench_rsk_sampling
);
criterion_main!(benches);
