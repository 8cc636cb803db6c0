use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pda_press::corpus;
use pda_press::exec::{par_map, seq_map};
use pda_press::translate::udpda_to_indicator;
use pda_press::udpda::NormalUdpda;

fn machines(count: usize) -> Vec<NormalUdpda> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..count)
        .map(|_| corpus::random_normal(&mut rng, 12, 4))
        .collect()
}

fn translate_size(m: &NormalUdpda) -> usize {
    udpda_to_indicator(m).map(|ip| ip.size()).unwrap_or(0)
}

fn bench_translation(c: &mut Criterion) {
    let mut group = c.benchmark_group("udpda_to_indicator");
    for count in [64, 256, 1024] {
        let corpus = machines(count);
        group.bench_with_input(BenchmarkId::new("sequential", count), &corpus, |b, ms| {
            b.iter(|| black_box(seq_map(ms, translate_size)))
        });
        group.bench_with_input(BenchmarkId::new("par_map", count), &corpus, |b, ms| {
            b.iter(|| black_box(par_map(ms, translate_size)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_translation);
criterion_main!(benches);
