use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewore::catalog::{default_preset, finite_preset};

fn mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul");
    for spec in [default_preset("jordan_plane").unwrap(), finite_preset("quantum_plane").unwrap()] {
        let alg = spec.algebra().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs: Vec<_> = (0..32).map(|_| (alg.random(&mut rng, 3, 4), alg.random(&mut rng, 3, 4))).collect();
        group.bench_function(spec.describe(), |b| {
            b.iter(|| {
                for (f, g) in &pairs {
                    black_box(f.mul(g).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn f_op(c: &mut Criterion) {
    let mut group = c.benchmark_group("f_op");
    for name in ["jordan_plane", "q_meromorphic_weyl"] {
        let alg = default_preset(name).unwrap().algebra().unwrap();
        let r = alg.carrier().generator().unwrap();
        group.bench_function(format!("{name} j=8"), |b| {
            b.iter(|| {
                for i in 0..=8 {
                    black_box(alg.f_op(8, i, &r).unwrap());
                }
            })
        });
        group.bench_function(format!("{name} word oracle j=8"), |b| {
            b.iter(|| black_box(alg.f_op_word_oracle(8, 4, &r).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, mul, f_op);
criterion_main!(benches);
