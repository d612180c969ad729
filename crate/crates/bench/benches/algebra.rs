use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ncann_core::exhaustive::{exhaustive_zero_divisor_search, ExhaustiveSpace};
use ncann_core::rings::armendariz_zero_series;
use ncann_core::sampling::Sampler;
use ncann_core::{
    annihilator, builtin_ring, skew_mul_series, AnnQuery, Bounds, BuiltinName, Endomorphism, Side,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normal_forms(c: &mut Criterion) {
    let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let s = Sampler::new(&pres, &Bounds::new(8, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<_> = (0..64)
        .map(|_| (s.element(&mut rng, 6), s.element(&mut rng, 6)))
        .collect();
    c.bench_function("mul_armendariz_64_pairs", |b| {
        b.iter(|| {
            let mut red = pres.reducer();
            for (x, y) in &pairs {
                black_box(red.mul(x, y).unwrap());
            }
        })
    });
}

fn series(c: &mut Criterion) {
    let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let (f, g) = armendariz_zero_series(&pres, 16).unwrap();
    let id = Endomorphism::identity();
    let b = Bounds::new(16, 2);
    c.bench_function("zero_series_order_16", |bch| {
        bch.iter(|| black_box(skew_mul_series(&f, &g, &id, &pres, &b).unwrap()))
    });
}

fn annihilators(c: &mut Criterion) {
    let pres = builtin_ring(BuiltinName::Section4, 2).unwrap();
    let x = [pres.element("1 + b[0] + a[1]").unwrap()];
    let q = AnnQuery::ring(Side::Right, &x, Bounds::new(4, 3));
    c.bench_function("right_ann_section4_4_3", |b| {
        b.iter(|| black_box(annihilator(&q, &pres).unwrap()))
    });
}

fn exhaustive(c: &mut Criterion) {
    let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let space = ExhaustiveSpace {
        bounds: Bounds::new(2, 2),
        max_support: 2,
        x_degree: 1,
    };
    let mut g = c.benchmark_group("exhaustive");
    g.sample_size(10);
    g.bench_function("armendariz_2_2_xdeg1", |b| {
        b.iter(|| black_box(exhaustive_zero_divisor_search(&pres, &space).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, normal_forms, series, annihilators, exhaustive);
criterion_main!(benches);
