use criterion::{criterion_group, criterion_main, Criterion};
use gsqueeze_core::eigenstates::{build_state, StateSpec};
use gsqueeze_core::fockspace::evolve_u;
use gsqueeze_core::momentum3::Synthesizer;
use gsqueeze_core::specfun::{bessel_j0, bessel_y0, genhyp_unit};
use std::hint::black_box;

fn special_functions(c: &mut Criterion) {
    c.bench_function("genhyp_unit k=4 alpha=1", |b| b.iter(|| genhyp_unit(black_box(4), black_box(1)).unwrap()));
    c.bench_function("bessel j0+y0 over 100 points", |b| {
        b.iter(|| {
            (1..=100)
                .map(|i| {
                    let x = 0.37 * i as f64;
                    bessel_j0(black_box(x)) + bessel_y0(black_box(x)).unwrap()
                })
                .sum::<f64>()
        })
    });
}

fn states(c: &mut Criterion) {
    c.bench_function("build_state k=3 m_max=1e5", |b| {
        b.iter(|| build_state(StateSpec::new(3, black_box(1), 100_000).unwrap()).unwrap())
    });
}

fn evolution(c: &mut Criterion) {
    let dim = 512;
    let v = build_state(StateSpec::fitting(3, 0, dim).unwrap()).unwrap().to_fock(dim).unwrap();
    let mut group = c.benchmark_group("evolve_u");
    group.sample_size(10);
    group.bench_function("k=3 dim=512 tau=0.05", |b| b.iter(|| evolve_u(3, black_box(0.05), &v, 1e-10).unwrap()));
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let synth = Synthesizer::new(0, 20_000).unwrap();
    c.bench_function("synthesize psi0 at p=1.7, 2e4 terms", |b| b.iter(|| synth.eval(black_box(1.7)).unwrap()));
}

criterion_group!(benches, special_functions, states, evolution, synthesis);
criterion_main!(benches);
