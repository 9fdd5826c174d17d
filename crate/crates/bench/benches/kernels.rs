use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use f1forge::delta::{durov_check, normalize};
use f1forge::differentials::{partial_n, truncated_presentation};
use f1forge::genring::axiom_suite;
use f1forge::spectra::{Involution, Spectral};
use f1forge::zeta::{zeta_padic, zeta_real, Mode};
use f1forge::{GenRing, RuleSet, Term};
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::hint::black_box;

fn zeta(c: &mut Criterion) {
    c.bench_function("zeta_padic_exact_p5_n6", |b| {
        b.iter(|| zeta_padic(5, black_box(2.0), 6, Mode::Exact, 0, 1).unwrap())
    });
    c.bench_function("zeta_padic_mc_10k", |b| {
        b.iter(|| zeta_padic(3, black_box(2.0), 4, Mode::Mc, 10_000, 1).unwrap())
    });
    c.bench_function("zeta_real_quad_n8", |b| b.iter(|| zeta_real(black_box(2.5), 8, Mode::Quad, 0, 1).unwrap()));
}

fn differentials(c: &mut Criterion) {
    c.bench_function("partial_n_1_to_1000", |b| {
        b.iter(|| (1..=1000u64).map(|n| partial_n(black_box(n)).coeffs().len()).sum::<usize>())
    });
    c.bench_function("presentation_b12", |b| b.iter(|| truncated_presentation(black_box(12), true).unwrap()));
}

fn terms(c: &mut Criterion) {
    let rules = RuleSet::with_total_comm();
    c.bench_function("normalize_random_term", |b| {
        let mut rng = StdRng::seed_from_u64(3);
        b.iter_batched(
            || Term::random(2, 3, 3, 4, &mut rng),
            |t| normalize(&t, &rules, 10_000).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("durov_total_comm", |b| b.iter(|| durov_check(&rules, 10_000).unwrap()));
}

fn rings(c: &mut Criterion) {
    let zmod6 = GenRing::parse("G:zmod:6").unwrap();
    c.bench_function("axiom_suite_zmod6_100", |b| b.iter(|| axiom_suite(&zmod6, 100, black_box(5))));
    let prod = GenRing::parse("prod(G:zmod:6,G:zmod:2)").unwrap();
    c.bench_function("spectrum_zmod6_x_zmod2", |b| {
        b.iter(|| Spectral::new(&prod, Involution::Native).unwrap().enumerate().unwrap())
    });
}

criterion_group!(benches, zeta, differentials, terms, rings);
criterion_main!(benches);
