use ballgap_core::hermitian::{orthogonality_certificate, sharpness_map};
use ballgap_core::poly::{monomial_basis, random_hyperplane, restrict_all};
use ballgap_core::rng::substream;
use ballgap_core::{macaulay_rep, op_minus, op_upper, GRat, Poly, PolySubspace};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn macaulay_ops(c: &mut Criterion) {
    c.bench_function("macaulay_rep 10^6 level 6", |b| {
        b.iter(|| macaulay_rep(black_box(1_000_000), black_box(6)))
    });
    c.bench_function("op_minus + op_upper sweep", |b| {
        b.iter(|| {
            (1..500u64)
                .map(|a| op_minus(a, 4).unwrap() + op_upper(a, 4).unwrap())
                .sum::<u64>()
        })
    });
}

fn restricted_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("veronese restricted rank");
    for (n_vars, d) in [(3usize, 3u32), (4, 3), (5, 4)] {
        let comps: Vec<Poly> = monomial_basis(n_vars, d)
            .into_iter()
            .map(|m| Poly::term(m, GRat::one()))
            .collect();
        let h = random_hyperplane(&mut substream(1, 0), n_vars);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n_vars}v d{d}")), &comps, |b, comps| {
            b.iter(|| {
                let r = restrict_all(comps, &h).unwrap();
                PolySubspace::new(n_vars - 1, d, r).unwrap().rank()
            })
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("orthogonality certificate");
    for (k, n) in [(1usize, 4usize), (2, 8), (3, 12)] {
        let f = sharpness_map(k, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("k{k} n{n}")), &f, |b, f| {
            b.iter(|| orthogonality_certificate(f).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = macaulay_ops, restricted_rank, certificate
);
criterion_main!(benches);
