use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use locus_bench::{corpus, fax_net, ping_pong};
use locus_core::criteria::{check_aj, check_cp, check_dr, DEFAULT_PAR_CAP};
use locus_core::engine::{orthogonal, strong_normalize, token_run, Frontier, DEFAULT_FUEL};
use locus_core::mll::Mode;
use locus_core::rewrite::cut::cut_normalize;
use locus_core::rewrite::sequentialize::sequentialize;

fn criteria(c: &mut Criterion) {
    let mut g = c.benchmark_group("criteria");
    for leaves in [8, 16, 32] {
        let s = corpus(Mode::Paraproof, leaves, false, 32);
        g.bench_with_input(BenchmarkId::new("dr", leaves), &s, |b, s| {
            b.iter(|| s.iter().filter(|x| check_dr(x, DEFAULT_PAR_CAP).unwrap().accepted).count())
        });
        g.bench_with_input(BenchmarkId::new("sequentialize", leaves), &s, |b, s| {
            b.iter(|| s.iter().filter(|x| sequentialize(x, false, DEFAULT_PAR_CAP).is_ok()).count())
        });
    }
    let small = corpus(Mode::Paraproof, 8, false, 32);
    g.bench_function("cp/8", |b| b.iter(|| small.iter().filter(|x| check_cp(x, 8).unwrap().accepted).count()));
    let proofs = corpus(Mode::Proof, 10, false, 32);
    g.bench_function("aj/10", |b| b.iter(|| proofs.iter().filter(|x| check_aj(x, 10).unwrap().accepted).count()));
    g.finish();
}

fn cuts(c: &mut Criterion) {
    let mut g = c.benchmark_group("cut_elimination");
    for leaves in [8, 16, 32] {
        let s: Vec<_> = corpus(Mode::Proof, leaves, true, 32)
            .into_iter()
            .filter(|x| check_dr(x, DEFAULT_PAR_CAP).unwrap().accepted)
            .collect();
        g.bench_with_input(BenchmarkId::from_parameter(leaves), &s, |b, s| {
            b.iter(|| s.iter().map(|x| cut_normalize(x, false).unwrap().0.trees.len()).sum::<usize>())
        });
    }
    g.finish();
}

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("engine");
    for k in [16, 64, 256] {
        let (p, n) = ping_pong(k);
        let partners = vec![n.clone()];
        g.bench_with_input(BenchmarkId::new("orthogonal", k), &k, |b, _| {
            b.iter(|| orthogonal(black_box(&p), &partners).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("token", k), &k, |b, _| b.iter(|| token_run(black_box(&p), &n).unwrap()));
    }
    for k in [4, 16, 32] {
        let net = fax_net(k);
        let f = Frontier { depth: 4 * k + 4, fuel: DEFAULT_FUEL, alphabet: None };
        g.bench_with_input(BenchmarkId::new("strong_fax", k), &k, |b, _| {
            b.iter(|| strong_normalize(black_box(&net), &f).unwrap().chronicles.len())
        });
    }
    g.finish();
}

criterion_group!(benches, criteria, cuts, engine);
criterion_main!(benches);
