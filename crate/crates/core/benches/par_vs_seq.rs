//! Compares the data-parallel and sequential execution modes on the two
//! dominant inner loops: the two-sided ideal closure and a full level of
//! seminormal representations.
//!
//! Run with `cargo bench -p partalg`. Building without the default
//! `parallel` feature makes both modes run the sequential path.

use criterion::{criterion_group, criterion_main, Criterion};
use partalg::bratteli::vertices;
use partalg::cellular::{cell_module, IdealChain, LevelCtx};
use partalg::jm::JmTables;
use partalg::level::LevelIndex;
use partalg::par::Mode;
use partalg::seminormal::oracle_rep;
use std::hint::black_box;

fn ideal_chain_at(level: LevelIndex, mode: Mode) -> usize {
    let ctx = LevelCtx::new(level);
    let mut chain = IdealChain::new(&ctx, mode);
    let mut total = 0;
    for v in vertices(level) {
        let m = cell_module(&v, &mut chain, level).unwrap();
        total += m.dim();
    }
    total
}

fn reps_at(level: LevelIndex, mode: Mode) -> usize {
    let ctx = LevelCtx::new(level);
    let mut chain = IdealChain::new(&ctx, mode);
    let jm = JmTables::new(level.strands() as usize);
    let mut total = 0;
    for v in vertices(level) {
        let m = cell_module(&v, &mut chain, level).unwrap();
        let rep = oracle_rep(&m, &jm).unwrap();
        total += rep.dim();
    }
    total
}

fn bench_ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("ideal-chain-level-3-and-a-half");
    g.sample_size(10);
    let lvl = LevelIndex::half(3);
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(ideal_chain_at(lvl, Mode::Parallel)))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| black_box(ideal_chain_at(lvl, Mode::Sequential)))
    });
    g.finish();
}

fn bench_reps(c: &mut Criterion) {
    let mut g = c.benchmark_group("reps-level-2-and-a-half");
    g.sample_size(10);
    let lvl = LevelIndex::half(2);
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(reps_at(lvl, Mode::Parallel)))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| black_box(reps_at(lvl, Mode::Sequential)))
    });
    g.finish();
}

criterion_group!(benches, bench_ideals, bench_reps);
criterion_main!(benches);
