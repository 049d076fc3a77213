use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gbs_core::ascending::is_ascending;
use gbs_core::iso::{are_isomorphic, enumerate_snm};
use gbs_core::mobility::mobile_edges;
use gbs_core::oracle::oracle_bfs;
use gbs_core::smc::has_smc;
use gbs_core::{LabeledGraph, SearchBudget};

fn rose(labels: &[(i64, i64)]) -> LabeledGraph {
    LabeledGraph::rose(labels).unwrap()
}

fn decisions(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let e1 = rose(&[(7, 30), (6, 15), (10, 8)]);
    let e1_slid = rose(&[(7, 60), (6, 15), (10, 8)]);
    let e2 = rose(&[(14, 30), (6, 15), (10, 8), (30, 21)]);
    let e2p = rose(&[(14, 30), (6, 15), (10, 8), (14, 21)]);

    c.bench_function("has_smc/E1", |b| b.iter(|| has_smc(black_box(&e1), &budget)));
    c.bench_function("has_smc/E2", |b| b.iter(|| has_smc(black_box(&e2), &budget)));
    c.bench_function("has_smc/E2p", |b| b.iter(|| has_smc(black_box(&e2p), &budget)));
    c.bench_function("is_ascending/E1", |b| b.iter(|| is_ascending(black_box(&e1), &budget)));
    c.bench_function("mobile_edges/E1", |b| b.iter(|| mobile_edges(black_box(&e1), &budget)));
    c.bench_function("enumerate_snm/E1", |b| b.iter(|| enumerate_snm(black_box(&e1), &budget)));
    c.bench_function("are_isomorphic/E1-E1slid", |b| b.iter(|| are_isomorphic(black_box(&e1), &e1_slid, &budget)));
    c.bench_function("oracle_bfs/E1-E1slid", |b| b.iter(|| oracle_bfs(black_box(&e1), &e1_slid, 10_000, 4)));
}

criterion_group!(benches, decisions);
criterion_main!(benches);
