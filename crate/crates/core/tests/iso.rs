use gbs_core::iso::are_isomorphic;
use gbs_core::oracle::oracle_bfs;
use gbs_core::sample::{random_rose, random_slide_walk};
use gbs_core::smc::has_smc;
use gbs_core::{Decision, LabeledGraph, SearchBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn non_ascending_rose(rng: &mut ChaCha8Rng, max_label: i64) -> LabeledGraph {
    let budget = SearchBudget::default();
    loop {
        let n = rng.gen_range(2..=3);
        let g = random_rose(rng, n, max_label);
        if has_smc(&g, &budget).is_no() {
            return g;
        }
    }
}

#[test]
fn slide_walks_round_trip() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut with_mobile = 0;
    for _ in 0..500 {
        let g = non_ascending_rose(&mut rng, 30);
        let len = rng.gen_range(0..=8);
        let (_, h) = random_slide_walk(&mut rng, &g, len, 2);
        match are_isomorphic(&g, &h, &budget).unwrap() {
            Decision::Yes { witness } => {
                witness.verify(&g, &h).unwrap();
                with_mobile += usize::from(!witness.mobile.is_empty());
            }
            other => panic!("{g} -> {h}: {other:?}"),
        }
    }
    eprintln!("{with_mobile} round trips used mobile-edge slides");
}

#[test]
fn decisions_are_symmetric() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut conclusive = 0;
    while conclusive < 200 {
        let a = non_ascending_rose(&mut rng, 12);
        let b = if rng.gen_bool(0.5) {
            random_slide_walk(&mut rng, &a, 4, 2).1
        } else {
            let mut labels: Vec<(i64, i64)> = a.edges().iter().map(|e| (e.labels[0], e.labels[1])).collect();
            let i = rng.gen_range(0..labels.len());
            labels[i].1 *= rng.gen_range(2..=3);
            LabeledGraph::rose(&labels).unwrap()
        };
        if !has_smc(&b, &budget).is_no() {
            continue;
        }
        let (x, y) = (are_isomorphic(&a, &b, &budget).unwrap(), are_isomorphic(&b, &a, &budget).unwrap());
        if x.is_inconclusive() || y.is_inconclusive() {
            continue;
        }
        assert_eq!(x.is_yes(), y.is_yes(), "{a} vs {b}");
        conclusive += 1;
    }
}

#[test]
fn brute_force_agrees() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (mut exhausted, mut positive) = (0, 0);
    for _ in 0..300 {
        let a = non_ascending_rose(&mut rng, 12);
        let b =
            if rng.gen_bool(0.5) { random_slide_walk(&mut rng, &a, 3, 1).1 } else { non_ascending_rose(&mut rng, 12) };
        let oracle = oracle_bfs(&a, &b, 1_000_000, 10).unwrap();
        if oracle.is_inconclusive() {
            continue;
        }
        exhausted += 1;
        positive += usize::from(oracle.is_yes());
        let r = are_isomorphic(&a, &b, &budget).unwrap();
        assert_eq!(r.is_yes(), oracle.is_yes(), "{a} vs {b}: {r:?}");
        assert!(!r.is_inconclusive());
    }
    assert!(exhausted > 100 && positive > 20, "{exhausted} exhausted, {positive} positive");
}

/// Labels of the form 2^a 3^b 5^c up to 200, where mobile edges on
/// non-ascending roses are common enough to sample.
fn smooth_rose(rng: &mut ChaCha8Rng, n: usize) -> LabeledGraph {
    let mut label = || loop {
        let v = 2i64.pow(rng.gen_range(0..5)) * 3i64.pow(rng.gen_range(0..4)) * 5i64.pow(rng.gen_range(0..3));
        if (2..=200).contains(&v) {
            return v;
        }
    };
    let labels: Vec<(i64, i64)> = (0..n).map(|_| (label(), label())).collect();
    LabeledGraph::rose(&labels).unwrap()
}

#[test]
fn mobile_round_trips() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut sources = vec![LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap()];
    while sources.len() < 12 {
        let g = smooth_rose(&mut rng, 3);
        let mobile = gbs_core::ascending::count_mobile_edges(&g, &budget);
        if has_smc(&g, &budget).is_no() && mobile.known().is_some_and(|&k| k > 0) {
            sources.push(g);
        }
    }
    let mut used = 0;
    for g in &sources {
        for _ in 0..10 {
            let len = rng.gen_range(1..=8);
            let (_, h) = random_slide_walk(&mut rng, g, len, 2);
            match are_isomorphic(g, &h, &budget).unwrap() {
                Decision::Yes { witness } => {
                    witness.verify(g, &h).unwrap();
                    used += usize::from(witness.mobile.iter().any(|s| !s.is_empty()));
                }
                other => panic!("{g} -> {h}: {other:?}"),
            }
        }
    }
    assert!(used > 20, "only {used} certificates slide a mobile edge");
}
