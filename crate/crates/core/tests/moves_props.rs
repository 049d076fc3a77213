use gbs_core::arith::{lattices_equal, PrimeBasis};
use gbs_core::moves::{
    apply_a_move_minus, apply_a_move_plus, apply_induction, apply_slide, remove_redundant_subcycles,
};
use gbs_core::sample::{random_slide_walk, valid_slides};
use gbs_core::{EdgePath, HalfEdge, LabeledGraph, MoveSequence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rose(n: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = LabeledGraph> {
    proptest::collection::vec((2..=max, 2..=max), n).prop_map(|l| LabeledGraph::rose(&l).unwrap())
}

fn modular_rows(g: &LabeledGraph, basis: &PrimeBasis) -> Vec<Vec<i64>> {
    g.edges()
        .iter()
        .map(|e| {
            let (p, _) = basis.valuations(e.labels[0].unsigned_abs());
            let (q, _) = basis.valuations(e.labels[1].unsigned_abs());
            q.iter().zip(&p).map(|(&q, &p)| i64::from(q) - i64::from(p)).collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn slides_keep_shape_and_modular_image(g in rose(1..=4, 24), pick in any::<prop::sample::Index>()) {
        let options = valid_slides(&g, 2);
        prop_assume!(!options.is_empty());
        let (e, p) = pick.get(&options);
        let h = apply_slide(&g, *e, &EdgePath::new(p.clone())).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        let names = |x: &LabeledGraph| x.edges().iter().map(|e| e.name.clone()).collect::<Vec<_>>();
        prop_assert_eq!(names(&h), names(&g));
        let basis = g.basis();
        prop_assert!(lattices_equal(&modular_rows(&g, &basis), &modular_rows(&h, &basis)).unwrap());
    }

    #[test]
    fn redundant_subcycles_do_not_matter(
        g in rose(2..=3, 12),
        edge in 0usize..3,
        steps in proptest::collection::vec(0usize..6, 1..=6),
    ) {
        let e = HalfEdge::forward(edge % g.edge_count());
        let others: Vec<HalfEdge> = g.half_edges().filter(|h| h.edge != e.edge).collect();
        let path = EdgePath::new(steps.iter().map(|&i| others[i % others.len()]).collect());
        let pruned = remove_redundant_subcycles(&g, &path);
        prop_assert_eq!(apply_slide(&g, e, &path), apply_slide(&g, e, &pruned));
    }

    #[test]
    fn a_moves_round_trip(g in rose(0..=2, 12), k in 2i64..=6, l in 2i64..=6, m in 1i64..=4) {
        let mut labels: Vec<(i64, i64)> = g.edges().iter().map(|e| (e.labels[0], e.labels[1])).collect();
        labels.insert(0, (k, k * l * m));
        let g = LabeledGraph::rose(&labels).unwrap();
        let lp = HalfEdge::forward(0);
        let h = apply_a_move_plus(&g, lp, l, "w", "c").unwrap();
        let c = h.edge_index("c").unwrap();
        prop_assert_eq!(apply_a_move_minus(&h, h.half_edge("f1").unwrap(), c).unwrap(), g);
    }

    #[test]
    fn inductions_round_trip(g in rose(1..=3, 12), n in 2i64..=12, pick in 1i64..=12) {
        let mut labels: Vec<(i64, i64)> = g.edges().iter().map(|e| (e.labels[0], e.labels[1])).collect();
        labels.insert(0, (1, n));
        let g = LabeledGraph::rose(&labels).unwrap();
        let divisors: Vec<i64> = (1..=n).filter(|d| n % d == 0).collect();
        let l = divisors[pick as usize % divisors.len()];
        let lp = HalfEdge::forward(0);
        let up = apply_induction(&g, lp, l, false).unwrap();
        prop_assert_eq!(apply_induction(&up, lp, l, true).unwrap(), g);
    }

    #[test]
    fn sequences_invert(g in rose(2..=3, 16), seed in any::<u64>(), len in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (moves, end) = random_slide_walk(&mut rng, &g, len, 2);
        let mut seq = MoveSequence::new(&g);
        seq.moves = moves;
        prop_assert_eq!(seq.replay(&g, true).unwrap(), end.clone());
        let inv = seq.inverse(&g).unwrap();
        prop_assert_eq!(inv.replay(&end, true).unwrap(), g);
    }
}
