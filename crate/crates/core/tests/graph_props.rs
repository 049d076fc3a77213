use gbs_core::graph::{graphs_equal_up_to_relabeling, normalize_signs, reduce};
use gbs_core::iso::are_isomorphic;
use gbs_core::moves::apply_collapse;
use gbs_core::smc::has_smc;
use gbs_core::{parse_graph, serialize_graph, GbsError, LabeledGraph, SearchBudget};
use proptest::prelude::*;

fn label() -> impl Strategy<Value = i64> {
    proptest::sample::select(vec![1, 1, 1, -1, 2, 3, 4, 6, -2, -3])
}

/// Connected graphs with at most four vertices and six edges.
fn graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=4)
        .prop_flat_map(|nv| {
            let tree = proptest::collection::vec((0..nv, label(), label()), nv - 1);
            let extra = proptest::collection::vec((0..nv, 0..nv, label(), label()), 0..=(7 - nv));
            (Just(nv), tree, extra)
        })
        .prop_map(|(nv, tree, extra)| {
            let mut text = (0..nv).map(|v| format!("v{v}")).collect::<Vec<_>>().join(" ");
            let mut k = 0;
            for (i, (parent, a, b)) in tree.into_iter().enumerate() {
                k += 1;
                text.push_str(&format!("; e{k}: v{} v{} {a} {b}", parent % (i + 1), i + 1));
            }
            for (u, w, a, b) in extra {
                k += 1;
                text.push_str(&format!("; e{k}: v{u} v{w} {a} {b}"));
            }
            parse_graph(&text).unwrap()
        })
}

/// Collapses in the order given by `picks`, cycling through the available
/// choices.
fn reduce_in_order(g: &LabeledGraph, picks: &[usize]) -> LabeledGraph {
    let mut cur = g.clone();
    for step in 0.. {
        let options: Vec<_> =
            cur.half_edges().filter(|&h| cur.label(h).abs() == 1 && cur.origin(h) != cur.terminus(h)).collect();
        if options.is_empty() {
            return cur;
        }
        let h = options[picks[step % picks.len()] % options.len()];
        cur = apply_collapse(&cur, h).unwrap();
    }
    unreachable!()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reductions_agree_up_to_slides(g in graph(), picks in proptest::collection::vec(0usize..8, 1..6)) {
        match reduce(&g) {
            Ok((r, seq)) => {
                prop_assert_eq!(seq.replay(&g, false).unwrap(), r.clone());
                let other = reduce_in_order(&g, &picks);
                if graphs_equal_up_to_relabeling(&r, &other).is_none() {
                    let budget = SearchBudget::default();
                    let plain = |x: &LabeledGraph| {
                        x.is_rose() && x.edge_count() <= 3 && normalize_signs(x).0.all_positive() && has_smc(x, &budget).is_no()
                    };
                    if plain(&r) || plain(&other) {
                        prop_assert!(other.is_rose() && r.is_rose() && r.edge_count() == other.edge_count());
                        prop_assert!(are_isomorphic(&r, &other, &budget).unwrap().is_yes(), "{} vs {}", r, other);
                    }
                }
            }
            Err(GbsError::ElementaryGroup(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn sign_normalization_is_undone_by_its_record(g in graph()) {
        let (n, m) = normalize_signs(&g);
        prop_assert_eq!(m.apply(&n).unwrap(), g);
    }

    #[test]
    fn text_round_trip(g in graph()) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }
}

/// Collapse order matters: three parallel edges give two different roses
/// depending on which edge is shrunk first.
#[test]
fn collapse_order_changes_the_rose() {
    let g = parse_graph("u w; a: u w 1 1; b: u w 1 2; c: u w 1 1").unwrap();
    let x = apply_collapse(&g, g.half_edge("a").unwrap()).unwrap();
    let y = apply_collapse(&g, g.half_edge("b").unwrap()).unwrap();
    assert!(graphs_equal_up_to_relabeling(&x, &y).is_none(), "{x} vs {y}");
    assert_eq!(reduce(&x).unwrap().0, x);
    assert_eq!(reduce(&y).unwrap().0, y);
}
