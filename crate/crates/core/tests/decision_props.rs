use gbs_core::ascending::{ascending_loop, is_ascending};
use gbs_core::mobility::{classify_mobile, mobile_edges};
use gbs_core::moves::apply_slide;
use gbs_core::sample::valid_slides;
use gbs_core::smc::{compute_lambda, has_smc};
use gbs_core::{Decision, EdgePath, HalfEdge, LabeledGraph, Outcome, SearchBudget};
use proptest::prelude::*;

fn rose(n: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = LabeledGraph> {
    proptest::collection::vec((2..=max, 2..=max), n).prop_map(|l| LabeledGraph::rose(&l).unwrap())
}

/// Roses over labels with many divisors, so that slides are common.
fn smooth_rose(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = LabeledGraph> {
    let label = || proptest::sample::select(vec![2i64, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 27, 30]);
    proptest::collection::vec((label(), label()), n).prop_map(|l| LabeledGraph::rose(&l).unwrap())
}

fn mobile_names(g: &LabeledGraph) -> Vec<String> {
    match mobile_edges(g, &SearchBudget::default()) {
        Outcome::Known { value } => value.into_iter().map(|i| g.edges()[i].name.clone()).collect(),
        Outcome::Inconclusive { bound } => panic!("{g}: {bound}"),
    }
}

fn flipped(g: &LabeledGraph, edge: usize) -> LabeledGraph {
    let labels: Vec<(i64, i64)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| if i == edge { (e.labels[1], e.labels[0]) } else { (e.labels[0], e.labels[1]) })
        .collect();
    LabeledGraph::rose(&labels).unwrap()
}

/// Replays a slide of `h` along named steps with plain integer arithmetic.
fn replay_label(g: &LabeledGraph, h: HalfEdge, steps: &[String]) -> Option<i128> {
    let label_of = |name: &str| {
        let (base, rev) = name.strip_prefix('~').map_or((name, false), |b| (b, true));
        let e = g.edges().iter().find(|e| e.name == base)?;
        let (here, there) = if rev { (e.labels[1], e.labels[0]) } else { (e.labels[0], e.labels[1]) };
        Some((i128::from(here).abs(), i128::from(there).abs()))
    };
    let mut value = i128::from(g.label(h)).abs();
    for s in steps {
        let (here, there) = label_of(s)?;
        if value % here != 0 {
            return None;
        }
        value = value / here * there;
    }
    Some(value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn slides_preserve_mobility(g in smooth_rose(2..=3), pick in any::<prop::sample::Index>()) {
        let options = valid_slides(&g, 2);
        prop_assume!(!options.is_empty());
        let (e, p) = pick.get(&options);
        let h = apply_slide(&g, *e, &EdgePath::new(p.clone())).unwrap();
        prop_assert_eq!(mobile_names(&g), mobile_names(&h), "{} -> {}", g, h);
    }

    #[test]
    fn mobility_ignores_orientation(g in rose(1..=3, 30), edge in 0usize..3) {
        let budget = SearchBudget::default();
        let edge = edge % g.edge_count();
        let (x, y) = (classify_mobile(&g, edge, &budget), classify_mobile(&flipped(&g, edge), edge, &budget));
        prop_assert_eq!(x.verdict_str(), y.verdict_str());
        if let Some(ev) = x.witness() {
            prop_assert!(ev.verify(&g));
            let q = ev.modulus();
            prop_assert!(q.is_integer() && !q.is_unit());
        }
    }

    #[test]
    fn smc_witnesses_verify_and_survive_slides(g in smooth_rose(1..=3), pick in any::<prop::sample::Index>()) {
        let budget = SearchBudget::default();
        let before = has_smc(&g, &budget);
        prop_assert!(!before.is_inconclusive());
        if let Some(w) = before.witness() {
            prop_assert!(w.verify(&g));
            prop_assert!(w.modulus.is_integer() && !w.modulus.is_unit());
        }
        let asc = is_ascending(&g, &budget).unwrap();
        prop_assert_eq!(asc.verdict_str(), before.verdict_str());
        let options = valid_slides(&g, 2);
        prop_assume!(!options.is_empty());
        let (e, p) = pick.get(&options);
        let h = apply_slide(&g, *e, &EdgePath::new(p.clone())).unwrap();
        prop_assert_eq!(has_smc(&h, &budget).verdict_str(), before.verdict_str(), "{} -> {}", g, h);
    }

    #[test]
    fn ascending_loops_are_strict(g in rose(1..=3, 30)) {
        let budget = SearchBudget::default();
        if let Decision::Yes { witness } = is_ascending(&g, &budget).unwrap() {
            let (h, seq) = ascending_loop(&g, &witness).unwrap();
            prop_assert_eq!(seq.replay(&g, false).unwrap(), h.clone());
            let lp = h.half_edge(&witness.last_edge).unwrap();
            prop_assert!(h.is_loop(lp.edge));
            prop_assert_eq!(h.label(lp).abs(), 1);
            prop_assert!(h.label(lp.bar()).abs() >= 2);
        }
    }

    #[test]
    fn lambda_paths_replay(g in rose(2..=3, 30), edge in 0usize..6) {
        let e = HalfEdge::from_index(edge % (2 * g.edge_count()));
        let cones = compute_lambda(&g, e, &SearchBudget::default()).unwrap();
        for r in &cones.explicit_reachable {
            let mut want: i128 = 1;
            for (&p, &k) in cones.basis.iter().zip(&r.exponents) {
                want *= i128::from(p).pow(k);
            }
            prop_assert_eq!(replay_label(&g, e.bar(), &r.path), Some(want));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn one_roses_follow_divisibility(m in -40i64..=40, n in -40i64..=40) {
        prop_assume!(m != 0 && n != 0);
        let (a, b) = (m.abs(), n.abs());
        let want = a != b && (b % a == 0 || a % b == 0);
        let g = LabeledGraph::rose(&[(m, n)]).unwrap();
        prop_assert_eq!(has_smc(&g, &SearchBudget::default()).is_yes(), want);
    }
}

/// The four-petal example loses its strict monotone cycle after one slide,
/// so preservation is limited to three petals.
#[test]
fn four_petals_break_preservation() {
    let budget = SearchBudget::default();
    let e2 = LabeledGraph::rose(&[(14, 30), (6, 15), (10, 8), (30, 21)]).unwrap();
    let w = has_smc(&e2, &budget).into_witness().unwrap();
    assert_eq!(w.modulus.to_string(), "3");
    let e2p =
        apply_slide(&e2, e2.half_edge("f4").unwrap(), &EdgePath::new(vec![e2.half_edge("~f1").unwrap()])).unwrap();
    assert_eq!(e2p.edges()[3].labels, [14, 21]);
    assert!(has_smc(&e2p, &budget).is_no());
}
