//! Integer cycles and mobile edges.
//!
//! A strict `e`-integer cycle is an `e`-edge path returning to `o(e)` whose
//! modulus is an integer other than `±1`; equivalently, sliding `e` along it
//! returns `e` to its origin with a strictly larger multiple of `λ(e)` as
//! label. The slide space of `e` records the vertex, so the search is exact
//! on every graph, not only on roses.

use serde::Serialize;

use crate::arith::FactoredRational;
use crate::decision::{Decision, Outcome, SearchBudget};
use crate::graph::{HalfEdge, LabeledGraph};
use crate::moves::{is_e_edge_path, EdgePath};
use crate::slide_space::SlideSystem;
use crate::smc::{has_smc_with_last_edge, strict_growth_path, strict_targets, MonotoneCycleWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerCycleWitness {
    pub base_edge: String,
    pub cycle: Vec<String>,
    pub modulus: FactoredRational,
    pub strict: bool,
}

impl IntegerCycleWitness {
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        let (Ok(e), Ok(path)) = (g.half_edge(&self.base_edge), g.resolve_path(&self.cycle)) else {
            return false;
        };
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return false;
        };
        let Ok(q) = g.modulus(&path, &g.basis()) else {
            return false;
        };
        g.origin(first) == g.terminus(last)
            && is_e_edge_path(g, e, &EdgePath::new(path))
            && q.is_integer()
            && self.strict == !q.is_unit()
            && q == self.modulus
    }
}

/// Least strict `e`-integer cycle in (length, lexicographic) order.
pub fn find_strict_integer_cycle(
    g: &LabeledGraph,
    e: HalfEdge,
    budget: &SearchBudget,
) -> Decision<IntegerCycleWitness> {
    let sys = SlideSystem::new(g, e);
    let start = sys.start(g);
    let targets = strict_targets(&start);
    strict_growth_path(&sys, &start, &targets, budget).map(|p| {
        let path = sys.half_edges(&p);
        let w = IntegerCycleWitness {
            base_edge: g.half_edge_name(e),
            cycle: g.path_names(&path),
            modulus: g.modulus(&path, &g.basis()).expect("labels factor over the graph basis"),
            strict: true,
        };
        debug_assert!(w.verify(g));
        w
    })
}

/// Why an edge is mobile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MobilityEvidence {
    MonotoneCycle(MonotoneCycleWitness),
    IntegerCycle(IntegerCycleWitness),
}

impl MobilityEvidence {
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        match self {
            MobilityEvidence::MonotoneCycle(w) => w.verify(g),
            MobilityEvidence::IntegerCycle(w) => w.verify(g),
        }
    }

    pub fn modulus(&self) -> &FactoredRational {
        match self {
            MobilityEvidence::MonotoneCycle(w) => &w.modulus,
            MobilityEvidence::IntegerCycle(w) => &w.modulus,
        }
    }
}

/// `Yes` when the geometric edge is mobile, `No` when it provably is not.
/// Tries monotone cycles ending in `e` then `ē`, then integer cycles for `e`
/// then `ē`.
pub fn classify_mobile(g: &LabeledGraph, edge: usize, budget: &SearchBudget) -> Decision<MobilityEvidence> {
    let e = HalfEdge::forward(edge);
    let mut bound = None;
    let queries: [Box<dyn Fn() -> Decision<MobilityEvidence>>; 4] = [
        Box::new(|| has_smc_with_last_edge(g, e, budget).map(MobilityEvidence::MonotoneCycle)),
        Box::new(|| has_smc_with_last_edge(g, e.bar(), budget).map(MobilityEvidence::MonotoneCycle)),
        Box::new(|| find_strict_integer_cycle(g, e, budget).map(MobilityEvidence::IntegerCycle)),
        Box::new(|| find_strict_integer_cycle(g, e.bar(), budget).map(MobilityEvidence::IntegerCycle)),
    ];
    for q in queries {
        match q() {
            Decision::Yes { witness } => return Decision::yes(witness),
            Decision::No { .. } => {}
            Decision::Inconclusive { bound: b } => bound = bound.or(Some(b)),
        }
    }
    match bound {
        Some(b) => Decision::inconclusive(b),
        None => Decision::no(format!("{} admits no strict monotone or integer cycle", g.edges()[edge].name)),
    }
}

/// Indices of the mobile edges.
pub fn mobile_edges(g: &LabeledGraph, budget: &SearchBudget) -> Outcome<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..g.edge_count() {
        match classify_mobile(g, i, budget) {
            Decision::Yes { .. } => out.push(i),
            Decision::No { .. } => {}
            Decision::Inconclusive { bound } => return Outcome::Inconclusive { bound },
        }
    }
    Outcome::Known { value: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> LabeledGraph {
        LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap()
    }

    #[test]
    fn e1_integer_cycles() {
        let g = e1();
        let budget = SearchBudget::default();
        let w = find_strict_integer_cycle(&g, g.half_edge("~f1").unwrap(), &budget).into_witness().unwrap();
        assert_eq!(w.cycle, ["f3", "f2"]);
        assert_eq!(w.modulus.to_string(), "2");
        assert!(w.verify(&g));
        assert!(find_strict_integer_cycle(&g, g.half_edge("f2").unwrap(), &budget).is_no());
        let bs = LabeledGraph::rose(&[(2, 3)]).unwrap();
        assert!(find_strict_integer_cycle(&bs, HalfEdge::forward(0), &budget).is_no());
    }

    #[test]
    fn e1_mobile_set() {
        let g = e1();
        assert_eq!(mobile_edges(&g, &SearchBudget::default()), Outcome::Known { value: vec![0] });
    }

    #[test]
    fn virtually_ascending_loop_is_mobile() {
        let g = LabeledGraph::rose(&[(2, 4)]).unwrap();
        let ev = classify_mobile(&g, 0, &SearchBudget::default()).into_witness().unwrap();
        assert!(matches!(ev, MobilityEvidence::MonotoneCycle(_)));
        assert!(ev.verify(&g));
    }

    #[test]
    fn non_rose_graphs() {
        // a loop (2, 4) hanging off a second vertex stays mobile.
        let g = crate::graph::parse_graph("a b; c: a b 3 5; l: b b 2 4").unwrap();
        let budget = SearchBudget::default();
        assert!(classify_mobile(&g, g.edge_index("l").unwrap(), &budget).is_yes());
        assert!(classify_mobile(&g, g.edge_index("c").unwrap(), &budget).is_no());
    }
}
