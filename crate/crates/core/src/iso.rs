//! Isomorphism of non-ascending GBS groups whose reduced graphs are roses
//! with at most three petals.
//!
//! Two such graphs present isomorphic groups exactly when a slide sequence
//! joins them. Slides of non-mobile edges span a finite set S_NM; slides of
//! a mobile edge only change that edge's labels, and each label moves
//! independently inside the slide space of its half-edge. The decision
//! searches S_NM for graphs whose non-mobile part matches the target and
//! then matches the mobile edges one at a time.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{lattices_equal, solve_integer_linear, PrimeBasis};
use crate::ascending::is_ascending;
use crate::decision::{Decision, Outcome, SearchBudget};
use crate::error::{GbsError, Result};
use crate::graph::{
    graphs_equal_up_to_relabeling, normalize_signs, parse_graph, reduce, rose_key, serialize_graph, Edge, GraphMatch,
    HalfEdge, LabeledGraph,
};
use crate::mobility::{classify_mobile, mobile_edges};
use crate::moves::{apply_slide, EdgePath, Move, MoveSequence};
use crate::slide_space::{Completion, SlideSystem};

pub const CERT_FORMAT: &str = "gbs-cert/v1";

/// The non-mobile edges of a rose, kept as a rose of their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonMobileSubgraph {
    pub graph: LabeledGraph,
    pub mobile: Vec<String>,
}

impl NonMobileSubgraph {
    fn new(g: &LabeledGraph, mobile: &[usize]) -> Self {
        let edges: Vec<Edge> =
            g.edges().iter().enumerate().filter(|(i, _)| !mobile.contains(i)).map(|(_, e)| e.clone()).collect();
        NonMobileSubgraph {
            graph: LabeledGraph::new(g.vertices().to_vec(), edges).expect("edges of a rose form a rose"),
            mobile: mobile.iter().map(|&i| g.edges()[i].name.clone()).collect(),
        }
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.graph.edges().iter().map(|e| e.name.clone()).collect()
    }
}

pub fn non_mobile_subgraph(g: &LabeledGraph, budget: &SearchBudget) -> Outcome<NonMobileSubgraph> {
    match mobile_edges(g, budget) {
        Outcome::Known { value } => Outcome::Known { value: NonMobileSubgraph::new(g, &value) },
        Outcome::Inconclusive { bound } => Outcome::Inconclusive { bound },
    }
}

/// A graph of S_NM with the slides reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnmMember {
    pub graph: LabeledGraph,
    pub slides: Vec<Move>,
}

/// Closure of `g` under single-step slides of non-mobile edges, in
/// breadth-first order, one representative per relabeling class.
pub fn enumerate_snm(g: &LabeledGraph, budget: &SearchBudget) -> Decision<Vec<SnmMember>> {
    match mobile_edges(g, budget) {
        Outcome::Known { value } => snm_closure(g, &value, budget.snm_cap),
        Outcome::Inconclusive { bound } => Decision::inconclusive(bound),
    }
}

fn snm_closure(g: &LabeledGraph, mobile: &[usize], cap: usize) -> Decision<Vec<SnmMember>> {
    if cap == 0 {
        return Decision::inconclusive("S_NM exceeds 0 graphs");
    }
    let mut seen = HashSet::from([rose_key(g)]);
    let mut out = vec![SnmMember { graph: g.clone(), slides: Vec::new() }];
    let mut next = 0;
    while next < out.len() {
        let cur = out[next].clone();
        next += 1;
        let h = &cur.graph;
        for e in h.half_edges().filter(|e| !mobile.contains(&e.edge)) {
            for a in h.half_edges_at(h.origin(e)).filter(|a| a.edge != e.edge) {
                let Ok(slid) = apply_slide(h, e, &EdgePath::new(vec![a])) else {
                    continue;
                };
                if !seen.insert(rose_key(&slid)) {
                    continue;
                }
                if out.len() >= cap {
                    return Decision::inconclusive(format!("S_NM exceeds {cap} graphs"));
                }
                let mut slides = cur.slides.clone();
                slides.push(Move::slide(h, e, &[a]));
                out.push(SnmMember { graph: slid, slides });
            }
        }
    }
    Decision::yes(out)
}

/// A slide path of `h` changing `λ(h)` to `value`, leaving every other
/// label alone.
fn reach_label(g: &LabeledGraph, h: HalfEdge, value: i64, budget: &SearchBudget) -> Decision<Vec<HalfEdge>> {
    let sys = SlideSystem::new(g, h);
    let start = sys.start(g);
    let Some(goal) = sys.state_of(start.vertex, value) else {
        return Decision::no(format!("{value} has a prime outside the labels of the graph"));
    };
    if goal == start {
        return Decision::yes(Vec::new());
    }
    let gens: Vec<Vec<i64>> = (0..sys.transitions.len())
        .filter(|&t| t < sys.reverse(t))
        .map(|t| {
            let tr = &sys.transitions[t];
            tr.post.iter().zip(&tr.pre).map(|(&q, &p)| i64::from(q) - i64::from(p)).collect()
        })
        .collect();
    if gens.is_empty() {
        return Decision::no("no other edge to slide over");
    }
    let a: Vec<Vec<i64>> = (0..sys.dim()).map(|i| gens.iter().map(|v| v[i]).collect()).collect();
    let b: Vec<i64> = goal.exps.iter().zip(&start.exps).map(|(&x, &y)| i64::from(x) - i64::from(y)).collect();
    match solve_integer_linear(&a, &b) {
        Ok(Decision::No { reason }) => return Decision::no(format!("exponent system: {reason}")),
        Ok(_) => {}
        Err(e) => return Decision::inconclusive(format!("exponent system: {e}")),
    }
    if let Some(p) = sys.least_path(&start, |s| *s == goal, budget.max_path_len, budget.max_states) {
        return Decision::yes(sys.half_edges(&p));
    }
    match Completion::new(&sys, budget.max_basis) {
        Err(cap) => Decision::inconclusive(format!("completion exceeded {cap} rules")),
        Ok(c) => match c.connect(&sys, &start, &goal) {
            Some(p) => Decision::yes(sys.half_edges(&p)),
            None => Decision::no(format!("{value} is not reachable by sliding {}", g.half_edge_name(h))),
        },
    }
}

/// Slides of `edge` alone giving it the unordered label pair `target`.
fn match_edge(g: &LabeledGraph, edge: usize, target: (i64, i64), budget: &SearchBudget) -> Decision<Vec<Move>> {
    let e = HalfEdge::forward(edge);
    let mut orientations = vec![(target.0, target.1)];
    if target.0 != target.1 {
        orientations.push((target.1, target.0));
    }
    let mut bound = None;
    for (x, y) in orientations {
        let (p, q) = match (reach_label(g, e, x, budget), reach_label(g, e.bar(), y, budget)) {
            (Decision::Yes { witness: p }, Decision::Yes { witness: q }) => (p, q),
            (Decision::No { .. }, _) | (_, Decision::No { .. }) => continue,
            (Decision::Inconclusive { bound: b }, _) | (_, Decision::Inconclusive { bound: b }) => {
                bound = bound.or(Some(b));
                continue;
            }
        };
        let moves = [(e, p), (e.bar(), q)]
            .into_iter()
            .filter(|(_, p)| !p.is_empty())
            .map(|(h, p)| Move::slide(g, h, &p))
            .collect();
        return Decision::yes(moves);
    }
    match bound {
        Some(b) => Decision::inconclusive(b),
        None => Decision::no(format!("{} cannot reach {target:?}", g.edges()[edge].name)),
    }
}

/// Slides of `e` and `ē` only, after which the edge of `e` carries the
/// unordered label pair `target`.
pub fn match_mobile_edge(
    g: &LabeledGraph,
    e: HalfEdge,
    target: (i64, i64),
    budget: &SearchBudget,
) -> Result<Decision<Vec<Move>>> {
    match classify_mobile(g, e.edge, budget) {
        Decision::Yes { .. } => Ok(match_edge(g, e.edge, (target.0.abs(), target.1.abs()), budget)),
        Decision::No { .. } => Err(GbsError::NotMobile(g.half_edge_name(e))),
        Decision::Inconclusive { bound } => Ok(Decision::inconclusive(bound)),
    }
}

/// Replayable evidence that two graphs present isomorphic groups: sign
/// normalization and reduction of both inputs, slides from the first
/// reduced graph, and a relabeling onto the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub format: String,
    pub sign_a: GraphMatch,
    pub sign_b: GraphMatch,
    pub reduce_a: MoveSequence,
    pub reduce_b: MoveSequence,
    pub non_mobile: MoveSequence,
    /// One sequence per mobile edge, in the order they were matched.
    pub mobile: Vec<MoveSequence>,
    pub matching: GraphMatch,
    /// The second input in one-line `.gbs` form.
    pub target: String,
}

impl IsoCertificate {
    pub fn target_graph(&self) -> Result<LabeledGraph> {
        parse_graph(&self.target)
    }

    pub fn verify(&self, a: &LabeledGraph, b: &LabeledGraph) -> Result<()> {
        let reject = |m: String| GbsError::CertificateRejected(m);
        if self.format != CERT_FORMAT {
            return Err(reject(format!("unknown format `{}`", self.format)));
        }
        let mut x = self.reduce_a.replay(&self.sign_a.apply(a)?, false)?;
        x = self.non_mobile.replay(&x, true)?;
        for s in &self.mobile {
            x = s.replay(&x, true)?;
        }
        let y = self.reduce_b.replay(&self.sign_b.apply(b)?, false)?;
        if self.matching.apply(&x)? != y {
            return Err(reject("final graph does not match the second input".into()));
        }
        Ok(())
    }

    /// Number of slides between the two reduced graphs.
    pub fn slide_count(&self) -> usize {
        self.non_mobile.len() + self.mobile.iter().map(MoveSequence::len).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GbsError::Json(e.to_string()))
    }
}

fn normalized(g: &LabeledGraph) -> Result<(LabeledGraph, GraphMatch)> {
    let (n, m) = normalize_signs(g);
    if !n.all_positive() {
        return Err(GbsError::SignObstruction);
    }
    Ok((n, m))
}

/// Exponent vectors of the petal moduli, over `basis`.
fn modular_rows(g: &LabeledGraph, basis: &PrimeBasis) -> Vec<Vec<i64>> {
    (0..g.edge_count())
        .map(|i| {
            let e = HalfEdge::forward(i);
            let (p, _) = basis.valuations(g.label(e).unsigned_abs());
            let (q, _) = basis.valuations(g.label(e.bar()).unsigned_abs());
            q.iter().zip(&p).map(|(&q, &p)| i64::from(q) - i64::from(p)).collect()
        })
        .collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Decides whether `a` and `b` present isomorphic groups. `a` must reduce
/// to a non-ascending rose with at most three petals.
pub fn are_isomorphic(a: &LabeledGraph, b: &LabeledGraph, budget: &SearchBudget) -> Result<Decision<IsoCertificate>> {
    let (na, sign_a) = normalized(a)?;
    let (ra, reduce_a) = reduce(&na).map_err(|e| match e {
        GbsError::ElementaryGroup(k) => GbsError::UnsupportedClass(format!("elementary group ({k})")),
        e => e,
    })?;
    if !ra.is_rose() || ra.edge_count() > 3 {
        return Err(GbsError::UnsupportedClass("first graph must reduce to a rose with at most 3 petals".into()));
    }
    match is_ascending(&ra, budget)? {
        Decision::Yes { .. } => return Err(GbsError::UnsupportedClass("first graph is ascending".into())),
        Decision::Inconclusive { bound } => return Ok(Decision::inconclusive(bound)),
        Decision::No { .. } => {}
    }
    let (nb, sign_b) = normalized(b)?;
    let (rb, reduce_b) = match reduce(&nb) {
        Ok(r) => r,
        Err(GbsError::ElementaryGroup(k)) => {
            return Ok(Decision::no(format!("second graph presents an elementary group ({k})")))
        }
        Err(e) => return Err(e),
    };
    if !rb.is_rose() || rb.edge_count() != ra.edge_count() {
        return Ok(Decision::no("reduced graphs differ in shape"));
    }

    let basis = PrimeBasis::from_values(ra.edges().iter().chain(rb.edges()).flat_map(|e| e.labels));
    if !basis.is_empty() && !lattices_equal(&modular_rows(&ra, &basis), &modular_rows(&rb, &basis))? {
        return Ok(Decision::no("modular images differ"));
    }
    if is_ascending(&rb, budget)?.is_yes() {
        return Ok(Decision::no("second graph is ascending"));
    }
    let (mob_a, mob_b) = match (mobile_edges(&ra, budget), mobile_edges(&rb, budget)) {
        (Outcome::Known { value: x }, Outcome::Known { value: y }) => (x, y),
        (Outcome::Inconclusive { bound }, _) | (_, Outcome::Inconclusive { bound }) => {
            return Ok(Decision::inconclusive(bound))
        }
    };
    if mob_a.len() != mob_b.len() {
        return Ok(Decision::no(format!("{} mobile edges against {}", mob_a.len(), mob_b.len())));
    }

    let snm = match snm_closure(&ra, &mob_a, budget.snm_cap) {
        Decision::Yes { witness } => witness,
        Decision::Inconclusive { bound } => return Ok(Decision::inconclusive(bound)),
        Decision::No { reason } => return Ok(Decision::no(reason)),
    };
    let fixed_b = NonMobileSubgraph::new(&rb, &mob_b).graph;
    let candidates: Vec<&SnmMember> = snm
        .iter()
        .filter(|m| graphs_equal_up_to_relabeling(&NonMobileSubgraph::new(&m.graph, &mob_a).graph, &fixed_b).is_some())
        .collect();
    if candidates.is_empty() {
        return Ok(Decision::no("no graph in S_NM matches the non-mobile edges"));
    }
    let targets: Vec<(i64, i64)> = mob_b.iter().map(|&i| (rb.edges()[i].labels[0], rb.edges()[i].labels[1])).collect();

    let perms = permutations(mob_a.len());
    let mut branches: Vec<(&SnmMember, &[usize], &[usize])> = Vec::new();
    for &c in &candidates {
        for a in &perms {
            branches.extend(perms.iter().map(|o| (c, &a[..], &o[..])));
        }
    }
    // Matches the mobile edges in `order`, edge `i` taking the pair `targets[assignment[i]]`.
    let run = |&(cand, assignment, order): &(&SnmMember, &[usize], &[usize])| -> Decision<IsoCertificate> {
        let mut cur = cand.graph.clone();
        let mut mobile = Vec::new();
        for &i in order {
            match match_edge(&cur, mob_a[i], targets[assignment[i]], budget) {
                Decision::Yes { witness } => {
                    let seq = MoveSequence { initial: cur.fingerprint(), moves: witness };
                    match seq.replay(&cur, true) {
                        Ok(next) => cur = next,
                        Err(e) => return Decision::inconclusive(format!("mobile slides failed to replay: {e}")),
                    }
                    mobile.push(seq);
                }
                Decision::No { reason } => return Decision::no(reason),
                Decision::Inconclusive { bound } => return Decision::inconclusive(bound),
            }
        }
        let Some(matching) = graphs_equal_up_to_relabeling(&cur, &rb) else {
            return Decision::no("matched edges do not assemble into the target");
        };
        let cert = IsoCertificate {
            format: CERT_FORMAT.into(),
            sign_a: sign_a.clone(),
            sign_b: sign_b.clone(),
            reduce_a: reduce_a.clone(),
            reduce_b: reduce_b.clone(),
            non_mobile: MoveSequence { initial: ra.fingerprint(), moves: cand.slides.clone() },
            mobile,
            matching,
            target: serialize_graph(b),
        };
        match cert.verify(a, b) {
            Ok(()) => Decision::yes(cert),
            Err(e) => Decision::inconclusive(format!("certificate failed to replay: {e}")),
        }
    };

    let mut bound = None;
    let mut settle = |d: Decision<IsoCertificate>| match d {
        Decision::Yes { witness } => Some(witness),
        Decision::No { .. } => None,
        Decision::Inconclusive { bound: b } => {
            bound = bound.take().or(Some(b));
            None
        }
    };
    if budget.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.threads)
            .build()
            .map_err(|e| GbsError::UnsupportedClass(format!("thread pool: {e}")))?;
        let outcomes: Vec<_> = pool.install(|| branches.par_iter().map(run).collect());
        for d in outcomes {
            if let Some(cert) = settle(d) {
                return Ok(Decision::yes(cert));
            }
        }
    } else {
        for br in &branches {
            if let Some(cert) = settle(run(br)) {
                return Ok(Decision::yes(cert));
            }
        }
    }
    Ok(match bound {
        Some(b) => Decision::inconclusive(b),
        None => Decision::no("every candidate and mobile-edge assignment is refuted"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(l: &[(i64, i64)]) -> LabeledGraph {
        LabeledGraph::rose(l).unwrap()
    }

    fn e1() -> LabeledGraph {
        rose(&[(7, 30), (6, 15), (10, 8)])
    }

    #[test]
    fn e1_snm_is_itself() {
        let s = enumerate_snm(&e1(), &SearchBudget::default()).into_witness().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].graph, e1());
    }

    #[test]
    fn snm_of_a_two_rose() {
        let g = rose(&[(4, 6), (2, 3)]);
        let s = enumerate_snm(&g, &SearchBudget::default()).into_witness().unwrap();
        let hit = s.iter().find(|m| m.graph.edges()[0].labels == [6, 6]).expect("f1 slid over f2");
        let mut seq = MoveSequence::new(&g);
        seq.moves = hit.slides.clone();
        assert_eq!(seq.replay(&g, true).unwrap(), hit.graph);
    }

    #[test]
    fn non_mobile_subgraphs() {
        let b = SearchBudget::default();
        let sub = non_mobile_subgraph(&e1(), &b).known().unwrap().clone();
        assert_eq!(sub.edge_names(), ["f2", "f3"]);
        assert_eq!(sub.mobile, ["f1"]);
        assert!(non_mobile_subgraph(&rose(&[(2, 4)]), &b).known().unwrap().edge_names().is_empty());
        assert_eq!(non_mobile_subgraph(&rose(&[(2, 3)]), &b).known().unwrap().edge_names(), ["f1"]);
    }

    #[test]
    fn e1_mobile_matches() {
        let g = e1();
        let b = SearchBudget::default();
        let f1 = g.half_edge("f1").unwrap();
        let moves = match_mobile_edge(&g, f1, (7, 60), &b).unwrap().into_witness().unwrap();
        assert_eq!(moves.len(), 1);
        let end = moves.iter().try_fold(g.clone(), |c, m| m.apply(&c)).unwrap();
        assert_eq!(end.edges()[0].labels, [7, 60]);
        assert_eq!(end.edges()[1..], g.edges()[1..]);
        assert!(match_mobile_edge(&g, f1, (7, 30), &b).unwrap().into_witness().unwrap().is_empty());
        assert!(match_mobile_edge(&g, f1, (7, 33), &b).unwrap().is_no());
        assert!(matches!(match_mobile_edge(&g, g.half_edge("f2").unwrap(), (6, 15), &b), Err(GbsError::NotMobile(_))));
    }

    #[test]
    fn iso_examples() {
        let b = SearchBudget::default();
        let cert = are_isomorphic(&e1(), &e1(), &b).unwrap().into_witness().unwrap();
        assert_eq!(cert.slide_count(), 0);

        let slid = rose(&[(7, 60), (6, 15), (10, 8)]);
        let cert = are_isomorphic(&e1(), &slid, &b).unwrap().into_witness().unwrap();
        assert_eq!(cert.slide_count(), 1);
        cert.verify(&e1(), &slid).unwrap();
        let back = IsoCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);

        let p11 = rose(&[(7, 330), (6, 15), (10, 8)]);
        let r = are_isomorphic(&e1(), &p11, &b).unwrap();
        assert_eq!(r, Decision::no("modular images differ"));

        let cert = are_isomorphic(&rose(&[(2, 3)]), &rose(&[(3, 2)]), &b).unwrap().into_witness().unwrap();
        assert!(cert.matching.edges[0].reversed);
    }

    #[test]
    fn iso_gates() {
        let b = SearchBudget::default();
        assert!(matches!(are_isomorphic(&rose(&[(1, 2)]), &e1(), &b), Err(GbsError::UnsupportedClass(_))));
        let four = rose(&[(2, 3), (5, 7), (11, 13), (17, 19)]);
        assert!(matches!(are_isomorphic(&four, &four, &b), Err(GbsError::UnsupportedClass(_))));
        assert!(are_isomorphic(&rose(&[(2, 3)]), &rose(&[(2, 3), (5, 7)]), &b).unwrap().is_no());
        assert!(are_isomorphic(&rose(&[(2, 3)]), &rose(&[(2, 5)]), &b).unwrap().is_no());
    }

    #[test]
    fn threads_do_not_change_the_certificate() {
        let slid = rose(&[(7, 60), (6, 15), (10, 8)]);
        let one = are_isomorphic(&e1(), &slid, &SearchBudget::default()).unwrap();
        let four = are_isomorphic(&e1(), &slid, &SearchBudget { threads: 4, ..SearchBudget::default() }).unwrap();
        assert_eq!(one, four);
        let cert = one.into_witness().unwrap();
        cert.verify(&e1(), &cert.target_graph().unwrap()).unwrap();
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let b = SearchBudget::default();
        let slid = rose(&[(7, 60), (6, 15), (10, 8)]);
        let mut cert = are_isomorphic(&e1(), &slid, &b).unwrap().into_witness().unwrap();
        assert!(cert.verify(&e1(), &rose(&[(7, 120), (6, 15), (10, 8)])).is_err());
        cert.mobile.clear();
        assert!(cert.verify(&e1(), &slid).is_err());
    }
}
