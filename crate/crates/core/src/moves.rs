//! Deformation moves on labeled graphs and replayable move sequences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{FactoredInt, FactoredRational, PrimeBasis};
use crate::error::{GbsError, Result};
use crate::graph::{is_reduced, Edge, HalfEdge, LabeledGraph};

/// Consecutive sequence of half-edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgePath {
    pub steps: Vec<HalfEdge>,
}

impl EdgePath {
    pub fn new(steps: Vec<HalfEdge>) -> Self {
        EdgePath { steps }
    }

    pub fn is_consecutive(&self, g: &LabeledGraph) -> bool {
        self.steps.windows(2).all(|w| g.terminus(w[0]) == g.origin(w[1]))
    }

    /// The path traversed backwards: `(ā_s, ..., ā_1)`.
    pub fn reversed(&self) -> EdgePath {
        EdgePath { steps: self.steps.iter().rev().map(|h| h.bar()).collect() }
    }
}

pub fn modulus_of_path(g: &LabeledGraph, path: &EdgePath) -> Result<FactoredRational> {
    if let Some(i) = path.steps.windows(2).position(|w| g.terminus(w[0]) != g.origin(w[1])) {
        return Err(GbsError::BrokenPath(i + 1));
    }
    g.modulus(&path.steps, &g.basis())
}

/// Label of `e` after sliding its origin one step across `a`, if allowed.
fn slide_step(g: &LabeledGraph, cur: &FactoredInt, a: HalfEdge, basis: &PrimeBasis) -> Option<FactoredInt> {
    let q = FactoredRational::from_ratio(g.label(a.bar()), g.label(a), basis).ok()?;
    let next = cur.to_rational().mul(&q).ok()?;
    // λ(a) | cur  <=>  cur / λ(a) is an integer; multiplying by λ(ā) keeps it one.
    let quotient = cur.to_rational().div(&FactoredRational::from_ratio(g.label(a), 1, basis).ok()?).ok()?;
    quotient.is_integer().then(|| next.to_int()).flatten()
}

/// First failing condition of the e-edge path definition, as
/// `(step index, reason)`.
fn e_edge_path_failure(g: &LabeledGraph, e: HalfEdge, path: &EdgePath) -> Option<(usize, String)> {
    let basis = g.basis();
    let mut cur = g.factored_label(e, &basis);
    let mut at = g.origin(e);
    for (i, &a) in path.steps.iter().enumerate() {
        if a.edge == e.edge {
            return Some((i, format!("path uses the sliding edge {}", g.half_edge_name(a))));
        }
        if g.origin(a) != at {
            return Some((i, format!("{} does not start where the path stands", g.half_edge_name(a))));
        }
        match slide_step(g, &cur, a, &basis) {
            Some(next) => cur = next,
            None => {
                return Some((
                    i,
                    format!("λ({}) = {} does not divide the current label", g.half_edge_name(a), g.label(a)),
                ))
            }
        }
        at = g.terminus(a);
    }
    None
}

pub fn is_e_edge_path(g: &LabeledGraph, e: HalfEdge, path: &EdgePath) -> bool {
    e_edge_path_failure(g, e, path).is_none()
}

/// Drops closed subpaths of modulus 1, shortest first and then leftmost,
/// until none remain.
pub fn remove_redundant_subcycles(g: &LabeledGraph, path: &EdgePath) -> EdgePath {
    let basis = g.basis();
    let mut steps = path.steps.clone();
    'outer: loop {
        for len in 1..=steps.len() {
            for i in 0..=steps.len() - len {
                let sub = &steps[i..i + len];
                if g.origin(sub[0]) == g.terminus(sub[len - 1])
                    && g.modulus(sub, &basis).is_ok_and(|q| q.is_unit() && q.sign > 0)
                {
                    steps.drain(i..i + len);
                    continue 'outer;
                }
            }
        }
        return EdgePath { steps };
    }
}

/// Slides the origin of `e` along `path`: `o(e)` moves to the end of the
/// path and `λ(e)` becomes `λ(e) q(path)`. Redundant subcycles are removed
/// before validation.
pub fn apply_slide(g: &LabeledGraph, e: HalfEdge, path: &EdgePath) -> Result<LabeledGraph> {
    let path = remove_redundant_subcycles(g, path);
    if path.steps.is_empty() {
        return Ok(g.clone());
    }
    if let Some((step, reason)) = e_edge_path_failure(g, e, &path) {
        return Err(GbsError::InvalidSlide { step, reason });
    }
    let basis = g.basis();
    let q = g.modulus(&path.steps, &basis)?;
    let new = g.factored_label(e, &basis).to_rational().mul(&q)?;
    let value = new.to_fraction().and_then(|(n, _)| i64::try_from(n).ok()).ok_or(GbsError::Overflow("slide label"))?;
    let mut out = g.clone();
    out.set_label(e, value);
    out.set_origin(e, g.terminus(*path.steps.last().expect("nonempty")));
    Ok(out)
}

/// Multiplies (or with `inverse`, divides) every other label at the vertex
/// of the ascending loop `lp` by `l`, where `l | λ(l̄p)`.
pub fn apply_induction(g: &LabeledGraph, lp: HalfEdge, l: i64, inverse: bool) -> Result<LabeledGraph> {
    let bad = |m: String| GbsError::InvalidInduction(m);
    if !g.is_loop(lp.edge) {
        return Err(bad(format!("{} is not a loop", g.half_edge_name(lp))));
    }
    if g.label(lp).abs() != 1 {
        return Err(bad(format!("{} is not an ascending loop", g.half_edge_name(lp))));
    }
    if l == 0 || g.label(lp.bar()) % l != 0 {
        return Err(bad(format!("{l} does not divide λ({})", g.half_edge_name(lp.bar()))));
    }
    let v = g.origin(lp);
    let mut out = g.clone();
    for h in g.half_edges_at(v).filter(|h| h.edge != lp.edge) {
        let x = g.label(h);
        let y = if inverse {
            if x % l != 0 {
                return Err(bad(format!("{l} does not divide λ({})", g.half_edge_name(h))));
            }
            x / l
        } else {
            x.checked_mul(l).ok_or(GbsError::Overflow("induction"))?
        };
        out.set_label(h, y);
    }
    Ok(out)
}

/// 𝒜+: a loop `(k, klm)` at `u` becomes a new vertex `vertex` carrying the
/// loop `(1, lm)`, joined to `u` by `connector` with labels `k` at `u` and
/// `l` at the new vertex.
pub fn apply_a_move_plus(
    g: &LabeledGraph,
    lp: HalfEdge,
    l: i64,
    vertex: &str,
    connector: &str,
) -> Result<LabeledGraph> {
    let bad = |m: String| GbsError::InvalidAMove(m);
    if !g.is_loop(lp.edge) {
        return Err(bad(format!("{} is not a loop", g.half_edge_name(lp))));
    }
    let k = g.label(lp);
    let top = g.label(lp.bar());
    if k.abs() == 1 || l.abs() == 1 || l == 0 {
        return Err(bad("k and l must differ from ±1".into()));
    }
    let Some(lm) = (top % k == 0).then(|| top / k) else {
        return Err(bad(format!("{k} does not divide {top}")));
    };
    if lm % l != 0 {
        return Err(bad(format!("{l} does not divide {lm}")));
    }
    let u = g.origin(lp);
    let (mut vertices, mut edges) = g.clone().into_parts();
    let w = vertices.len();
    vertices.push(vertex.to_string());
    let e = &mut edges[lp.edge];
    e.origin = w;
    e.terminus = w;
    e.labels = if lp.reversed { [lm, 1] } else { [1, lm] };
    edges.push(Edge { name: connector.to_string(), origin: u, terminus: w, labels: [k, l] });
    LabeledGraph::rebuilt(vertices, edges)
}

/// 𝒜-: inverse of [`apply_a_move_plus`]. `lp` is the loop with label 1 at a
/// vertex whose only other edge is `connector`.
pub fn apply_a_move_minus(g: &LabeledGraph, lp: HalfEdge, connector: usize) -> Result<LabeledGraph> {
    let bad = |m: String| GbsError::InvalidAMove(m);
    let w = g.origin(lp);
    if !g.is_loop(lp.edge) || g.label(lp) != 1 {
        return Err(bad(format!("{} is not a loop with label 1", g.half_edge_name(lp))));
    }
    let c = HalfEdge::forward(connector);
    let toward = if g.terminus(c) == w && g.origin(c) != w {
        c
    } else if g.origin(c) == w && g.terminus(c) != w {
        c.bar()
    } else {
        return Err(bad("connector does not join the loop vertex to another vertex".into()));
    };
    if g.half_edges_at(w).any(|h| h.edge != lp.edge && h.edge != connector) {
        return Err(bad("the loop vertex has other edges".into()));
    }
    let (k, l) = (g.label(toward), g.label(toward.bar()));
    let lm = g.label(lp.bar());
    if k.abs() == 1 || l.abs() == 1 || lm % l != 0 {
        return Err(bad(format!("labels ({k}, {l}) with loop top {lm} do not fit")));
    }
    let u = g.origin(toward);
    let (mut vertices, mut edges) = g.clone().into_parts();
    let e = &mut edges[lp.edge];
    e.origin = u;
    e.terminus = u;
    let klm = k.checked_mul(lm).ok_or(GbsError::Overflow("A-move"))?;
    e.labels = if lp.reversed { [klm, k] } else { [k, klm] };
    edges.remove(connector);
    vertices.remove(w);
    for e in &mut edges {
        e.origin -= usize::from(e.origin > w);
        e.terminus -= usize::from(e.terminus > w);
    }
    LabeledGraph::rebuilt(vertices, edges)
}

/// Shrinks the edge of `h` (with `|λ(h)| = 1` and distinct endpoints) to its
/// terminus; labels formerly at `o(h)` are multiplied by `λ(h) λ(h̄)`.
pub fn apply_collapse(g: &LabeledGraph, h: HalfEdge) -> Result<LabeledGraph> {
    let bad = |m: String| GbsError::InvalidCollapse(m);
    let (u, w) = (g.origin(h), g.terminus(h));
    if u == w {
        return Err(bad(format!("{} is a loop", g.half_edge_name(h))));
    }
    if g.label(h).abs() != 1 {
        return Err(bad(format!("λ({}) is not ±1", g.half_edge_name(h))));
    }
    let n = g.label(h) * g.label(h.bar());
    let mut work = g.clone();
    for x in g.half_edges_at(u).filter(|x| x.edge != h.edge) {
        work.set_label(x, g.label(x).checked_mul(n).ok_or(GbsError::Overflow("collapse"))?);
        work.set_origin(x, w);
    }
    let (mut vertices, mut edges) = work.into_parts();
    edges.remove(h.edge);
    vertices.remove(u);
    for e in &mut edges {
        e.origin -= usize::from(e.origin > u);
        e.terminus -= usize::from(e.terminus > u);
    }
    LabeledGraph::rebuilt(vertices, edges)
}

/// Inverse of [`apply_collapse`]: splits `new_vertex` off `vertex` along a
/// new edge whose half-edge `edge` (`f` or `~f`) runs from `new_vertex` to
/// `vertex` with `labels` (at `new_vertex`, at `vertex`), moving the
/// half-edges named in `moved`.
pub fn apply_expansion(
    g: &LabeledGraph,
    vertex: &str,
    new_vertex: &str,
    edge: &str,
    labels: [i64; 2],
    moved: &[String],
) -> Result<LabeledGraph> {
    let bad = |m: String| GbsError::InvalidExpansion(m);
    if labels[0].abs() != 1 || labels[1] == 0 {
        return Err(bad("the new edge needs label ±1 at the new vertex".into()));
    }
    let w = g.vertex_index(vertex)?;
    let n = labels[0] * labels[1];
    let mut work = g.clone();
    let (mut vertices, _) = g.clone().into_parts();
    let u = vertices.len();
    vertices.push(new_vertex.to_string());
    for name in moved {
        let x = g.half_edge(name)?;
        if g.origin(x) != w {
            return Err(bad(format!("{name} does not start at {vertex}")));
        }
        if g.label(x) % n != 0 {
            return Err(bad(format!("{n} does not divide λ({name})")));
        }
        work.set_label(x, g.label(x) / n);
    }
    let (_, mut edges) = work.into_parts();
    for name in moved {
        let x = g.half_edge(name)?;
        let e = &mut edges[x.edge];
        if x.reversed {
            e.terminus = u;
        } else {
            e.origin = u;
        }
    }
    edges.push(match edge.strip_prefix('~') {
        Some(base) => Edge { name: base.to_string(), origin: w, terminus: u, labels: [labels[1], labels[0]] },
        None => Edge { name: edge.to_string(), origin: u, terminus: w, labels },
    });
    LabeledGraph::rebuilt(vertices, edges)
}

/// A replayable move; edges and vertices are referenced by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MoveRecord", try_from = "MoveRecord")]
pub enum Move {
    Slide { edge: String, path: Vec<String> },
    Induction { edge: String, factor: i64, inverse: bool },
    AMovePlus { edge: String, l: i64, vertex: String, connector: String },
    AMoveMinus { edge: String, connector: String },
    Collapse { edge: String },
    Expansion { edge: String, vertex: String, new_vertex: String, labels: [i64; 2], moved: Vec<String> },
}

/// JSON layout of a move: `{kind, edge, path, params}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct MoveRecord {
    kind: String,
    edge: String,
    #[serde(default)]
    path: Vec<String>,
    #[serde(default)]
    params: BTreeMap<String, Value>,
}

impl From<Move> for MoveRecord {
    fn from(m: Move) -> Self {
        let rec = |kind: &str, edge: String, path: Vec<String>, params: Value| MoveRecord {
            kind: kind.into(),
            edge,
            path,
            params: serde_json::from_value(params).expect("params are objects"),
        };
        match m {
            Move::Slide { edge, path } => rec("slide", edge, path, json!({})),
            Move::Induction { edge, factor, inverse } => {
                rec("induction", edge, vec![], json!({"factor": factor, "inverse": inverse}))
            }
            Move::AMovePlus { edge, l, vertex, connector } => {
                rec("amove+", edge, vec![], json!({"l": l, "vertex": vertex, "connector": connector}))
            }
            Move::AMoveMinus { edge, connector } => rec("amove-", edge, vec![], json!({"connector": connector})),
            Move::Collapse { edge } => rec("collapse", edge, vec![], json!({})),
            Move::Expansion { edge, vertex, new_vertex, labels, moved } => rec(
                "expansion",
                edge,
                vec![],
                json!({"vertex": vertex, "new_vertex": new_vertex, "labels": labels, "moved": moved}),
            ),
        }
    }
}

impl TryFrom<MoveRecord> for Move {
    type Error = String;

    fn try_from(r: MoveRecord) -> std::result::Result<Self, String> {
        fn get<T: serde::de::DeserializeOwned>(r: &MoveRecord, key: &str) -> std::result::Result<T, String> {
            let v = r.params.get(key).ok_or_else(|| format!("{} move lacks `{key}`", r.kind))?;
            serde_json::from_value(v.clone()).map_err(|e| format!("bad `{key}`: {e}"))
        }
        Ok(match r.kind.as_str() {
            "slide" => Move::Slide { edge: r.edge, path: r.path },
            "induction" => Move::Induction { factor: get(&r, "factor")?, inverse: get(&r, "inverse")?, edge: r.edge },
            "amove+" => Move::AMovePlus {
                l: get(&r, "l")?,
                vertex: get(&r, "vertex")?,
                connector: get(&r, "connector")?,
                edge: r.edge,
            },
            "amove-" => Move::AMoveMinus { connector: get(&r, "connector")?, edge: r.edge },
            "collapse" => Move::Collapse { edge: r.edge },
            "expansion" => Move::Expansion {
                vertex: get(&r, "vertex")?,
                new_vertex: get(&r, "new_vertex")?,
                labels: get(&r, "labels")?,
                moved: get(&r, "moved")?,
                edge: r.edge,
            },
            other => return Err(format!("unknown move kind `{other}`")),
        })
    }
}

impl Move {
    pub fn slide(g: &LabeledGraph, e: HalfEdge, path: &[HalfEdge]) -> Move {
        Move::Slide { edge: g.half_edge_name(e), path: g.path_names(path) }
    }

    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        match self {
            Move::Slide { edge, path } => apply_slide(g, g.half_edge(edge)?, &EdgePath::new(g.resolve_path(path)?)),
            Move::Induction { edge, factor, inverse } => apply_induction(g, g.half_edge(edge)?, *factor, *inverse),
            Move::AMovePlus { edge, l, vertex, connector } => {
                apply_a_move_plus(g, g.half_edge(edge)?, *l, vertex, connector)
            }
            Move::AMoveMinus { edge, connector } => apply_a_move_minus(g, g.half_edge(edge)?, g.edge_index(connector)?),
            Move::Collapse { edge } => apply_collapse(g, g.half_edge(edge)?),
            Move::Expansion { edge, vertex, new_vertex, labels, moved } => {
                apply_expansion(g, vertex, new_vertex, edge, *labels, moved)
            }
        }
    }

    /// The move undoing `self`, computed from the graph it applies to.
    pub fn inverse(&self, before: &LabeledGraph) -> Result<Move> {
        Ok(match self {
            Move::Slide { edge, path } => {
                let p = EdgePath::new(before.resolve_path(path)?);
                let p = remove_redundant_subcycles(before, &p).reversed();
                Move::Slide { edge: edge.clone(), path: before.path_names(&p.steps) }
            }
            Move::Induction { edge, factor, inverse } => {
                Move::Induction { edge: edge.clone(), factor: *factor, inverse: !inverse }
            }
            // After 𝒜+ the loop has label 1 on the orientation `edge`.
            Move::AMovePlus { edge, connector, .. } => {
                Move::AMoveMinus { edge: edge.clone(), connector: connector.clone() }
            }
            Move::AMoveMinus { edge, connector } => {
                let h = before.half_edge(edge)?;
                let c = HalfEdge::forward(before.edge_index(connector)?);
                let toward = if before.terminus(c) == before.origin(h) { c } else { c.bar() };
                let vertex = before.vertices()[before.origin(h)].clone();
                Move::AMovePlus {
                    edge: edge.clone(),
                    l: before.label(toward.bar()),
                    vertex,
                    connector: connector.clone(),
                }
            }
            Move::Collapse { edge } => {
                let h = before.half_edge(edge)?;
                let u = before.origin(h);
                Move::Expansion {
                    edge: edge.clone(),
                    vertex: before.vertices()[before.terminus(h)].clone(),
                    new_vertex: before.vertices()[u].clone(),
                    labels: [before.label(h), before.label(h.bar())],
                    moved: before
                        .half_edges_at(u)
                        .filter(|x| x.edge != h.edge)
                        .map(|x| before.half_edge_name(x))
                        .collect(),
                }
            }
            Move::Expansion { edge, .. } => Move::Collapse { edge: edge.clone() },
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::Slide { .. } => "slide",
            Move::Induction { .. } => "induction",
            Move::AMovePlus { .. } => "amove+",
            Move::AMoveMinus { .. } => "amove-",
            Move::Collapse { .. } => "collapse",
            Move::Expansion { .. } => "expansion",
        }
    }
}

/// Moves together with the fingerprint of the graph they start from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub initial: String,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new(start: &LabeledGraph) -> Self {
        MoveSequence { initial: start.fingerprint(), moves: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// Replays from `start`, which must carry the recorded fingerprint. With
    /// `require_reduced`, every intermediate graph must be reduced.
    pub fn replay(&self, start: &LabeledGraph, require_reduced: bool) -> Result<LabeledGraph> {
        if start.fingerprint() != self.initial {
            return Err(GbsError::InvalidSequence("start graph does not match the fingerprint".into()));
        }
        let mut g = start.clone();
        for (i, m) in self.moves.iter().enumerate() {
            g = m.apply(&g).map_err(|e| GbsError::InvalidSequence(format!("move {i} ({}): {e}", m.kind())))?;
            if require_reduced && !is_reduced(&g) {
                return Err(GbsError::InvalidSequence(format!("graph after move {i} is not reduced")));
            }
        }
        Ok(g)
    }

    /// Sequence taking the replayed graph back to `start`.
    pub fn inverse(&self, start: &LabeledGraph) -> Result<MoveSequence> {
        let mut graphs = vec![start.clone()];
        for m in &self.moves {
            let next = m.apply(graphs.last().expect("nonempty"))?;
            graphs.push(next);
        }
        let end = graphs.last().expect("nonempty");
        let mut inv = MoveSequence::new(end);
        for (m, before) in self.moves.iter().zip(&graphs).rev() {
            inv.moves.push(m.inverse(before)?);
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn e1() -> LabeledGraph {
        LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap()
    }

    fn e2() -> LabeledGraph {
        LabeledGraph::rose(&[(14, 30), (6, 15), (10, 8), (30, 21)]).unwrap()
    }

    fn path(g: &LabeledGraph, names: &[&str]) -> EdgePath {
        EdgePath::new(g.resolve_path(names).unwrap())
    }

    #[test]
    fn modulus_examples() {
        let g = e1();
        assert_eq!(modulus_of_path(&g, &path(&g, &["f3", "f2"])).unwrap().to_string(), "2");
        assert_eq!(modulus_of_path(&g, &EdgePath::default()).unwrap().to_string(), "1");
        let g = e2();
        assert_eq!(modulus_of_path(&g, &path(&g, &["f3", "f2", "f4", "f1"])).unwrap().to_string(), "3");
        let seg = parse_graph("a b; e: a b 2 3; f: a b 5 7").unwrap();
        let p = EdgePath::new(seg.resolve_path(&["e", "e"]).unwrap());
        assert_eq!(modulus_of_path(&seg, &p), Err(GbsError::BrokenPath(1)));
    }

    #[test]
    fn e_edge_paths() {
        let g = e1();
        let f1bar = g.half_edge("~f1").unwrap();
        assert!(is_e_edge_path(&g, f1bar, &path(&g, &["f3", "f2"])));
        assert!(!is_e_edge_path(&g, f1bar, &path(&g, &["f1"])));
        let e2p = LabeledGraph::rose(&[(14, 30), (6, 15), (10, 8), (14, 21)]).unwrap();
        let f1 = e2p.half_edge("f1").unwrap();
        assert!(is_e_edge_path(&e2p, f1, &path(&e2p, &["f4"])));
    }

    #[test]
    fn redundant_subcycles() {
        let g = e1();
        assert!(remove_redundant_subcycles(&g, &path(&g, &["f3", "~f3"])).steps.is_empty());
        assert_eq!(remove_redundant_subcycles(&g, &path(&g, &["f3", "f2"])), path(&g, &["f3", "f2"]));
        assert_eq!(remove_redundant_subcycles(&g, &path(&g, &["f2", "f3", "~f3", "f2"])), path(&g, &["f2", "f2"]));
    }

    #[test]
    fn slide_examples() {
        let g = e2();
        let out = apply_slide(&g, g.half_edge("f4").unwrap(), &path(&g, &["~f1"])).unwrap();
        assert_eq!(out, LabeledGraph::rose(&[(14, 30), (6, 15), (10, 8), (14, 21)]).unwrap());
        let g = e1();
        assert_eq!(apply_slide(&g, HalfEdge::forward(0), &EdgePath::default()).unwrap(), g);
        let out = apply_slide(&g, g.half_edge("~f1").unwrap(), &path(&g, &["f3", "f2"])).unwrap();
        assert_eq!(out, LabeledGraph::rose(&[(7, 60), (6, 15), (10, 8)]).unwrap());
        let err = apply_slide(&g, g.half_edge("f2").unwrap(), &path(&g, &["f1"])).unwrap_err();
        assert!(matches!(err, GbsError::InvalidSlide { step: 0, .. }));
    }

    #[test]
    fn end_slide_moves_origin() {
        let g = parse_graph("a b; e: a b 2 3; f: a a 4 6; c: a b 5 7").unwrap();
        let f = g.half_edge("f").unwrap();
        let out = apply_slide(&g, f, &path(&g, &["e"])).unwrap();
        assert_eq!(out.origin(f), g.vertex_index("b").unwrap());
        assert_eq!(out.label(f), 6);
    }

    #[test]
    fn induction_examples() {
        let g = parse_graph("v; t: v v 1 6; a: v v 2 3").unwrap();
        let t = g.half_edge("t").unwrap();
        let out = apply_induction(&g, t, 3, false).unwrap();
        assert_eq!(out, parse_graph("v; t: v v 1 6; a: v v 6 9").unwrap());
        assert_eq!(apply_induction(&out, t, 3, true).unwrap(), g);
        assert_eq!(apply_induction(&g, t, 1, false).unwrap(), g);
        let bad = parse_graph("v; t: v v 2 6; a: v v 2 3").unwrap();
        assert!(matches!(apply_induction(&bad, t, 3, false), Err(GbsError::InvalidInduction(_))));
    }

    #[test]
    fn a_move_examples() {
        let g = parse_graph("u; t: u u 2 30; a: u u 4 6").unwrap();
        let t = g.half_edge("t").unwrap();
        let plus = apply_a_move_plus(&g, t, 3, "w", "c").unwrap();
        assert_eq!(plus, parse_graph("u w; t: w w 1 15; a: u u 4 6; c: u w 2 3").unwrap());
        let back = apply_a_move_minus(&plus, plus.half_edge("t").unwrap(), plus.edge_index("c").unwrap()).unwrap();
        assert_eq!(back, g);
        let k1 = parse_graph("u; t: u u 1 30; a: u u 4 6").unwrap();
        assert!(matches!(apply_a_move_plus(&k1, t, 3, "w", "c"), Err(GbsError::InvalidAMove(_))));
    }

    #[test]
    fn collapse_and_expansion() {
        let g = parse_graph("u w; e: u w 1 5; a: u u 2 3; b: w w 7 11").unwrap();
        let h = g.half_edge("e").unwrap();
        let c = apply_collapse(&g, h).unwrap();
        assert_eq!(c, parse_graph("w; a: w w 10 15; b: w w 7 11").unwrap());
        let m = Move::Collapse { edge: "e".into() };
        let inv = m.inverse(&g).unwrap();
        assert_eq!(inv.apply(&c).unwrap(), g);
    }

    #[test]
    fn sequence_json_and_inverse() {
        let g = e1();
        let mut seq = MoveSequence::new(&g);
        seq.moves.push(Move::Slide { edge: "~f1".into(), path: vec!["f3".into(), "f2".into()] });
        let text = serde_json::to_string(&seq).unwrap();
        assert!(text.contains(r#""kind":"slide""#));
        let back: MoveSequence = serde_json::from_str(&text).unwrap();
        assert_eq!(back, seq);
        let ind = Move::Induction { edge: "f1".into(), factor: 3, inverse: true };
        let text = serde_json::to_string(&ind).unwrap();
        assert_eq!(serde_json::from_str::<Move>(&text).unwrap(), ind);
        let end = seq.replay(&g, true).unwrap();
        assert_eq!(end.label(end.half_edge("~f1").unwrap()), 60);
        let inv = seq.inverse(&g).unwrap();
        assert_eq!(inv.replay(&end, true).unwrap(), g);
    }
}
