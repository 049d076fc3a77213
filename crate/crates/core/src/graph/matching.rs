//! Isomorphism of labeled graphs up to edge orientation and admissible sign
//! changes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::signs::solve_parities;
use super::{Edge, HalfEdge, LabeledGraph};
use crate::error::{GbsError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImage {
    pub source: String,
    pub target: String,
    /// The source's declared orientation maps to the target's reverse.
    pub reversed: bool,
}

/// Sign changes on the source (by source names) followed by a renaming of
/// vertices and edges, with per-edge orientation swaps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphMatch {
    pub vertex_flips: Vec<String>,
    pub edge_flips: Vec<String>,
    pub vertices: BTreeMap<String, String>,
    pub edges: Vec<EdgeImage>,
}

impl GraphMatch {
    pub fn identity(g: &LabeledGraph) -> Self {
        Self::sign_change(g, &vec![false; g.vertex_count()], &vec![false; g.edge_count()])
    }

    pub(crate) fn sign_change(g: &LabeledGraph, vflip: &[bool], eflip: &[bool]) -> Self {
        let pick = |names: &mut dyn Iterator<Item = &String>, flags: &[bool]| {
            names.zip(flags).filter(|(_, &f)| f).map(|(n, _)| n.clone()).collect()
        };
        GraphMatch {
            vertex_flips: pick(&mut g.vertices.iter(), vflip),
            edge_flips: pick(&mut g.edges.iter().map(|e| &e.name), eflip),
            vertices: g.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeImage { source: e.name.clone(), target: e.name.clone(), reversed: false })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_flips.is_empty()
            && self.edge_flips.is_empty()
            && self.vertices.iter().all(|(a, b)| a == b)
            && self.edges.iter().all(|e| e.source == e.target && !e.reversed)
    }

    /// Image of a source half-edge name under the renaming.
    pub fn map_half_edge(&self, name: &str) -> Option<String> {
        let (base, rev) = match name.strip_prefix('~') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let img = self.edges.iter().find(|e| e.source == base)?;
        Some(if rev != img.reversed { format!("~{}", img.target) } else { img.target.clone() })
    }

    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        let reject = |m: String| GbsError::CertificateRejected(m);
        let mut work = g.clone();
        for v in &self.vertex_flips {
            let v = work.vertex_index(v)?;
            for h in g.half_edges().filter(|&h| g.origin(h) == v) {
                work.set_label(h, -work.label(h));
            }
        }
        for e in &self.edge_flips {
            let e = work.edge_index(e)?;
            for h in [HalfEdge::forward(e), HalfEdge::new(e, true)] {
                work.set_label(h, -work.label(h));
            }
        }
        if self.vertices.len() != g.vertex_count() || self.edges.len() != g.edge_count() {
            return Err(reject("match does not cover the graph".into()));
        }
        let targets: BTreeSet<&String> = self.vertices.values().collect();
        if targets.len() != self.vertices.len() {
            return Err(reject("vertex map is not injective".into()));
        }
        let vertices: Vec<String> = g
            .vertices
            .iter()
            .map(|v| self.vertices.get(v).cloned().ok_or_else(|| reject(format!("vertex {v} unmapped"))))
            .collect::<Result<_>>()?;
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(g.edge_count());
        for img in &self.edges {
            let i = work.edge_index(&img.source)?;
            if !seen.insert(i) {
                return Err(reject(format!("edge {} mapped twice", img.source)));
            }
            let e = &work.edges[i];
            edges.push(if img.reversed {
                Edge {
                    name: img.target.clone(),
                    origin: e.terminus,
                    terminus: e.origin,
                    labels: [e.labels[1], e.labels[0]],
                }
            } else {
                Edge { name: img.target.clone(), ..e.clone() }
            });
        }
        LabeledGraph::new(vertices, edges)
    }

    pub fn inverse(&self) -> GraphMatch {
        let vmap = |v: &String| self.vertices.get(v).cloned().unwrap_or_else(|| v.clone());
        let emap = |e: &String| {
            self.edges.iter().find(|img| &img.source == e).map_or_else(|| e.clone(), |img| img.target.clone())
        };
        let mut vertex_flips: Vec<String> = self.vertex_flips.iter().map(vmap).collect();
        let mut edge_flips: Vec<String> = self.edge_flips.iter().map(emap).collect();
        vertex_flips.sort();
        edge_flips.sort();
        GraphMatch {
            vertex_flips,
            edge_flips,
            vertices: self.vertices.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeImage { source: e.target.clone(), target: e.source.clone(), reversed: e.reversed })
                .collect(),
        }
    }
}

/// Sorted unordered absolute label pairs of a rose's petals.
pub type RoseKey = Vec<(i64, i64)>;

pub fn rose_key(g: &LabeledGraph) -> RoseKey {
    let mut key: RoseKey = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (e.labels[0].abs(), e.labels[1].abs());
            (a.min(b), a.max(b))
        })
        .collect();
    key.sort_unstable();
    key
}

struct Search<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    vmap: Vec<Option<usize>>,
    vused: Vec<bool>,
    eimg: Vec<HalfEdge>,
    eused: Vec<bool>,
}

impl Search<'_> {
    fn bind(&mut self, a: usize, b: usize, undo: &mut Vec<usize>) -> bool {
        match self.vmap[a] {
            Some(x) => x == b,
            None if self.vused[b] => false,
            None => {
                self.vmap[a] = Some(b);
                self.vused[b] = true;
                undo.push(a);
                true
            }
        }
    }

    fn run(&mut self, k: usize) -> Option<GraphMatch> {
        let (g1, g2) = (self.g1, self.g2);
        if k == g1.edge_count() {
            return self.finish();
        }
        let h = HalfEdge::forward(k);
        let (la, lb) = (g1.label(h).abs(), g1.label(h.bar()).abs());
        for t in g2.half_edges() {
            if self.eused[t.edge] || g2.label(t).abs() != la || g2.label(t.bar()).abs() != lb {
                continue;
            }
            let mut undo = Vec::new();
            if self.bind(g1.origin(h), g2.origin(t), &mut undo) && self.bind(g1.terminus(h), g2.terminus(t), &mut undo)
            {
                self.eused[t.edge] = true;
                self.eimg[k] = t;
                if let Some(m) = self.run(k + 1) {
                    return Some(m);
                }
                self.eused[t.edge] = false;
            }
            for a in undo {
                self.vused[self.vmap[a].take().expect("bound above")] = false;
            }
        }
        None
    }

    fn finish(&mut self) -> Option<GraphMatch> {
        let (g1, g2) = (self.g1, self.g2);
        // Unconnected leftovers only occur for edgeless graphs.
        for a in 0..g1.vertex_count() {
            if self.vmap[a].is_none() {
                let b = (0..g2.vertex_count()).find(|&b| !self.vused[b])?;
                self.vmap[a] = Some(b);
                self.vused[b] = true;
            }
        }
        let want: Vec<bool> = g1
            .half_edges()
            .map(|h| {
                let t = if h.reversed { self.eimg[h.edge].bar() } else { self.eimg[h.edge] };
                (g1.label(h) < 0) != (g2.label(t) < 0)
            })
            .collect();
        let (vflip, eflip) = solve_parities(g1, &want)?;
        let mut m = GraphMatch::sign_change(g1, &vflip, &eflip);
        m.vertices = (0..g1.vertex_count())
            .map(|a| (g1.vertices[a].clone(), g2.vertices[self.vmap[a].expect("all bound")].clone()))
            .collect();
        m.edges = (0..g1.edge_count())
            .map(|k| EdgeImage {
                source: g1.edges[k].name.clone(),
                target: g2.edges[self.eimg[k].edge].name.clone(),
                reversed: self.eimg[k].reversed,
            })
            .collect();
        Some(m)
    }
}

/// A match taking `g1` exactly onto `g2`, if one exists.
pub fn graphs_equal_up_to_relabeling(g1: &LabeledGraph, g2: &LabeledGraph) -> Option<GraphMatch> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    if g1.is_rose() && rose_key(g1) != rose_key(g2) {
        return None;
    }
    let mut s = Search {
        g1,
        g2,
        vmap: vec![None; g1.vertex_count()],
        vused: vec![false; g2.vertex_count()],
        eimg: vec![HalfEdge::forward(0); g1.edge_count()],
        eused: vec![false; g2.edge_count()],
    };
    let m = s.run(0)?;
    debug_assert_eq!(m.apply(g1).as_ref(), Ok(g2));
    Some(m)
}
