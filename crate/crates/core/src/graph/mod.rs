//! Labeled graphs: a finite connected graph whose oriented edges carry a
//! nonzero integer label at their origin.

mod format;
mod matching;
mod reduce;
mod signs;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{factor, FactoredInt, FactoredRational, PrimeBasis};
use crate::error::{GbsError, Result};

pub use format::{parse_graph, serialize_graph, serialize_graph_lines};
pub use matching::{graphs_equal_up_to_relabeling, rose_key, EdgeImage, GraphMatch, RoseKey};
pub use reduce::{is_reduced, reduce};
pub use signs::normalize_signs;

/// Geometric edge. `labels[0]` sits at `origin`, `labels[1]` at `terminus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub origin: usize,
    pub terminus: usize,
    pub labels: [i64; 2],
}

/// Oriented edge: `reversed == false` is the declared orientation `e`,
/// `reversed == true` is `ē`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl HalfEdge {
    pub fn new(edge: usize, reversed: bool) -> Self {
        HalfEdge { edge, reversed }
    }

    pub fn forward(edge: usize) -> Self {
        HalfEdge { edge, reversed: false }
    }

    pub fn bar(self) -> Self {
        HalfEdge { edge: self.edge, reversed: !self.reversed }
    }

    /// Position in the half-edge order `e0, ~e0, e1, ~e1, ...`.
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(self.reversed)
    }

    pub fn from_index(i: usize) -> Self {
        HalfEdge { edge: i / 2, reversed: i % 2 == 1 }
    }
}

/// The petals of a one-vertex graph in edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoseShape {
    pub petals: Vec<usize>,
    pub n: usize,
}

/// Vertices and edges are kept sorted by name, so two graphs with the same
/// named data compare equal regardless of declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('~')
        && name.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\'' | '~'))
}

impl LabeledGraph {
    /// Builds a graph from named vertices and edges whose endpoints index
    /// into `vertices`.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        Self::build(vertices, edges, true)
    }

    fn build(vertices: Vec<String>, edges: Vec<Edge>, require_connected: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in vertices.iter().chain(edges.iter().map(|e| &e.name)) {
            if !valid_name(name) {
                return Err(GbsError::Syntax { line: 0, message: format!("invalid name `{name}`") });
            }
            if !seen.insert(name.as_str()) {
                return Err(GbsError::Syntax { line: 0, message: format!("duplicate name `{name}`") });
            }
        }
        for e in &edges {
            if e.labels.contains(&0) {
                return Err(GbsError::ZeroLabel);
            }
            if e.origin >= vertices.len() || e.terminus >= vertices.len() {
                return Err(GbsError::UnknownVertex(e.name.clone()));
            }
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut rank = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let vertices: Vec<String> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut edges: Vec<Edge> =
            edges.into_iter().map(|e| Edge { origin: rank[e.origin], terminus: rank[e.terminus], ..e }).collect();
        edges.sort_by(|a, b| a.name.cmp(&b.name));
        let g = LabeledGraph { vertices, edges };
        if require_connected && !g.is_connected() {
            return Err(GbsError::DisconnectedGraph);
        }
        Ok(g)
    }

    /// One-vertex graph `v0` with petals `f1, f2, ...` carrying `(λ(f_i), λ(f̄_i))`.
    pub fn rose(labels: &[(i64, i64)]) -> Result<Self> {
        let edges = labels
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Edge { name: format!("f{}", i + 1), origin: 0, terminus: 0, labels: [a, b] })
            .collect();
        Self::new(vec!["v0".into()], edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> {
        (0..2 * self.edges.len()).map(HalfEdge::from_index)
    }

    pub fn label(&self, h: HalfEdge) -> i64 {
        self.edges[h.edge].labels[usize::from(h.reversed)]
    }

    pub fn origin(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.reversed {
            e.terminus
        } else {
            e.origin
        }
    }

    pub fn terminus(&self, h: HalfEdge) -> usize {
        self.origin(h.bar())
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        self.edges[edge].origin == self.edges[edge].terminus
    }

    pub fn half_edge_name(&self, h: HalfEdge) -> String {
        let name = &self.edges[h.edge].name;
        if h.reversed {
            format!("~{name}")
        } else {
            name.clone()
        }
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges.binary_search_by(|e| e.name.as_str().cmp(name)).map_err(|_| GbsError::UnknownEdge(name.to_string()))
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).map_err(|_| GbsError::UnknownVertex(name.to_string()))
    }

    /// Resolves `f` or `~f`.
    pub fn half_edge(&self, name: &str) -> Result<HalfEdge> {
        match name.strip_prefix('~') {
            Some(base) => Ok(HalfEdge::new(self.edge_index(base)?, true)),
            None => Ok(HalfEdge::forward(self.edge_index(name)?)),
        }
    }

    pub fn half_edges_at(&self, v: usize) -> impl Iterator<Item = HalfEdge> + '_ {
        self.half_edges().filter(move |&h| self.origin(h) == v)
    }

    pub fn rose_shape(&self) -> Option<RoseShape> {
        (self.vertices.len() == 1).then(|| RoseShape { petals: (0..self.edges.len()).collect(), n: self.edges.len() })
    }

    pub fn is_rose(&self) -> bool {
        self.vertices.len() == 1
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.origin, e.terminus), (e.terminus, e.origin)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every prime dividing some label.
    pub fn basis(&self) -> PrimeBasis {
        PrimeBasis::from_values(self.edges.iter().flat_map(|e| e.labels))
    }

    pub fn factored_label(&self, h: HalfEdge, basis: &PrimeBasis) -> FactoredInt {
        factor(self.label(h), basis).expect("labels are nonzero")
    }

    /// `q(path) = prod λ(ē_i) / λ(e_i)`; the empty path has modulus 1.
    pub fn modulus(&self, path: &[HalfEdge], basis: &PrimeBasis) -> Result<FactoredRational> {
        let mut q = FactoredRational::one(basis);
        for &h in path {
            q = q.mul(&FactoredRational::from_ratio(self.label(h.bar()), self.label(h), basis)?)?;
        }
        Ok(q)
    }

    pub fn path_names(&self, path: &[HalfEdge]) -> Vec<String> {
        path.iter().map(|&h| self.half_edge_name(h)).collect()
    }

    pub fn resolve_path<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<HalfEdge>> {
        names.iter().map(|n| self.half_edge(n.as_ref())).collect()
    }

    /// SHA-256 of the canonical serialization.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(serialize_graph(self).as_bytes()))
    }

    pub fn with_abs_labels(&self) -> LabeledGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.labels = [e.labels[0].abs(), e.labels[1].abs()];
        }
        g
    }

    pub(crate) fn set_label(&mut self, h: HalfEdge, value: i64) {
        self.edges[h.edge].labels[usize::from(h.reversed)] = value;
    }

    pub(crate) fn set_origin(&mut self, h: HalfEdge, v: usize) {
        let e = &mut self.edges[h.edge];
        if h.reversed {
            e.terminus = v;
        } else {
            e.origin = v;
        }
    }

    /// Rebuilds after structural edits, restoring the sorted layout.
    pub(crate) fn rebuilt(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        Self::build(vertices, edges, true)
    }

    pub(crate) fn into_parts(self) -> (Vec<String>, Vec<Edge>) {
        (self.vertices, self.edges)
    }

    /// A name of the form `{prefix}{k}` not used by any vertex or edge.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !self.vertices.contains(n) && !self.edges.iter().any(|e| &e.name == n))
            .expect("names are unbounded")
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_edge_involution() {
        let g = LabeledGraph::rose(&[(7, 30), (6, 15)]).unwrap();
        for h in g.half_edges() {
            assert_ne!(h, h.bar());
            assert_eq!(h.bar().bar(), h);
            assert_eq!(g.terminus(h), g.origin(h.bar()));
            assert_eq!(HalfEdge::from_index(h.index()), h);
        }
        assert_eq!(g.label(g.half_edge("~f1").unwrap()), 30);
    }

    #[test]
    fn rose_shapes() {
        let e1 = LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap();
        assert_eq!(e1.rose_shape().map(|r| r.n), Some(3));
        let seg = parse_graph("v0 v1; e: v0 v1 1 5").unwrap();
        assert_eq!(seg.rose_shape(), None);
        let point = parse_graph("v0").unwrap();
        assert_eq!(point.rose_shape().map(|r| r.n), Some(0));
    }

    #[test]
    fn modulus_of_paths() {
        let e1 = LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap();
        let b = e1.basis();
        let p = e1.resolve_path(&["f3", "f2"]).unwrap();
        assert_eq!(e1.modulus(&p, &b).unwrap().to_string(), "2");
        assert_eq!(e1.modulus(&[], &b).unwrap().to_string(), "1");
        let e2 = LabeledGraph::rose(&[(14, 30), (6, 15), (10, 8), (30, 21)]).unwrap();
        let b = e2.basis();
        let p = e2.resolve_path(&["f3", "f2", "f4", "f1"]).unwrap();
        assert_eq!(e2.modulus(&p, &b).unwrap().to_string(), "3");
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(parse_graph("v0 v1"), Err(GbsError::DisconnectedGraph));
    }
}
