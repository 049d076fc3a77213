//! Admissible sign changes: negating a vertex generator flips every label at
//! that vertex, negating an edge generator flips both labels of the edge.

use std::collections::VecDeque;

use super::{GraphMatch, HalfEdge, LabeledGraph};

/// Solves `y[o(h)] xor x[edge(h)] = want[h]` over GF(2) for every half-edge.
/// Returns `(vertex flips, edge flips)` or `None` when inconsistent.
pub(crate) fn solve_parities(g: &LabeledGraph, want: &[bool]) -> Option<(Vec<bool>, Vec<bool>)> {
    let nv = g.vertex_count();
    let n = nv + g.edge_count();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for h in g.half_edges() {
        let (a, b, c) = (g.origin(h), nv + h.edge, want[h.index()]);
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    let mut val: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if val[root].is_some() {
            continue;
        }
        val[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let vu = val[u].expect("queued nodes are assigned");
            for &(w, c) in &adj[u] {
                match val[w] {
                    None => {
                        val[w] = Some(vu ^ c);
                        queue.push_back(w);
                    }
                    Some(vw) if vw != vu ^ c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let val: Vec<bool> = val.into_iter().map(|v| v.unwrap_or(false)).collect();
    Some((val[..nv].to_vec(), val[nv..].to_vec()))
}

fn flip_vertex(g: &mut LabeledGraph, v: usize) {
    for h in g.half_edges().filter(|&h| g.origin(h) == v).collect::<Vec<_>>() {
        g.set_label(h, -g.label(h));
    }
}

fn flip_edge(g: &mut LabeledGraph, e: usize) {
    for h in [HalfEdge::forward(e), HalfEdge::new(e, true)] {
        g.set_label(h, -g.label(h));
    }
}

fn negatives(g: &LabeledGraph) -> usize {
    g.half_edges().filter(|&h| g.label(h) < 0).count()
}

/// Canonical sign pattern plus the record of the applied changes. The
/// record is an involution, so applying it to the output restores the input.
///
/// When all labels can be made positive they are. Otherwise vertex flips and
/// then edge flips are applied greedily, in name order, while each one
/// strictly lowers the number of negative labels.
pub fn normalize_signs(g: &LabeledGraph) -> (LabeledGraph, GraphMatch) {
    let want: Vec<bool> = g.half_edges().map(|h| g.label(h) < 0).collect();
    let (vflip, eflip) = solve_parities(g, &want).unwrap_or_else(|| greedy(g));
    let mut out = g.clone();
    for (v, _) in vflip.iter().enumerate().filter(|(_, &f)| f) {
        flip_vertex(&mut out, v);
    }
    for (e, _) in eflip.iter().enumerate().filter(|(_, &f)| f) {
        flip_edge(&mut out, e);
    }
    (out, GraphMatch::sign_change(g, &vflip, &eflip))
}

fn greedy(g: &LabeledGraph) -> (Vec<bool>, Vec<bool>) {
    let mut cur = g.clone();
    let mut vflip = vec![false; g.vertex_count()];
    let mut eflip = vec![false; g.edge_count()];
    loop {
        let mut improved = false;
        for (v, flipped) in vflip.iter_mut().enumerate() {
            let before = negatives(&cur);
            flip_vertex(&mut cur, v);
            if negatives(&cur) < before {
                *flipped ^= true;
                improved = true;
            } else {
                flip_vertex(&mut cur, v);
            }
        }
        for (e, flipped) in eflip.iter_mut().enumerate() {
            let before = negatives(&cur);
            flip_edge(&mut cur, e);
            if negatives(&cur) < before {
                *flipped ^= true;
                improved = true;
            } else {
                flip_edge(&mut cur, e);
            }
        }
        if !improved {
            return (vflip, eflip);
        }
    }
}

impl LabeledGraph {
    pub fn all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.labels[0] > 0 && e.labels[1] > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn positive_rose_unchanged() {
        let g = LabeledGraph::rose(&[(7, 30), (6, 15)]).unwrap();
        let (n, m) = normalize_signs(&g);
        assert_eq!(n, g);
        assert!(m.vertex_flips.is_empty() && m.edge_flips.is_empty());
    }

    #[test]
    fn flips_negative_petal() {
        let g = LabeledGraph::rose(&[(-7, -30), (6, 15)]).unwrap();
        let (n, m) = normalize_signs(&g);
        assert!(n.all_positive());
        assert_eq!(m.edge_flips, vec!["f1".to_string()]);
        assert_eq!(m.apply(&n).unwrap(), g);
    }

    #[test]
    fn segment_with_negative_ends() {
        let g = parse_graph("v0 v1; e: v0 v1 -2 -3").unwrap();
        let (n, m) = normalize_signs(&g);
        assert!(n.all_positive());
        assert_eq!(m.apply(&n).unwrap(), g);
    }

    #[test]
    fn obstruction_keeps_one_negative() {
        let g = LabeledGraph::rose(&[(-7, 30), (-6, -15)]).unwrap();
        let (n, m) = normalize_signs(&g);
        assert!(!n.all_positive());
        assert_eq!(negatives(&n), 1);
        assert_eq!(m.apply(&n).unwrap(), g);
    }
}
