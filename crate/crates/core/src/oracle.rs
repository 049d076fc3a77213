//! Brute-force slide search, used as an independent check on the
//! isomorphism decision.

use std::collections::HashMap;

use serde::Serialize;

use crate::decision::Decision;
use crate::error::{GbsError, Result};
use crate::graph::{rose_key, LabeledGraph, RoseKey};
use crate::moves::{apply_slide, EdgePath, Move};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleHit {
    pub depth: usize,
    pub slides: Vec<Move>,
}

/// Breadth-first search over single-step slides of any edge, with states
/// compared up to relabeling. States carrying a label above `max_label` are
/// dropped. `No` only when the search closed without dropping anything.
pub fn oracle_bfs(a: &LabeledGraph, b: &LabeledGraph, max_label: i64, max_depth: usize) -> Result<Decision<OracleHit>> {
    if !a.is_rose() || !b.is_rose() {
        return Err(GbsError::UnsupportedClass("oracle expects roses".into()));
    }
    let goal = rose_key(b);
    let mut parent: HashMap<RoseKey, Option<(RoseKey, Move)>> = HashMap::from([(rose_key(a), None)]);
    let mut level = vec![a.clone()];
    let mut truncated = false;
    for depth in 0..=max_depth {
        if let Some(hit) = level.iter().find(|g| rose_key(g) == goal) {
            let mut slides = Vec::new();
            let mut key = rose_key(hit);
            while let Some(Some((prev, m))) = parent.get(&key) {
                slides.push(m.clone());
                key = prev.clone();
            }
            slides.reverse();
            return Ok(Decision::yes(OracleHit { depth, slides }));
        }
        if depth == max_depth {
            truncated |= !level.is_empty();
            break;
        }
        let mut next = Vec::new();
        for g in &level {
            for e in g.half_edges() {
                for s in g.half_edges_at(g.origin(e)).filter(|s| s.edge != e.edge) {
                    let Ok(h) = apply_slide(g, e, &EdgePath::new(vec![s])) else {
                        continue;
                    };
                    if h.edges().iter().flat_map(|x| x.labels).any(|l| l.abs() > max_label) {
                        truncated = true;
                        continue;
                    }
                    let key = rose_key(&h);
                    if parent.contains_key(&key) {
                        continue;
                    }
                    parent.insert(key, Some((rose_key(g), Move::slide(g, e, &[s]))));
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(if truncated {
        Decision::inconclusive(format!("labels above {max_label} or depth above {max_depth} were cut"))
    } else {
        Decision::no("slide closure exhausted")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(l: &[(i64, i64)]) -> LabeledGraph {
        LabeledGraph::rose(l).unwrap()
    }

    #[test]
    fn examples() {
        let e1 = rose(&[(7, 30), (6, 15), (10, 8)]);
        let hit = oracle_bfs(&e1, &e1, 1_000_000, 10).unwrap().into_witness().unwrap();
        assert_eq!(hit.depth, 0);
        assert!(oracle_bfs(&rose(&[(2, 3)]), &rose(&[(2, 5)]), 1_000_000, 10).unwrap().is_no());
        let slid = rose(&[(7, 60), (6, 15), (10, 8)]);
        let r = oracle_bfs(&e1, &slid, 1_000_000, 10).unwrap();
        assert_eq!(r.witness().map(|h| h.depth), Some(2));
    }
}
