//! Random instances for property tests and benchmarks.

use rand::Rng;

use crate::graph::{HalfEdge, LabeledGraph};
use crate::moves::{apply_slide, remove_redundant_subcycles, EdgePath, Move};

/// A rose with `n` petals whose labels are drawn from `2..=max_label`.
pub fn random_rose<R: Rng>(rng: &mut R, n: usize, max_label: i64) -> LabeledGraph {
    let labels: Vec<(i64, i64)> =
        (0..n).map(|_| (rng.gen_range(2..=max_label), rng.gen_range(2..=max_label))).collect();
    LabeledGraph::rose(&labels).expect("labels are nonzero")
}

/// Every slide of `g` along a path of at most `max_len` steps that is valid
/// and free of redundant subcycles, in (half-edge, length, lexicographic)
/// order.
pub fn valid_slides(g: &LabeledGraph, max_len: usize) -> Vec<(HalfEdge, Vec<HalfEdge>)> {
    let mut out = Vec::new();
    for e in g.half_edges() {
        let mut frontier: Vec<Vec<HalfEdge>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let at = p.last().map_or(g.origin(e), |&h| g.terminus(h));
                for a in g.half_edges_at(at).filter(|a| a.edge != e.edge) {
                    let mut q = p.clone();
                    q.push(a);
                    let path = EdgePath::new(q.clone());
                    if remove_redundant_subcycles(g, &path).steps.len() != q.len() {
                        continue;
                    }
                    if apply_slide(g, e, &path).is_ok() {
                        out.push((e, q.clone()));
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
    }
    out
}

/// A random walk of at most `len` valid slides starting at `g`, with the
/// graph it ends at. Stops early when no slide is available.
pub fn random_slide_walk<R: Rng>(
    rng: &mut R,
    g: &LabeledGraph,
    len: usize,
    max_path: usize,
) -> (Vec<Move>, LabeledGraph) {
    let mut cur = g.clone();
    let mut moves = Vec::new();
    for _ in 0..len {
        let options = valid_slides(&cur, max_path);
        if options.is_empty() {
            break;
        }
        let (e, p) = &options[rng.gen_range(0..options.len())];
        let m = Move::slide(&cur, *e, p);
        cur = m.apply(&cur).expect("enumerated slides are valid");
        moves.push(m);
    }
    (moves, cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn e1_slides() {
        let g = LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap();
        let names: Vec<(String, Vec<String>)> =
            valid_slides(&g, 1).into_iter().map(|(e, p)| (g.half_edge_name(e), g.path_names(&p))).collect();
        assert!(names.contains(&("~f1".into(), vec!["f2".into()])));
        assert!(names.iter().all(|(e, _)| e == "~f1"));
    }

    #[test]
    fn walks_replay() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_rose(&mut rng, 3, 12);
            let (moves, end) = random_slide_walk(&mut rng, &g, 5, 2);
            let replayed = moves.iter().try_fold(g.clone(), |cur, m| m.apply(&cur)).unwrap();
            assert_eq!(replayed, end);
        }
    }
}
