use super::{HalfEdge, LabeledGraph};
use crate::error::{GbsError, Result};
use crate::moves::{apply_collapse, Move, MoveSequence};

fn collapsible(g: &LabeledGraph) -> impl Iterator<Item = HalfEdge> + '_ {
    g.half_edges().filter(move |&h| g.label(h).abs() == 1 && g.origin(h) != g.terminus(h))
}

/// No edge with a `±1` label joins two distinct vertices.
pub fn is_reduced(g: &LabeledGraph) -> bool {
    collapsible(g).next().is_none()
}

/// Collapses edges until the graph is reduced, always taking the first
/// collapsible half-edge in name order.
pub fn reduce(g: &LabeledGraph) -> Result<(LabeledGraph, MoveSequence)> {
    let mut seq = MoveSequence::new(g);
    let mut cur = g.clone();
    loop {
        let Some(h) = collapsible(&cur).next() else {
            break;
        };
        seq.moves.push(Move::Collapse { edge: cur.half_edge_name(h) });
        cur = apply_collapse(&cur, h)?;
    }
    check_elementary(&cur)?;
    Ok((cur, seq))
}

pub(crate) fn check_elementary(g: &LabeledGraph) -> Result<()> {
    if g.vertex_count() == 1 {
        match g.edges() {
            [] => return Err(GbsError::ElementaryGroup("infinite cyclic".into())),
            [e] if e.labels[0].abs() == 1 && e.labels[1].abs() == 1 => {
                let kind = if e.labels[0] == e.labels[1] { "Z^2" } else { "Klein bottle group" };
                return Err(GbsError::ElementaryGroup(kind.into()));
            }
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn rose_is_already_reduced() {
        let g = LabeledGraph::rose(&[(1, 2), (3, 5)]).unwrap();
        let (r, seq) = reduce(&g).unwrap();
        assert_eq!(r, g);
        assert!(seq.is_empty());
    }

    #[test]
    fn collapse_figure() {
        // a, b at u; c, d at w; the edge carries (n, 1) so w is absorbed.
        let g = parse_graph("u w; e: u w 4 1; p: u u 2 3; r: w w 5 7").unwrap();
        let (r, seq) = reduce(&g).unwrap();
        assert_eq!(r, parse_graph("u; p: u u 2 3; r: u u 20 28").unwrap());
        assert_eq!(seq.replay(&g, false).unwrap(), r);
    }

    #[test]
    fn elementary_shapes() {
        let seg = parse_graph("v0 v1; e: v0 v1 1 1").unwrap();
        assert!(matches!(reduce(&seg), Err(GbsError::ElementaryGroup(_))));
        let torus = LabeledGraph::rose(&[(1, 1)]).unwrap();
        assert!(matches!(reduce(&torus), Err(GbsError::ElementaryGroup(_))));
        let klein = LabeledGraph::rose(&[(1, -1)]).unwrap();
        assert!(matches!(reduce(&klein), Err(GbsError::ElementaryGroup(_))));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&LabeledGraph::rose(&[(1, 2)]).unwrap()));
        assert!(!is_reduced(&parse_graph("a b; e: a b 1 5").unwrap()));
        assert!(is_reduced(&parse_graph("a b; e: a b 2 5").unwrap()));
    }
}
