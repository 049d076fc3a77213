//! Ascending detection for small roses.
//!
//! A reduced rose with at most three petals, or with a single mobile edge,
//! is ascending exactly when it has a strict monotone cycle. Larger roses
//! with several mobile edges are refused.

use crate::decision::{Decision, Outcome, SearchBudget};
use crate::error::{GbsError, Result};
use crate::graph::{is_reduced, LabeledGraph};
use crate::mobility::mobile_edges;
use crate::moves::{Move, MoveSequence};
use crate::smc::{has_smc, MonotoneCycleWitness};

pub fn count_mobile_edges(g: &LabeledGraph, budget: &SearchBudget) -> Outcome<usize> {
    match mobile_edges(g, budget) {
        Outcome::Known { value } => Outcome::Known { value: value.len() },
        Outcome::Inconclusive { bound } => Outcome::Inconclusive { bound },
    }
}

/// `Yes` (with a strict monotone cycle) when the group is ascending.
pub fn is_ascending(g: &LabeledGraph, budget: &SearchBudget) -> Result<Decision<MonotoneCycleWitness>> {
    if !g.is_rose() || !is_reduced(g) {
        return Err(GbsError::UnsupportedClass("expected a reduced rose".into()));
    }
    if g.edge_count() > 3 {
        match count_mobile_edges(g, budget) {
            Outcome::Known { value: 1 } => {}
            Outcome::Known { value } => {
                return Err(GbsError::UnsupportedClass(format!("{}-rose with {value} mobile edges", g.edge_count())))
            }
            Outcome::Inconclusive { bound } => return Ok(Decision::inconclusive(bound)),
        }
    }
    Ok(has_smc(g, budget))
}

/// Turns a strict monotone cycle into a strict ascending loop: slide the
/// reverse of the last edge along the path, making the last edge a loop
/// `(k, kq)`, then split off `(1, q)` by an 𝒜-move when `|k| ≠ 1`.
pub fn ascending_loop(g: &LabeledGraph, w: &MonotoneCycleWitness) -> Result<(LabeledGraph, MoveSequence)> {
    let e = g.half_edge(&w.last_edge)?;
    let mut seq = MoveSequence::new(g);
    let mut cur = g.clone();
    if !w.path.is_empty() {
        let m = Move::Slide { edge: g.half_edge_name(e.bar()), path: w.path.clone() };
        cur = m.apply(&cur)?;
        seq.moves.push(m);
    }
    let k = cur.label(e);
    if k.abs() != 1 {
        let m = Move::AMovePlus {
            edge: w.last_edge.clone(),
            l: cur.label(e.bar()) / k,
            vertex: cur.fresh_name("w"),
            connector: cur.fresh_name("c"),
        };
        cur = m.apply(&cur)?;
        seq.moves.push(m);
    }
    Ok((cur, seq))
}
