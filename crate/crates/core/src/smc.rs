//! Strict monotone cycles in rose graphs.
//!
//! A monotone cycle with last edge `e` is an `ē`-edge path `(e_1, ..., e_s)`
//! from `t(e)` back to `o(e)` after which `λ(e)` divides the slid label of
//! `ē`. The question is a coverability question in the slide space of `ē`,
//! which [`SlideSystem::coverable`] decides exactly. The linear system
//! `Π(e)` serves as a cheap refutation before the search, and
//! [`compute_lambda`] exposes the explored part of the label set of `ē`.

use serde::Serialize;

use crate::arith::{ilp_feasible, FactoredRational, LinearConstraintSystem};
use crate::decision::{Decision, SearchBudget};
use crate::error::{GbsError, Result};
use crate::graph::{HalfEdge, LabeledGraph};
use crate::moves::{is_e_edge_path, EdgePath};
use crate::slide_space::{shortcut, Cover, SlideSystem, State};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneCycleWitness {
    pub last_edge: String,
    /// The path slid along by the reverse of `last_edge`.
    pub path: Vec<String>,
    pub modulus: FactoredRational,
}

impl MonotoneCycleWitness {
    fn build(g: &LabeledGraph, e: HalfEdge, path: &[HalfEdge]) -> Self {
        let mut cycle = path.to_vec();
        cycle.push(e);
        MonotoneCycleWitness {
            last_edge: g.half_edge_name(e),
            path: g.path_names(path),
            modulus: g.modulus(&cycle, &g.basis()).expect("labels factor over the graph basis"),
        }
    }

    /// Rechecks every defining condition against `g`.
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        let (Ok(e), Ok(path)) = (g.half_edge(&self.last_edge), g.resolve_path(&self.path)) else {
            return false;
        };
        let closes = match (path.first(), path.last()) {
            (Some(&a), Some(&z)) => g.origin(a) == g.terminus(e) && g.terminus(z) == g.origin(e),
            _ => g.is_loop(e.edge),
        };
        let mut cycle = path.clone();
        cycle.push(e);
        let Ok(q) = g.modulus(&cycle, &g.basis()) else {
            return false;
        };
        closes
            && is_e_edge_path(g, e.bar(), &EdgePath::new(path))
            && q.is_integer()
            && !q.is_unit()
            && q == self.modulus
    }
}

/// A loop orientation `h` with `λ(h) | λ(h̄)` strictly: a strict ascending
/// or strict virtually ascending loop, i.e. a strict monotone cycle with an
/// empty path. The first in half-edge order is returned.
pub fn quick_loop_check(g: &LabeledGraph) -> Option<MonotoneCycleWitness> {
    g.half_edges()
        .find(|&h| {
            let (a, b) = (g.label(h).unsigned_abs(), g.label(h.bar()).unsigned_abs());
            g.is_loop(h.edge) && b % a == 0 && a != b
        })
        .map(|h| MonotoneCycleWitness::build(g, h, &[]))
}

/// The integer systems `Π(e)`: `(x_h)` with `σ_l ≤ σ'_l + Σ_h x_h α^h_l` for
/// every prime `l`, one row strict. `σ`, `σ'` are the exponents of `λ(e)`,
/// `λ(ē)` and `α^h` those of the modulus of each other petal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiSystem {
    pub base: String,
    pub basis: Vec<u64>,
    pub sigma: Vec<i64>,
    pub sigma_prime: Vec<i64>,
    /// Petal (forward orientation) and exponents of its modulus.
    pub alphas: Vec<(String, Vec<i64>)>,
    /// One system per choice of strict row.
    pub systems: Vec<LinearConstraintSystem>,
    /// Inside one graph all units are 1, so this only fails for foreign
    /// bases.
    pub unit_compatible: bool,
}

impl PiSystem {
    /// A point of some system, or `No` when all are infeasible.
    pub fn feasibility(&self) -> Decision<Vec<i64>> {
        if !self.unit_compatible {
            return Decision::no("unit parts are incompatible");
        }
        let mut bound = None;
        for sys in &self.systems {
            match ilp_feasible(sys) {
                Decision::Yes { witness } => return Decision::yes(witness),
                Decision::No { .. } => {}
                Decision::Inconclusive { bound: b } => bound = Some(b),
            }
        }
        match bound {
            Some(b) => Decision::inconclusive(b),
            None => Decision::no("every system of Π is infeasible"),
        }
    }

    /// Whether a label of `ē` with these exponents closes a strict cycle.
    pub fn admits_label(&self, exps: &[u32]) -> bool {
        let ge = self.sigma.iter().zip(exps).all(|(&s, &x)| s <= i64::from(x));
        ge && self.sigma.iter().zip(exps).any(|(&s, &x)| s < i64::from(x))
    }
}

pub fn compute_pi(g: &LabeledGraph, e: HalfEdge) -> Result<PiSystem> {
    if !g.is_rose() {
        return Err(GbsError::UnsupportedClass("Π is defined for roses only".into()));
    }
    let basis = g.basis();
    let exps = |v: i64| -> Vec<i64> { basis.valuations(v.unsigned_abs()).0.into_iter().map(i64::from).collect() };
    let sigma = exps(g.label(e));
    let sigma_prime = exps(g.label(e.bar()));
    let alphas: Vec<(String, Vec<i64>)> = (0..g.edge_count())
        .filter(|&i| i != e.edge)
        .map(|i| {
            let h = HalfEdge::forward(i);
            let a = exps(g.label(h));
            let b = exps(g.label(h.bar()));
            (g.half_edge_name(h), b.iter().zip(&a).map(|(x, y)| x - y).collect())
        })
        .collect();
    let d = alphas.len();
    let systems = (0..basis.len())
        .map(|strict| {
            let mut sys = LinearConstraintSystem::new(d);
            for l in 0..basis.len() {
                let coeffs = alphas.iter().map(|(_, a)| a[l]).collect();
                let rhs = sigma[l] - sigma_prime[l] + i64::from(l == strict);
                sys = sys.ge(coeffs, rhs);
            }
            sys
        })
        .collect();
    Ok(PiSystem {
        base: g.half_edge_name(e),
        basis: basis.primes().to_vec(),
        sigma,
        sigma_prime,
        alphas,
        systems,
        unit_compatible: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachableLabel {
    pub exponents: Vec<u32>,
    pub path: Vec<String>,
}

/// Labels `apex · direction^k`, `k ≥ 0`, all reachable: `pump` leads from
/// the apex label to the apex label times `direction`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub apex: Vec<u32>,
    pub apex_path: Vec<String>,
    pub pump: Vec<String>,
    pub direction: Vec<u32>,
}

impl Cone {
    pub fn contains(&self, exps: &[u32]) -> bool {
        let mut k = None;
        for ((&x, &a), &d) in exps.iter().zip(&self.apex).zip(&self.direction) {
            if x < a {
                return false;
            }
            match (d, k) {
                (0, _) if x != a => return false,
                (0, _) => {}
                (d, None) if (x - a) % d == 0 => k = Some((x - a) / d),
                (d, Some(k)) if x - a == k * d => {}
                _ => return false,
            }
        }
        true
    }
}

/// Explored labels of `ē` while sliding over the other petals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeUnion {
    pub basis: Vec<u64>,
    pub cones: Vec<Cone>,
    pub explicit_reachable: Vec<ReachableLabel>,
    /// No slide left the exponent box.
    pub saturated: bool,
}

/// Breadth-first exploration of the labels `ē` can take, inside the box of
/// side `max(σ, σ', Σ|α|) + slack` per prime.
pub fn compute_lambda(g: &LabeledGraph, e: HalfEdge, budget: &SearchBudget) -> Result<ConeUnion> {
    let pi = compute_pi(g, e)?;
    let sys = SlideSystem::new(g, e.bar());
    let bound: Vec<u32> = (0..sys.dim())
        .map(|l| {
            let spread: i64 = pi.alphas.iter().map(|(_, a)| a[l].abs()).sum();
            let m = pi.sigma[l].max(pi.sigma_prime[l]).max(spread);
            u32::try_from(m).unwrap_or(u32::MAX).saturating_add(budget.exponent_slack)
        })
        .collect();
    let start = sys.start(g);
    let ex = sys.explore_box(&start, &bound, budget.max_states);
    let names = |p: &[usize]| g.path_names(&sys.half_edges(p));
    let cones = ex
        .pumps
        .iter()
        .map(|p| {
            let apex_path = &ex.paths[p.apex];
            let mut pump = ex.paths[p.from][apex_path.len()..].to_vec();
            pump.push(p.via);
            Cone {
                apex: ex.states[p.apex].exps.clone(),
                apex_path: names(apex_path),
                pump: names(&pump),
                direction: p.direction.clone(),
            }
        })
        .collect();
    let explicit_reachable = ex
        .states
        .iter()
        .zip(&ex.paths)
        .map(|(s, p)| ReachableLabel { exponents: s.exps.clone(), path: names(p) })
        .collect();
    Ok(ConeUnion { basis: pi.basis, cones, explicit_reachable, saturated: ex.closed })
}

/// Targets `base + 1_l` for every prime `l`.
pub(crate) fn strict_targets(base: &State) -> Vec<State> {
    (0..base.exps.len())
        .map(|l| {
            let mut s = base.clone();
            s.exps[l] += 1;
            s
        })
        .collect()
}

/// Least path in (length, lexicographic) order for `h` from `start` to a
/// state covering a target, or a loop-free coverability path.
pub(crate) fn strict_growth_path(
    sys: &SlideSystem,
    start: &State,
    targets: &[State],
    budget: &SearchBudget,
) -> Decision<Vec<usize>> {
    match sys.coverable(start, targets, budget.max_basis) {
        Cover::Uncoverable => Decision::no("no reachable label is a strict multiple"),
        Cover::Budget(n) => Decision::inconclusive(format!("coverability basis exceeded {n} elements")),
        Cover::Covered(path) => {
            let path = shortcut(sys, start, &path);
            let depth = budget.max_path_len.max(path.len());
            let goal = |s: &State| targets.iter().any(|t| s.covers(t));
            Decision::yes(sys.least_path(start, goal, depth, budget.max_states).unwrap_or(path))
        }
    }
}

/// Strict monotone cycle whose last edge is `e`. Works on any graph; on
/// roses a refutation of `Π(e)` short-circuits the search.
pub fn has_smc_with_last_edge(g: &LabeledGraph, e: HalfEdge, budget: &SearchBudget) -> Decision<MonotoneCycleWitness> {
    if g.is_rose() {
        let pi = compute_pi(g, e).expect("rose");
        if let Decision::No { reason } = pi.feasibility() {
            return Decision::no(format!("Π({}) is empty: {reason}", g.half_edge_name(e)));
        }
    }
    let sys = SlideSystem::new(g, e.bar());
    let start = sys.start(g);
    let base = State { vertex: g.origin(e), exps: sys.exponents_of(g.label(e)).expect("graph label") };
    let targets = strict_targets(&base);
    match strict_growth_path(&sys, &start, &targets, budget) {
        Decision::Yes { witness } => {
            let w = MonotoneCycleWitness::build(g, e, &sys.half_edges(&witness));
            debug_assert!(w.verify(g));
            Decision::yes(w)
        }
        Decision::No { reason } => Decision::no(format!("last edge {}: {reason}", g.half_edge_name(e))),
        Decision::Inconclusive { bound } => Decision::inconclusive(bound),
    }
}

/// Loop check first, then every half-edge in order as the last edge.
pub fn has_smc(g: &LabeledGraph, budget: &SearchBudget) -> Decision<MonotoneCycleWitness> {
    if let Some(w) = quick_loop_check(g) {
        return Decision::yes(w);
    }
    let mut bound = None;
    for e in g.half_edges() {
        match has_smc_with_last_edge(g, e, budget) {
            Decision::Yes { witness } => return Decision::yes(witness),
            Decision::No { .. } => {}
            Decision::Inconclusive { bound: b } => bound = bound.or(Some(b)),
        }
    }
    match bound {
        Some(b) => Decision::inconclusive(b),
        None => Decision::no("no half-edge ends a strict monotone cycle"),
    }
}
