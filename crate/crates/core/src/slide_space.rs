//! The label dynamics of a single sliding half-edge.
//!
//! While one half-edge `h` slides and every other label stays fixed, the
//! configuration is the vertex `o(h)` together with the exponent vector of
//! `λ(h)` over the graph's prime basis. Sliding across a half-edge `g` of
//! another edge is enabled when `λ(g) | λ(h)`; it subtracts the exponents of
//! `λ(g)`, adds those of `λ(ḡ)` and moves to `t(g)`. This is a vector
//! addition system with states in which every transition has an inverse
//! (slide back across `ḡ`), so:
//!
//! * cycle questions ("can the label grow to a strict multiple") are
//!   coverability questions, decided by backward saturation of minimal
//!   elements;
//! * label questions ("can the label become exactly τ") are reachability
//!   questions in a reversible system, decided by a completed binomial
//!   rewriting system.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::arith::PrimeBasis;
use crate::graph::{HalfEdge, LabeledGraph};

/// Position in a slide space: vertex and exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub vertex: usize,
    pub exps: Vec<u32>,
}

impl State {
    pub fn covers(&self, other: &State) -> bool {
        self.vertex == other.vertex && self.exps.iter().zip(&other.exps).all(|(a, b)| a >= b)
    }
}

#[derive(Debug, Clone)]
pub struct Transition {
    pub via: HalfEdge,
    pub from: usize,
    pub to: usize,
    pub pre: Vec<u32>,
    pub post: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct SlideSystem {
    pub sliding: HalfEdge,
    pub basis: PrimeBasis,
    pub vertex_count: usize,
    /// Ordered by half-edge order, which fixes the lexicographic order of
    /// witness paths.
    pub transitions: Vec<Transition>,
    reverse: Vec<usize>,
}

/// Verdict of a coverability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cover {
    /// Transition indices leading from the start to a covering state.
    Covered(Vec<usize>),
    Uncoverable,
    /// The minimal-element basis outgrew the given cap.
    Budget(usize),
}

impl SlideSystem {
    /// Slide space of `h` in `g`, over the basis of all label primes.
    pub fn new(g: &LabeledGraph, h: HalfEdge) -> Self {
        Self::with_basis(g, h, g.basis())
    }

    pub fn with_basis(g: &LabeledGraph, h: HalfEdge, basis: PrimeBasis) -> Self {
        let exps = |v: i64| basis.valuations(v.unsigned_abs()).0;
        let transitions: Vec<Transition> = g
            .half_edges()
            .filter(|x| x.edge != h.edge)
            .map(|x| Transition {
                via: x,
                from: g.origin(x),
                to: g.terminus(x),
                pre: exps(g.label(x)),
                post: exps(g.label(x.bar())),
            })
            .collect();
        let index: HashMap<HalfEdge, usize> = transitions.iter().enumerate().map(|(i, t)| (t.via, i)).collect();
        let reverse = transitions.iter().map(|t| index[&t.via.bar()]).collect();
        SlideSystem { sliding: h, basis, vertex_count: g.vertex_count(), transitions, reverse }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exponents of `value`, or `None` when it has a prime outside the basis.
    pub fn exponents_of(&self, value: i64) -> Option<Vec<u32>> {
        let (exps, unit) = self.basis.valuations(value.unsigned_abs());
        (unit == 1).then_some(exps)
    }

    pub fn state_of(&self, vertex: usize, value: i64) -> Option<State> {
        Some(State { vertex, exps: self.exponents_of(value)? })
    }

    pub fn start(&self, g: &LabeledGraph) -> State {
        self.state_of(g.origin(self.sliding), g.label(self.sliding)).expect("graph labels factor over the graph basis")
    }

    pub fn value_of(&self, exps: &[u32]) -> Option<i128> {
        let mut acc: i128 = 1;
        for (&p, &k) in self.basis.primes().iter().zip(exps) {
            acc = acc.checked_mul(i128::from(p).checked_pow(k)?)?;
        }
        Some(acc)
    }

    pub fn reverse(&self, t: usize) -> usize {
        self.reverse[t]
    }

    pub fn reverse_path(&self, path: &[usize]) -> Vec<usize> {
        path.iter().rev().map(|&t| self.reverse[t]).collect()
    }

    pub fn fire(&self, s: &State, t: usize) -> Option<State> {
        let tr = &self.transitions[t];
        if tr.from != s.vertex || s.exps.iter().zip(&tr.pre).any(|(a, b)| a < b) {
            return None;
        }
        Some(State {
            vertex: tr.to,
            exps: s.exps.iter().zip(&tr.pre).zip(&tr.post).map(|((x, a), b)| x - a + b).collect(),
        })
    }

    pub fn replay(&self, s: &State, path: &[usize]) -> Option<State> {
        path.iter().try_fold(s.clone(), |cur, &t| self.fire(&cur, t))
    }

    pub fn half_edges(&self, path: &[usize]) -> Vec<HalfEdge> {
        path.iter().map(|&t| self.transitions[t].via).collect()
    }

    /// Decides whether some state covering one of `targets` is reachable
    /// from `start`, by saturating the minimal elements of the set of
    /// states that can reach the upward closure of the targets.
    pub fn coverable(&self, start: &State, targets: &[State], max_basis: usize) -> Cover {
        struct Node {
            state: State,
            next: Option<(usize, usize)>,
        }
        let mut nodes: Vec<Node> = Vec::new();
        let mut queue = VecDeque::new();
        let found = |nodes: &Vec<Node>, i: usize| -> Vec<usize> {
            let mut path = Vec::new();
            let mut cur = i;
            while let Some((t, n)) = nodes[cur].next {
                path.push(t);
                cur = n;
            }
            path
        };
        for t in targets {
            if nodes.iter().any(|n| t.covers(&n.state)) {
                continue;
            }
            nodes.push(Node { state: t.clone(), next: None });
            if start.covers(t) {
                return Cover::Covered(Vec::new());
            }
            queue.push_back(nodes.len() - 1);
        }
        while let Some(i) = queue.pop_front() {
            for (t, tr) in self.transitions.iter().enumerate() {
                if tr.to != nodes[i].state.vertex {
                    continue;
                }
                let exps: Vec<u32> = nodes[i]
                    .state
                    .exps
                    .iter()
                    .zip(&tr.pre)
                    .zip(&tr.post)
                    .map(|((&m, &a), &b)| a.max((m + a).saturating_sub(b)))
                    .collect();
                let pre = State { vertex: tr.from, exps };
                if nodes.iter().any(|n| pre.covers(&n.state)) {
                    continue;
                }
                nodes.push(Node { state: pre, next: Some((t, i)) });
                let j = nodes.len() - 1;
                if start.covers(&nodes[j].state) {
                    return Cover::Covered(found(&nodes, j));
                }
                if nodes.len() > max_basis {
                    return Cover::Budget(max_basis);
                }
                queue.push_back(j);
            }
        }
        Cover::Uncoverable
    }

    /// Breadth-first search for the least path, in (length, lexicographic
    /// transition order), from `start` to a state satisfying `goal`.
    /// Returns `None` when the depth or state cap is reached first.
    pub fn least_path(
        &self,
        start: &State,
        goal: impl Fn(&State) -> bool,
        max_depth: usize,
        max_states: usize,
    ) -> Option<Vec<usize>> {
        if goal(start) {
            return Some(Vec::new());
        }
        let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut level = vec![start.clone()];
        for _ in 0..max_depth {
            let mut next = Vec::new();
            for s in &level {
                for t in 0..self.transitions.len() {
                    let Some(n) = self.fire(s, t) else { continue };
                    if parent.contains_key(&n) {
                        continue;
                    }
                    parent.insert(n.clone(), Some((s.clone(), t)));
                    if goal(&n) {
                        let mut path = Vec::new();
                        let mut cur = n;
                        while let Some(Some((p, t))) = parent.get(&cur) {
                            path.push(*t);
                            cur = p.clone();
                        }
                        path.reverse();
                        return Some(path);
                    }
                    if parent.len() > max_states {
                        return None;
                    }
                    next.push(n);
                }
            }
            if next.is_empty() {
                return None;
            }
            level = next;
        }
        None
    }

    /// All states reachable from `start` inside the exponent box `bound`,
    /// each with the least path reaching it. The flag reports whether the
    /// exploration closed without any successor leaving the box.
    pub fn explore_box(&self, start: &State, bound: &[u32], max_states: usize) -> Exploration {
        let mut order = vec![start.clone()];
        let mut parent: HashMap<State, Option<(usize, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut index: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
        let mut closed = true;
        let mut pumps = Vec::new();
        let mut seen_pumps = HashSet::new();
        let mut head = 0;
        while head < order.len() {
            let s = order[head].clone();
            for t in 0..self.transitions.len() {
                let Some(n) = self.fire(&s, t) else { continue };
                if n.exps.iter().zip(bound).any(|(a, b)| a > b) {
                    closed = false;
                    continue;
                }
                // A strictly larger descendant of an ancestor pumps upward.
                let mut anc = Some(head);
                let mut len = 1;
                while let Some(a) = anc {
                    let st = &order[a];
                    if n.covers(st) && n != *st {
                        let dir: Vec<u32> = n.exps.iter().zip(&st.exps).map(|(x, y)| x - y).collect();
                        if seen_pumps.insert((a, dir.clone())) {
                            pumps.push(Pump { apex: a, from: head, via: t, length: len, direction: dir });
                        }
                    }
                    anc = parent[st].map(|(p, _)| p);
                    len += 1;
                }
                if index.contains_key(&n) {
                    continue;
                }
                index.insert(n.clone(), order.len());
                parent.insert(n.clone(), Some((head, t)));
                order.push(n);
                if order.len() >= max_states {
                    closed = false;
                    head = order.len();
                    break;
                }
            }
            head += 1;
        }
        let paths = (0..order.len())
            .map(|i| {
                let mut path = Vec::new();
                let mut cur = i;
                while let Some((p, t)) = parent[&order[cur]] {
                    path.push(t);
                    cur = p;
                }
                path.reverse();
                path
            })
            .collect();
        Exploration { states: order, paths, pumps, closed }
    }
}

/// A cycle from `apex` (an index into the exploration) back to a state that
/// covers it strictly: the last step is `via` taken from state `from`.
#[derive(Debug, Clone)]
pub struct Pump {
    pub apex: usize,
    pub from: usize,
    pub via: usize,
    pub length: usize,
    pub direction: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct Exploration {
    pub states: Vec<State>,
    pub paths: Vec<Vec<usize>>,
    pub pumps: Vec<Pump>,
    pub closed: bool,
}

/// Term order on exponent vectors: total degree, then lexicographic.
fn greater(a: &[u32], b: &[u32]) -> bool {
    let (da, db): (u64, u64) = (a.iter().map(|&x| u64::from(x)).sum(), b.iter().map(|&x| u64::from(x)).sum());
    da > db || (da == db && a > b)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Debug, Clone)]
struct Rule {
    lhs: Vec<u32>,
    rhs: Vec<u32>,
    /// Transitions taking `lhs` to `rhs`.
    path: Vec<usize>,
}

/// A confluent rewriting system for the congruence on configurations
/// generated by the transitions; two configurations are mutually reachable
/// iff they have the same normal form.
#[derive(Debug, Clone)]
pub struct Completion {
    rules: Vec<Rule>,
    dim: usize,
    vertex_count: usize,
}

/// Configuration vector: prime exponents followed by a one-hot vertex.
fn encode(s: &State, dim: usize, vertex_count: usize) -> Vec<u32> {
    let mut v = s.exps.clone();
    v.resize(dim + vertex_count, 0);
    v[dim + s.vertex] = 1;
    v
}

impl Completion {
    pub fn new(sys: &SlideSystem, max_rules: usize) -> Result<Self, usize> {
        let (dim, nv) = (sys.dim(), sys.vertex_count);
        let mut c = Completion { rules: Vec::new(), dim, vertex_count: nv };
        let mut pending: Vec<(Vec<u32>, Vec<u32>, Vec<usize>)> = Vec::new();
        for (t, tr) in sys.transitions.iter().enumerate() {
            if t < sys.reverse(t) {
                let a = encode(&State { vertex: tr.from, exps: tr.pre.clone() }, dim, nv);
                let b = encode(&State { vertex: tr.to, exps: tr.post.clone() }, dim, nv);
                pending.push((a, b, vec![t]));
            }
        }
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        loop {
            while let Some((a, b, path)) = pending.pop() {
                c.add(sys, a, b, path, &mut pairs);
                if c.rules.len() > max_rules {
                    return Err(max_rules);
                }
            }
            let Some((i, j)) = pairs.pop_front() else {
                break;
            };
            let (ri, rj) = (&c.rules[i], &c.rules[j]);
            if ri.lhs.iter().zip(&rj.lhs).all(|(x, y)| x.min(y) == &0) {
                continue;
            }
            let m: Vec<u32> = ri.lhs.iter().zip(&rj.lhs).map(|(x, y)| *x.max(y)).collect();
            let side =
                |r: &Rule| -> Vec<u32> { m.iter().zip(&r.lhs).zip(&r.rhs).map(|((x, l), rr)| x - l + rr).collect() };
            let (a, b) = (side(ri), side(rj));
            let mut path = sys.reverse_path(&ri.path);
            path.extend_from_slice(&rj.path);
            pending.push((a, b, path));
        }
        Ok(c)
    }

    /// Orients `a ~ b` (with `path` taking `a` to `b`) after reducing both.
    fn add(
        &mut self,
        sys: &SlideSystem,
        a: Vec<u32>,
        b: Vec<u32>,
        path: Vec<usize>,
        pairs: &mut VecDeque<(usize, usize)>,
    ) {
        let (na, pa) = self.normal_form(a);
        let (nb, pb) = self.normal_form(b);
        if na == nb {
            return;
        }
        // na -> a -> b -> nb
        let mut full = sys.reverse_path(&pa);
        full.extend(path);
        full.extend(pb);
        let rule = if greater(&na, &nb) {
            Rule { lhs: na, rhs: nb, path: full }
        } else {
            Rule { lhs: nb, rhs: na, path: sys.reverse_path(&full) }
        };
        let k = self.rules.len();
        self.rules.push(rule);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }

    /// Normal form of `w` and the transitions rewriting `w` into it.
    fn normal_form(&self, mut w: Vec<u32>) -> (Vec<u32>, Vec<usize>) {
        let mut path = Vec::new();
        'outer: loop {
            for r in &self.rules {
                if divides(&r.lhs, &w) {
                    for ((x, l), rr) in w.iter_mut().zip(&r.lhs).zip(&r.rhs) {
                        *x = *x - l + rr;
                    }
                    path.extend_from_slice(&r.path);
                    continue 'outer;
                }
            }
            return (w, path);
        }
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Transitions taking `from` to `to`, if they are mutually reachable.
    pub fn connect(&self, sys: &SlideSystem, from: &State, to: &State) -> Option<Vec<usize>> {
        let (na, pa) = self.normal_form(encode(from, self.dim, self.vertex_count));
        let (nb, pb) = self.normal_form(encode(to, self.dim, self.vertex_count));
        if na != nb {
            return None;
        }
        let mut path = pa;
        path.extend(sys.reverse_path(&pb));
        Some(path)
    }
}

/// Removes closed stretches that return to an already visited state.
pub fn shortcut(sys: &SlideSystem, start: &State, path: &[usize]) -> Vec<usize> {
    let mut states = vec![start.clone()];
    let mut out: Vec<usize> = Vec::new();
    for &t in path {
        let next = sys.fire(states.last().expect("nonempty"), t).expect("path replays");
        if let Some(k) = states.iter().position(|s| *s == next) {
            states.truncate(k + 1);
            out.truncate(k);
        } else {
            states.push(next);
            out.push(t);
        }
    }
    out
}
