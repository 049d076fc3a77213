//! Commutation of slide moves of distinct edges.
//!
//! Two consecutive slides `e/P · F/Q` of different geometric edges can be
//! performed in the opposite order after rewriting their paths, except for
//! a handful of patterns that only replay when the group is ascending.
//! Some rewrites also exchange the roles of the two edges; the exchange is
//! recorded as a [`Renaming`] that applies to every later slide.
//!
//! Case letters follow the classification of the pair `e/P · F/Q`, with
//! `F` the half-edge slid second:
//!
//! | shape                                   | single steps | general |
//! |-----------------------------------------|--------------|---------|
//! | no cross reference                      | a            | a       |
//! | `P ∋ F`, `Q` free of `e`                | b            | k       |
//! | `P ∋ F̄`, `Q` free of `e`                | c            | l       |
//! | `P` free of `F`, `Q ∋ e`                | d            | m       |
//! | `P` free of `F`, `Q ∋ ē`                | e            | n       |
//! | `P ∋ F`, `Q ∋ e` (forbidden)            | f            | o       |
//! | `P ∋ F`, `Q ∋ ē` (forbidden)            | g            | p       |
//! | `P ∋ F̄`, `Q ∋ ē` (forbidden)            | h            | q       |
//! | `P ∋ F̄`, `Q ∋ e` (renaming)             | i            | r       |
//! | same geometric edge, opposite ends      | j            | j       |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GbsError, Result};
use crate::graph::{Edge, HalfEdge, LabeledGraph};
use crate::moves::{apply_slide, remove_redundant_subcycles, EdgePath, Move};

/// A slide `edge / path`, by half-edge names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideSymbol {
    pub edge: String,
    pub path: Vec<String>,
}

impl SlideSymbol {
    pub fn new(edge: impl Into<String>, path: &[&str]) -> Self {
        SlideSymbol { edge: edge.into(), path: path.iter().map(|s| s.to_string()).collect() }
    }

    pub fn to_move(&self) -> Move {
        Move::Slide { edge: self.edge.clone(), path: self.path.clone() }
    }

    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        self.to_move().apply(g)
    }
}

/// A permutation of half-edges commuting with reversal. After a renaming
/// `σ`, the edge formerly named `x` is named `σ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renaming {
    image: Vec<HalfEdge>,
}

impl Renaming {
    pub fn identity(g: &LabeledGraph) -> Self {
        Renaming { image: g.half_edges().collect() }
    }

    fn swap(g: &LabeledGraph, e: HalfEdge, f: HalfEdge) -> Self {
        // e ↦ f, f ↦ ē
        let mut r = Self::identity(g);
        r.image[e.index()] = f;
        r.image[e.bar().index()] = f.bar();
        r.image[f.index()] = e.bar();
        r.image[f.bar().index()] = e;
        r
    }

    pub fn map(&self, h: HalfEdge) -> HalfEdge {
        self.image[h.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, h)| h.index() == i)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Renaming) -> Renaming {
        Renaming { image: first.image.iter().map(|&h| self.map(h)).collect() }
    }

    pub fn to_names(&self, g: &LabeledGraph) -> BTreeMap<String, String> {
        (0..g.edge_count())
            .map(HalfEdge::forward)
            .filter(|&h| self.map(h) != h)
            .map(|h| (g.half_edge_name(h), g.half_edge_name(self.map(h))))
            .collect()
    }

    /// The graph with every edge renamed.
    pub fn apply_graph(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let to = self.map(HalfEdge::forward(i));
                let name = g.edges()[to.edge].name.clone();
                if to.reversed {
                    Edge { name, origin: e.terminus, terminus: e.origin, labels: [e.labels[1], e.labels[0]] }
                } else {
                    Edge { name, ..e.clone() }
                }
            })
            .collect();
        LabeledGraph::new(g.vertices().to_vec(), edges)
    }
}

/// A slide in index form.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sym {
    edge: HalfEdge,
    path: Vec<HalfEdge>,
}

impl Sym {
    fn resolve(g: &LabeledGraph, s: &SlideSymbol) -> Result<Sym> {
        Ok(Sym { edge: g.half_edge(&s.edge)?, path: g.resolve_path(&s.path)? })
    }

    fn names(&self, g: &LabeledGraph) -> SlideSymbol {
        SlideSymbol { edge: g.half_edge_name(self.edge), path: g.path_names(&self.path) }
    }

    fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        apply_slide(g, self.edge, &EdgePath::new(self.path.clone()))
    }

    fn rename(&self, r: &Renaming) -> Sym {
        Sym { edge: r.map(self.edge), path: self.path.iter().map(|&h| r.map(h)).collect() }
    }

    fn reduced(mut self, g: &LabeledGraph) -> Sym {
        self.path = remove_redundant_subcycles(g, &EdgePath::new(self.path)).steps;
        self
    }
}

fn bar_path(p: &[HalfEdge]) -> Vec<HalfEdge> {
    p.iter().rev().map(|h| h.bar()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Commuted {
    /// Slides of the second edge now come first; `renaming` applies to
    /// every later slide and relates the two final graphs.
    Rearranged {
        case: char,
        slides: Vec<SlideSymbol>,
        renaming: BTreeMap<String, String>,
    },
    Forbidden {
        case: char,
    },
}

enum Rewrite {
    Done { case: char, slides: Vec<Sym>, renaming: Option<Renaming> },
    Forbidden(char),
}
/// Case letter of a pair of slides of distinct edges whose paths are free of
/// Lemma case of a pair of slides of distinct edges whose paths are free of
/// redundant subcycles.
fn classify(e: HalfEdge, p: &[HalfEdge], f: HalfEdge, q: &[HalfEdge]) -> char {
    if e.edge == f.edge {
        return 'j';
    }
    let pf = p.contains(&f);
    let pfb = p.contains(&f.bar());
    let qe = q.contains(&e);
    let qeb = q.contains(&e.bar());
    let (short, long, short_when) = match (pf || pfb, qe || qeb) {
        (false, false) => ('a', 'a', true),
        (true, false) if pf => ('b', 'k', p.len() == 1),
        (true, false) => ('c', 'l', p.len() == 1),
        (false, true) if qe => ('d', 'm', q.len() == 1),
        (false, true) => ('e', 'n', q.len() == 1),
        (true, true) => {
            let c = match (pf, qe) {
                (true, true) => ('f', 'o'),
                (true, false) => ('g', 'p'),
                (false, false) => ('h', 'q'),
                (false, true) => ('i', 'r'),
            };
            (c.0, c.1, p.len() == 1 && q.len() == 1)
        }
    };
    if short_when {
        short
    } else {
        long
    }
}

fn count(p: &[HalfEdge], edge: usize) -> usize {
    p.iter().filter(|h| h.edge == edge).count()
}

/// Rewrites `x · y` (valid on `g`) so that slides of `y`'s edge come first.
fn rewrite_pair(g: &LabeledGraph, x: &Sym, y: &Sym, atom_cap: usize) -> Result<Rewrite> {
    let (e, p, f, q) = (x.edge, &x.path, y.edge, &y.path);
    let case = classify(e, p, f, q);
    let done = |slides: Vec<Sym>, renaming| Rewrite::Done { case, slides, renaming };
    match case {
        'j' | 'a' => return Ok(done(vec![y.clone(), x.clone()], None)),
        'b' | 'c' | 'k' | 'l' => {
            let mut p2 = Vec::new();
            for &h in p {
                if h == f {
                    p2.extend_from_slice(q);
                    p2.push(f);
                } else if h == f.bar() {
                    p2.push(h);
                    p2.extend(bar_path(q));
                } else {
                    p2.push(h);
                }
            }
            return Ok(done(vec![y.clone(), Sym { edge: e, path: p2 }], None));
        }
        'd' | 'e' | 'm' | 'n' => {
            let mut q2 = Vec::new();
            for &h in q {
                if h == e {
                    q2.extend(bar_path(p));
                    q2.push(e);
                } else if h == e.bar() {
                    q2.push(h);
                    q2.extend_from_slice(p);
                } else {
                    q2.push(h);
                }
            }
            return Ok(done(vec![Sym { edge: f, path: q2 }, x.clone()], None));
        }
        _ => {}
    }
    let single = count(p, f.edge) == 1 && count(q, e.edge) == 1;
    if single && matches!(case, 'f' | 'g' | 'h' | 'o' | 'p' | 'q') {
        return Ok(Rewrite::Forbidden(case));
    }
    if single {
        // P = A f̄ A', Q = B e B'
        let i = p.iter().position(|h| h.edge == f.edge).expect("occurs");
        let j = q.iter().position(|h| h.edge == e.edge).expect("occurs");
        let (a, a2) = (&p[..i], &p[i + 1..]);
        let (b, b2) = (&q[..j], &q[j + 1..]);
        if a2 == b {
            let mut second = bar_path(a);
            second.push(e);
            let slides = [
                Sym { edge: f, path: a2.to_vec() },
                Sym { edge: f.bar(), path: second },
                Sym { edge: e, path: a.to_vec() },
                Sym { edge: e.bar(), path: b2.to_vec() },
            ]
            .into_iter()
            .filter(|s| !s.path.is_empty())
            .collect();
            return Ok(done(slides, Some(Renaming::swap(g, e, f))));
        }
    }
    atomic_bubble(g, x, y, case, atom_cap)
}

/// Single-step rule for `e/a · f/b`.
fn atomic_rule(e: HalfEdge, a: HalfEdge, f: HalfEdge, b: HalfEdge) -> (char, Option<Vec<(HalfEdge, HalfEdge)>>, bool) {
    let case = classify(e, &[a], f, &[b]);
    let out = match case {
        'a' | 'j' => vec![(f, b), (e, a)],
        'b' => vec![(f, b), (e, b), (e, f)],
        'c' => vec![(f, b), (e, f.bar()), (e, b.bar())],
        'd' => vec![(f, a.bar()), (f, e), (e, a)],
        'e' => vec![(f, e.bar()), (f, a), (e, a)],
        'i' => return (case, Some(vec![(f.bar(), e)]), true),
        _ => return (case, None, false),
    };
    (case, Some(out), false)
}

/// Splits both slides into single steps and bubbles the steps of `y`'s
/// edge to the front one adjacent pair at a time.
fn atomic_bubble(g: &LabeledGraph, x: &Sym, y: &Sym, case: char, cap: usize) -> Result<Rewrite> {
    let front = y.edge.edge;
    let mut atoms: Vec<(HalfEdge, HalfEdge)> =
        x.path.iter().map(|&a| (x.edge, a)).chain(y.path.iter().map(|&b| (y.edge, b))).collect();
    let mut renaming = Renaming::identity(g);
    let mut steps = 0;
    while let Some(k) =
        (0..atoms.len().saturating_sub(1)).find(|&k| atoms[k].0.edge != front && atoms[k + 1].0.edge == front)
    {
        steps += 1;
        if steps > cap {
            return Err(GbsError::RewriteFailed(case));
        }
        let ((e, a), (f, b)) = (atoms[k], atoms[k + 1]);
        match atomic_rule(e, a, f, b) {
            (_, None, _) => return Ok(Rewrite::Forbidden(case)),
            (_, Some(out), rename) => {
                let n = out.len();
                atoms.splice(k..k + 2, out);
                if rename {
                    let r = Renaming::swap(g, e, f);
                    for atom in &mut atoms[k + n..] {
                        *atom = (r.map(atom.0), r.map(atom.1));
                    }
                    renaming = r.after(&renaming);
                }
            }
        }
    }
    let mut slides: Vec<Sym> = Vec::new();
    for (h, a) in atoms {
        match slides.last_mut() {
            Some(s) if s.edge == h => s.path.push(a),
            _ => slides.push(Sym { edge: h, path: vec![a] }),
        }
    }
    let renaming = (!renaming.is_identity()).then_some(renaming);
    Ok(Rewrite::Done { case, slides, renaming })
}

fn replay(g: &LabeledGraph, seq: &[Sym]) -> Result<LabeledGraph> {
    seq.iter().enumerate().try_fold(g.clone(), |cur, (i, s)| {
        s.apply(&cur).map_err(|err| GbsError::InvalidSequence(format!("slide {}: {err}", i + 1)))
    })
}

const ATOM_CAP: usize = 4096;

/// Reorders `first · second` so that the slides of `second`'s edge come
/// first, or reports a pattern that cannot replay on a non-ascending rose.
pub fn commute_pair(g: &LabeledGraph, first: &SlideSymbol, second: &SlideSymbol) -> Result<Commuted> {
    let x = Sym::resolve(g, first)?.reduced(g);
    let g1 = x.apply(g).map_err(|err| GbsError::InvalidSequence(format!("first slide: {err}")))?;
    let y = Sym::resolve(&g1, second)?.reduced(&g1);
    let g2 = y.apply(&g1).map_err(|err| GbsError::InvalidSequence(format!("second slide: {err}")))?;
    if x.edge == y.edge {
        return Err(GbsError::InvalidSequence("both slides move the same half-edge".into()));
    }
    match rewrite_pair(g, &x, &y, ATOM_CAP)? {
        Rewrite::Forbidden(case) => Ok(Commuted::Forbidden { case }),
        Rewrite::Done { case, slides, renaming } => {
            let renaming = renaming.unwrap_or_else(|| Renaming::identity(g));
            let end = replay(g, &slides).map_err(|_| GbsError::RewriteFailed(case))?;
            if end != renaming.apply_graph(&g2)? {
                return Err(GbsError::RewriteFailed(case));
            }
            Ok(Commuted::Rearranged {
                case,
                slides: slides.iter().map(|s| s.names(g)).collect(),
                renaming: renaming.to_names(g),
            })
        }
    }
}

/// Progress measure of a rearrangement: slides whose path crosses another
/// ordered edge, then out-of-order pairs.
pub fn complexity(g: &LabeledGraph, seq: &[SlideSymbol], edge_order: &[String]) -> Result<(usize, usize)> {
    let rank = ranks(g, edge_order)?;
    let syms = seq.iter().map(|s| Sym::resolve(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(measure(&syms, &rank))
}

fn ranks(g: &LabeledGraph, edge_order: &[String]) -> Result<Vec<Option<usize>>> {
    let mut rank = vec![None; g.edge_count()];
    for (r, name) in edge_order.iter().enumerate() {
        rank[g.edge_index(name)?] = Some(r);
    }
    Ok(rank)
}

fn measure(seq: &[Sym], rank: &[Option<usize>]) -> (usize, usize) {
    let crossing =
        seq.iter().filter(|s| s.path.iter().any(|h| h.edge != s.edge.edge && rank[h.edge].is_some())).count();
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if rank[seq[i].edge.edge] > rank[seq[j].edge.edge] {
                inversions += 1;
            }
        }
    }
    (crossing, inversions)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    pub case: char,
    pub measure_before: (usize, usize),
    pub measure_after: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rearrangement {
    pub slides: Vec<SlideSymbol>,
    /// Relates the two final graphs: the edge named `x` after the input
    /// sequence is named `renaming[x]` after the output.
    pub renaming: BTreeMap<String, String>,
    pub steps: Vec<RewriteStep>,
}

/// Groups the slides of `seq` by geometric edge in the order `edge_order`,
/// by repeatedly commuting the first out-of-order adjacent pair.
pub fn rearrange_by_edge(g: &LabeledGraph, seq: &[SlideSymbol], edge_order: &[String]) -> Result<Rearrangement> {
    let rank = ranks(g, edge_order)?;
    let mut syms = Vec::new();
    let mut cur = g.clone();
    for (i, s) in seq.iter().enumerate() {
        let sym = Sym::resolve(&cur, s)?.reduced(&cur);
        if rank[sym.edge.edge].is_none() {
            return Err(GbsError::InvalidSequence(format!("slide {} moves an edge outside the order", i + 1)));
        }
        cur = sym.apply(&cur).map_err(|err| GbsError::InvalidSequence(format!("slide {}: {err}", i + 1)))?;
        if !sym.path.is_empty() {
            syms.push(sym);
        }
    }
    let target = cur;
    let mut renaming = Renaming::identity(g);
    let mut steps = Vec::new();
    let mut budget = ATOM_CAP;
    while let Some(k) =
        (0..syms.len().saturating_sub(1)).find(|&k| rank[syms[k].edge.edge] > rank[syms[k + 1].edge.edge])
    {
        budget = budget.checked_sub(1).ok_or(GbsError::RewriteFailed('*'))?;
        let before = replay(g, &syms[..k])?;
        let measure_before = measure(&syms, &rank);
        let (case, out, r) = match rewrite_pair(&before, &syms[k], &syms[k + 1], ATOM_CAP)? {
            Rewrite::Forbidden(case) => return Err(GbsError::ForbiddenEncountered(case)),
            Rewrite::Done { case, slides, renaming } => (case, slides, renaming),
        };
        let n = out.len();
        syms.splice(k..k + 2, out);
        if let Some(r) = r {
            for s in &mut syms[k + n..] {
                *s = s.rename(&r);
            }
            renaming = r.after(&renaming);
        }
        steps.push(RewriteStep { position: k, case, measure_before, measure_after: measure(&syms, &rank) });
    }
    // Merge neighbours sliding the same half-edge.
    let mut merged: Vec<Sym> = Vec::new();
    let mut cur = g.clone();
    for s in syms {
        match merged.last_mut() {
            Some(last) if last.edge == s.edge => {
                last.path.extend(s.path);
            }
            _ => merged.push(s),
        }
    }
    let mut out = Vec::new();
    for s in merged {
        let s = s.reduced(&cur);
        if s.path.is_empty() {
            continue;
        }
        cur = s.apply(&cur).map_err(|_| GbsError::RewriteFailed('*'))?;
        out.push(s);
    }
    if cur != renaming.apply_graph(&target)? {
        return Err(GbsError::RewriteFailed('*'));
    }
    Ok(Rearrangement { slides: out.iter().map(|s| s.names(g)).collect(), renaming: renaming.to_names(g), steps })
}
