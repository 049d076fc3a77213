//! Integer feasibility of small linear systems.
//!
//! Dimensions up to two are decided exactly. Higher dimensions are refuted
//! by rational Fourier-Motzkin elimination when the relaxation is empty and
//! otherwise enumerated inside a box.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::decision::Decision;

/// Box used for enumeration in dimension three and above when the system
/// carries no bound of its own.
pub const DEFAULT_SEARCH_BOX: i64 = 64;
const ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintRow {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub relation: Relation,
}

impl ConstraintRow {
    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs: i128 = self.coeffs.iter().zip(x).map(|(&a, &v)| i128::from(a) * i128::from(v)).sum();
        match self.relation {
            Relation::Ge => lhs >= i128::from(self.rhs),
            Relation::Eq => lhs == i128::from(self.rhs),
        }
    }
}

/// Rows `coeffs . x (>= | =) rhs` over `dimension` integer unknowns, with an
/// optional hard bound `|x_i| <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraintSystem {
    pub dimension: usize,
    pub rows: Vec<ConstraintRow>,
    pub bound: Option<i64>,
}

impl LinearConstraintSystem {
    pub fn new(dimension: usize) -> Self {
        LinearConstraintSystem { dimension, rows: Vec::new(), bound: None }
    }

    pub fn ge(mut self, coeffs: Vec<i64>, rhs: i64) -> Self {
        self.push(coeffs, rhs, Relation::Ge);
        self
    }

    pub fn eq(mut self, coeffs: Vec<i64>, rhs: i64) -> Self {
        self.push(coeffs, rhs, Relation::Eq);
        self
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn push(&mut self, coeffs: Vec<i64>, rhs: i64, relation: Relation) {
        assert_eq!(coeffs.len(), self.dimension, "row width must equal the dimension");
        self.rows.push(ConstraintRow { coeffs, rhs, relation });
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        x.len() == self.dimension
            && self.rows.iter().all(|r| r.holds(x))
            && self.bound.is_none_or(|b| x.iter().all(|v| v.abs() <= b))
    }
}

/// `a . x >= b`
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ineq {
    a: Vec<i128>,
    b: i128,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        let g = self.a.iter().fold(self.b, |g, x| g.gcd(x));
        if g > 1 {
            self.a.iter_mut().for_each(|x| *x /= g);
            self.b /= g;
        }
        self
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

/// Closed integer interval with optional ends.
#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: Option<i128>,
    hi: Option<i128>,
}

impl Interval {
    const ALL: Interval = Interval { lo: None, hi: None };

    fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }

    fn raise(&mut self, l: i128) {
        self.lo = Some(self.lo.map_or(l, |x| x.max(l)));
    }

    fn lower(&mut self, h: i128) {
        self.hi = Some(self.hi.map_or(h, |x| x.min(h)));
    }

    /// Integer point closest to zero.
    fn pick(&self) -> Option<i128> {
        if self.is_empty() {
            return None;
        }
        Some(match (self.lo, self.hi) {
            (Some(l), _) if l > 0 => l,
            (_, Some(h)) if h < 0 => h,
            _ => 0,
        })
    }
}

/// Integer values of `x` allowed by one-variable rows `k x >= c`.
fn interval_1d(rows: &[(i128, i128)]) -> Option<Interval> {
    let mut iv = Interval::ALL;
    for &(k, c) in rows {
        match k.signum() {
            1 => iv.raise(ceil_div(c, k)),
            -1 => iv.lower(Integer::div_floor(&-c, &-k)),
            _ if c > 0 => return None,
            _ => {}
        }
    }
    (!iv.is_empty()).then_some(iv)
}

/// Eliminates variable `k` exactly over the rationals.
fn eliminate(rows: &[Ineq], k: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        match r.a[k].signum() {
            1 => pos.push(r),
            -1 => neg.push(r),
            _ => out.push(r.clone()),
        }
    }
    for p in &pos {
        for n in &neg {
            let (cp, cn) = (-n.a[k], p.a[k]);
            let a = p.a.iter().zip(&n.a).map(|(x, y)| cp * x + cn * y).collect();
            out.push(Ineq { a, b: cp * p.b + cn * n.b }.normalized());
        }
    }
    out.sort_by(|x, y| (&x.a, x.b).cmp(&(&y.a, y.b)));
    out.dedup();
    out
}

/// True when the rational relaxation has no point.
fn rationally_empty(rows: &[Ineq], d: usize) -> bool {
    let mut cur = rows.to_vec();
    for k in 0..d {
        cur = eliminate(&cur, k);
    }
    cur.iter().any(|r| r.b > 0)
}

fn to_ineqs(sys: &LinearConstraintSystem) -> Vec<Ineq> {
    let mut out = Vec::new();
    for row in &sys.rows {
        let a: Vec<i128> = row.coeffs.iter().map(|&x| i128::from(x)).collect();
        let b = i128::from(row.rhs);
        if row.relation == Relation::Eq {
            out.push(Ineq { a: a.iter().map(|x| -x).collect(), b: -b });
        }
        out.push(Ineq { a, b });
    }
    if let Some(bound) = sys.bound {
        for i in 0..sys.dimension {
            for s in [1, -1] {
                let mut a = vec![0; sys.dimension];
                a[i] = s;
                out.push(Ineq { a, b: -i128::from(bound) });
            }
        }
    }
    out
}

fn narrow(x: &[i128]) -> Option<Vec<i64>> {
    x.iter().map(|&v| i64::try_from(v).ok()).collect()
}

fn finish(sys: &LinearConstraintSystem, x: Vec<i128>) -> Decision<Vec<i64>> {
    match narrow(&x) {
        Some(x) if sys.satisfied_by(&x) => Decision::yes(x),
        _ => Decision::inconclusive("witness outside 64-bit range"),
    }
}

pub fn ilp_feasible(sys: &LinearConstraintSystem) -> Decision<Vec<i64>> {
    let d = sys.dimension;
    let rows = to_ineqs(sys);
    match d {
        0 if rows.iter().all(|r| r.b <= 0) => Decision::yes(Vec::new()),
        0 => Decision::no("a constant row is violated"),
        1 => {
            let flat: Vec<_> = rows.iter().map(|r| (r.a[0], r.b)).collect();
            match interval_1d(&flat).and_then(|iv| iv.pick()) {
                Some(x) => finish(sys, vec![x]),
                None => Decision::no("the admissible interval contains no integer"),
            }
        }
        2 => match solve_2d(&rows) {
            Ok(Some(x)) => finish(sys, x.to_vec()),
            Ok(None) => Decision::no("the planar region contains no lattice point"),
            Err(bound) => Decision::inconclusive(bound),
        },
        _ => solve_box(sys, &rows),
    }
}

fn solve_2d(rows: &[Ineq]) -> Result<Option<[i128; 2]>, String> {
    if rows.iter().any(|r| r.a == [0, 0] && r.b > 0) {
        return Ok(None);
    }
    let rows: Vec<Ineq> = rows.iter().filter(|r| r.a != [0, 0]).cloned().collect();
    if rows.is_empty() {
        return Ok(Some([0, 0]));
    }
    let dot = |a: &[i128], r: [i128; 2]| a[0] * r[0] + a[1] * r[1];

    let mut candidates = vec![[1, 0], [-1, 0], [0, 1], [0, -1]];
    for r in &rows {
        let g = r.a[0].gcd(&r.a[1]);
        candidates.push([-r.a[1] / g, r.a[0] / g]);
        candidates.push([r.a[1] / g, -r.a[0] / g]);
    }
    let rays: Vec<[i128; 2]> = candidates.into_iter().filter(|&c| rows.iter().all(|r| dot(&r.a, c) >= 0)).collect();

    // A full-dimensional recession cone contains an interior integer
    // direction along which every row eventually holds.
    for (i, r1) in rays.iter().enumerate() {
        for r2 in &rays[i + 1..] {
            if r1[0] * r2[1] - r1[1] * r2[0] != 0 {
                let u = [r1[0] + r2[0], r1[1] + r2[1]];
                let t = rows.iter().map(|r| ceil_div(r.b, dot(&r.a, u)).max(0)).max().unwrap_or(0);
                return Ok(Some([t * u[0], t * u[1]]));
            }
        }
    }

    // Otherwise the recession cone lies on the line through `r`; in the
    // unimodular frame (w, r) the first coordinate is bounded.
    let r = rays.first().copied().unwrap_or([0, 1]);
    let egcd = r[0].extended_gcd(&r[1]);
    // det [w r] = w0 r1 - w1 r0 = 1 with w = (y, -x) from x r0 + y r1 = 1.
    let w = [egcd.y, -egcd.x];
    let frame: Vec<Ineq> = rows.iter().map(|q| Ineq { a: vec![dot(&q.a, w), dot(&q.a, r)], b: q.b }).collect();
    let projected: Vec<(i128, i128)> = eliminate(&frame, 1).iter().map(|q| (q.a[0], q.b)).collect();
    let Some(iv) = interval_1d(&projected) else {
        return Ok(None);
    };
    let (Some(lo), Some(hi)) = (iv.lo, iv.hi) else {
        return Err("unbounded planar projection".into());
    };
    if (hi - lo) as u128 > u128::from(ENUMERATION_CAP) {
        return Err(format!("planar sweep wider than {ENUMERATION_CAP}"));
    }
    for y1 in lo..=hi {
        let line: Vec<(i128, i128)> = frame.iter().map(|q| (q.a[1], q.b - q.a[0] * y1)).collect();
        if let Some(y2) = interval_1d(&line).and_then(|iv| iv.pick()) {
            return Ok(Some([y1 * w[0] + y2 * r[0], y1 * w[1] + y2 * r[1]]));
        }
    }
    Ok(None)
}

fn solve_box(sys: &LinearConstraintSystem, rows: &[Ineq]) -> Decision<Vec<i64>> {
    if rationally_empty(rows, sys.dimension) {
        return Decision::no("rational relaxation is empty");
    }
    let bound = i128::from(sys.bound.unwrap_or(DEFAULT_SEARCH_BOX));
    let mut search = BoxSearch { bound, truncated: false, nodes: 0 };
    let mut x = Vec::with_capacity(sys.dimension);
    match search.dfs(rows, sys.dimension, &mut x) {
        Some(()) => finish(sys, x),
        None if search.nodes >= ENUMERATION_CAP => {
            Decision::inconclusive(format!("branch-and-bound node cap {ENUMERATION_CAP}"))
        }
        None if search.truncated => Decision::inconclusive(format!("search box |x_i| <= {bound}")),
        None => Decision::no("exhaustive branch-and-bound found no lattice point"),
    }
}

struct BoxSearch {
    bound: i128,
    truncated: bool,
    nodes: u64,
}

impl BoxSearch {
    /// Fixes the next coordinate of `x`, ranging over the projection of the
    /// remaining system onto it.
    fn dfs(&mut self, rows: &[Ineq], d: usize, x: &mut Vec<i128>) -> Option<()> {
        let k = x.len();
        if k == d {
            return Some(());
        }
        self.nodes += 1;
        if self.nodes >= ENUMERATION_CAP {
            return None;
        }
        let fixed: Vec<Ineq> = rows
            .iter()
            .map(|r| Ineq {
                a: r.a[k..].to_vec(),
                b: r.b - r.a[..k].iter().zip(x.iter()).map(|(a, v)| a * v).sum::<i128>(),
            })
            .collect();
        let mut proj = fixed.clone();
        for j in (1..d - k).rev() {
            proj = eliminate(&proj, j);
        }
        let flat: Vec<_> = proj.iter().map(|r| (r.a[0], r.b)).collect();
        let iv = interval_1d(&flat)?;
        let lo = iv.lo.unwrap_or(i128::MIN).max(-self.bound);
        let hi = iv.hi.unwrap_or(i128::MAX).min(self.bound);
        if iv.lo.is_none_or(|l| l < -self.bound) || iv.hi.is_none_or(|h| h > self.bound) {
            self.truncated = true;
        }
        if lo > hi {
            return None;
        }
        let mut order: Vec<i128> = (lo..=hi).collect();
        order.sort_by_key(|v| (v.abs(), *v));
        for v in order {
            x.push(v);
            if self.dfs(rows, d, x).is_some() {
                return Some(());
            }
            x.pop();
            if self.nodes >= ENUMERATION_CAP {
                return None;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_example() {
        let sys = LinearConstraintSystem::new(1).ge(vec![2], 3).ge(vec![-1], -2);
        assert_eq!(ilp_feasible(&sys), Decision::yes(vec![2]));
    }

    #[test]
    fn constant_row_refutes() {
        // 0 + 0 x2 + 0 x3 >= 1
        let sys = LinearConstraintSystem::new(2).ge(vec![0, 0], 1);
        assert!(ilp_feasible(&sys).is_no());
    }

    #[test]
    fn zero_dimensional() {
        assert_eq!(ilp_feasible(&LinearConstraintSystem::new(0)), Decision::yes(vec![]));
    }

    #[test]
    fn thin_unbounded_strip_has_no_points() {
        // 1 <= 3 x1 - 3 x2 <= 2 is an unbounded strip between lattice lines
        let sys = LinearConstraintSystem::new(2).ge(vec![3, -3], 1).ge(vec![-3, 3], -2);
        assert!(ilp_feasible(&sys).is_no());
    }

    #[test]
    fn unbounded_cone_yields_witness() {
        let sys = LinearConstraintSystem::new(2).ge(vec![1, 1], 100).ge(vec![1, -1], 7);
        let w = ilp_feasible(&sys).into_witness().unwrap();
        assert!(sys.satisfied_by(&w));
    }

    #[test]
    fn equality_rows() {
        let sys = LinearConstraintSystem::new(2).eq(vec![2, 4], 6).ge(vec![1, 0], 5);
        let w = ilp_feasible(&sys).into_witness().unwrap();
        assert!(sys.satisfied_by(&w));
        let sys = LinearConstraintSystem::new(2).eq(vec![2, 4], 5);
        assert!(ilp_feasible(&sys).is_no());
    }

    #[test]
    fn three_dimensions() {
        let sys = LinearConstraintSystem::new(3).ge(vec![1, 1, 1], 5).ge(vec![-1, 0, 0], -1).eq(vec![0, 2, -2], 2);
        let w = ilp_feasible(&sys).into_witness().unwrap();
        assert!(sys.satisfied_by(&w));
        let sys = LinearConstraintSystem::new(3).ge(vec![1, 0, 0], 1).ge(vec![-1, 0, 0], 0);
        assert!(ilp_feasible(&sys).is_no());
        let sys = LinearConstraintSystem::new(3).eq(vec![2, 2, 2], 1);
        assert!(ilp_feasible(&sys).is_inconclusive());
        assert!(ilp_feasible(&sys.with_bound(5)).is_no());
    }
}
