//! Integer linear algebra: Smith diagonalization for solving `A y = b`
//! and Hermite normal form for comparing lattices.

use crate::decision::Decision;
use crate::error::{GbsError, Result};

type Matrix = Vec<Vec<i128>>;

fn overflow() -> GbsError {
    GbsError::Overflow("integer linear algebra")
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// `rows[dst] -= q * rows[src]`
fn row_sub(m: &mut Matrix, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for j in 0..m[dst].len() {
        let t = m[src][j].checked_mul(q).ok_or_else(overflow)?;
        m[dst][j] = m[dst][j].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_sub(m: &mut Matrix, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let t = row[src].checked_mul(q).ok_or_else(overflow)?;
        row[dst] = row[dst].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_swap(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Diagonal form `U A V = D` with `U`, `V` unimodular.
struct Smith {
    diag: Vec<i128>,
    u: Matrix,
    v: Matrix,
}

fn smith(a: &[Vec<i64>]) -> Result<Smith> {
    let r = a.len();
    let d = a[0].len();
    let mut m: Matrix = a.iter().map(|row| row.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut u = identity(r);
    let mut v = identity(d);
    let mut diag = Vec::new();
    for t in 0..r.min(d) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..d).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Ok(Smith { diag, u, v });
            };
            m.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut m, t, pj);
            col_swap(&mut v, t, pj);
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let q = m[i][t].div_euclid(p);
                row_sub(&mut m, i, t, q)?;
                row_sub(&mut u, i, t, q)?;
                clean &= m[i][t] == 0;
            }
            for j in t + 1..d {
                let q = m[t][j].div_euclid(p);
                col_sub(&mut m, j, t, q)?;
                col_sub(&mut v, j, t, q)?;
                clean &= m[t][j] == 0;
            }
            if clean {
                diag.push(p);
                break;
            }
        }
    }
    Ok(Smith { diag, u, v })
}

/// Integer solution of `A y = b`, decided exactly.
pub fn solve_integer_linear(a: &[Vec<i64>], b: &[i64]) -> Result<Decision<Vec<i64>>> {
    let r = a.len();
    if r == 0 || a[0].is_empty() {
        return Err(GbsError::DimensionMismatch("empty matrix".into()));
    }
    let d = a[0].len();
    if a.iter().any(|row| row.len() != d) || b.len() != r {
        return Err(GbsError::DimensionMismatch(format!(
            "matrix is {r}x{d} but right-hand side has {} entries",
            b.len()
        )));
    }
    let Smith { diag, u, v } = smith(a)?;
    let mut c = vec![0i128; r];
    for (i, row) in u.iter().enumerate() {
        for (&uij, &bj) in row.iter().zip(b) {
            let t = uij.checked_mul(i128::from(bj)).ok_or_else(overflow)?;
            c[i] = c[i].checked_add(t).ok_or_else(overflow)?;
        }
    }
    let mut z = vec![0i128; d];
    for (i, &ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(&di) if ci % di != 0 => {
                return Ok(Decision::no(format!("invariant factor {di} does not divide transformed entry {ci}")))
            }
            Some(&di) => z[i] = ci / di,
            None if ci != 0 => return Ok(Decision::no("right-hand side is outside the column space")),
            None => {}
        }
    }
    let mut y = Vec::with_capacity(d);
    for row in &v {
        let mut acc = 0i128;
        for (&vij, &zj) in row.iter().zip(&z) {
            acc = acc.checked_add(vij.checked_mul(zj).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        y.push(i64::try_from(acc).map_err(|_| overflow())?);
    }
    Ok(Decision::yes(y))
}

/// Row Hermite normal form of the lattice spanned by `rows`, zero rows
/// dropped. Two generator sets span the same lattice iff their forms agree.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<Vec<Vec<i128>>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut m: Matrix = rows.iter().map(|row| row.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut top = 0;
    for col in 0..n {
        loop {
            let pivot = (top..m.len()).filter(|&i| m[i][col] != 0).min_by_key(|&i| m[i][col].unsigned_abs());
            let Some(pi) = pivot else { break };
            m.swap(top, pi);
            let mut done = true;
            for i in top + 1..m.len() {
                let q = m[i][col].div_euclid(m[top][col]);
                row_sub(&mut m, i, top, q)?;
                done &= m[i][col] == 0;
            }
            if done {
                break;
            }
        }
        if top < m.len() && m[top][col] != 0 {
            if m[top][col] < 0 {
                for x in m[top].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..top {
                let q = m[i][col].div_euclid(m[top][col]);
                row_sub(&mut m, i, top, q)?;
            }
            top += 1;
        }
    }
    m.truncate(top);
    Ok(m)
}

pub fn lattices_equal(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<bool> {
    Ok(hermite_normal_form(a)? == hermite_normal_form(b)?)
}
