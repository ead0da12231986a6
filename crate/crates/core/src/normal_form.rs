//! Smith and Hermite normal forms, integer kernels and integer linear systems.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::int::{floor_div, Int};
use crate::matrix::IntMatrix;

/// Result of a Smith normal form computation: `u * a * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `d_0 | d_1 | ... | d_{rank-1}`.
    pub fn invariants(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Returns `(U, D, V)` with `U A V = D` diagonal, `U` and `V` unimodular and
/// each nonzero diagonal entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(a);
    (s.u, s.d, s.v)
}

/// Smith normal form with the inverse transforms kept as well.
///
/// The pivot is always an entry of least nonzero absolute value in the
/// remaining block, ties broken by row then column.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        let p = d[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = floor_div(&d[(i, t)], &p);
            d.add_row_multiple(i, t, &-&q);
            u.add_row_multiple(i, t, &-&q);
            u_inv.add_col_multiple(t, i, &q);
            clean &= d[(i, t)].is_zero();
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = floor_div(&d[(t, j)], &p);
            d.add_col_multiple(j, t, &-&q);
            v.add_col_multiple(j, t, &-&q);
            v_inv.add_row_multiple(t, j, &q);
            clean &= d[(t, j)].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &p).is_zero()));
        if let Some(i) = bad {
            d.add_row_multiple(t, i, &Int::one());
            u.add_row_multiple(t, i, &Int::one());
            u_inv.add_col_multiple(i, t, &-Int::one());
            continue;
        }
        if p.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    Smith { u, d, v, u_inv, v_inv, rank: t }
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = a.rows();
    if let Some(small) = a.small_entries() {
        match inverse_small(small, n) {
            Some(Some(inv)) => return Ok(IntMatrix::from_rows(&inv.chunks(n.max(1)).take(n).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect::<Vec<_>>(), n)?),
            Some(None) => return Err(Error::NoSolution("matrix is not unimodular".into())),
            None => {}
        }
    }
    let s = smith(a);
    if s.rank != a.rows() || !(0..s.rank).all(|i| s.d[(i, i)].is_one()) {
        return Err(Error::NoSolution("matrix is not unimodular".into()));
    }
    s.v.mul(&s.u)
}

/// Gauss-Jordan elimination by unimodular row operations in `i128`.
///
/// `Some(None)` when the matrix is not unimodular, `None` on overflow.
fn inverse_small(mut a: Vec<i128>, n: usize) -> Option<Option<Vec<i128>>> {
    let mut b = vec![0i128; n * n];
    for i in 0..n {
        b[i * n + i] = 1;
    }
    let row_op = |m: &mut Vec<i128>, dst: usize, src: usize, c: i128| -> Option<()> {
        for j in 0..n {
            m[dst * n + j] = m[dst * n + j].checked_sub(c.checked_mul(m[src * n + j])?)?;
        }
        Some(())
    };
    let swap = |m: &mut Vec<i128>, x: usize, y: usize| {
        if x != y {
            for j in 0..n {
                m.swap(x * n + j, y * n + j);
            }
        }
    };
    for c in 0..n {
        loop {
            let piv = (c..n).filter(|&i| a[i * n + c] != 0).min_by_key(|&i| a[i * n + c].unsigned_abs());
            let Some(p) = piv else { return Some(None) };
            swap(&mut a, p, c);
            swap(&mut b, p, c);
            let mut done = true;
            for i in c + 1..n {
                let q = a[i * n + c] / a[c * n + c];
                if q != 0 {
                    row_op(&mut a, i, c, q)?;
                    row_op(&mut b, i, c, q)?;
                }
                if a[i * n + c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[c * n + c].unsigned_abs() != 1 {
            return Some(None);
        }
        if a[c * n + c] == -1 {
            for j in 0..n {
                a[c * n + j] = -a[c * n + j];
                b[c * n + j] = -b[c * n + j];
            }
        }
    }
    for c in (0..n).rev() {
        for i in 0..c {
            let q = a[i * n + c];
            if q != 0 {
                row_op(&mut a, i, c, q)?;
                row_op(&mut b, i, c, q)?;
            }
        }
    }
    Some(Some(b))
}

/// Row echelon reduction restricted to the first `pivot_cols` columns.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and the
/// number of pivot rows is returned alongside the reduced rows.
fn echelon(mut a: Vec<Vec<Int>>, pivot_cols: usize) -> (Vec<Vec<Int>>, Vec<usize>) {
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[b][c].abs() <= a[i][c].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = floor_div(&a[i][c], &a[r][c]);
                sub_multiple(&mut a, i, r, &q);
                done &= a[i][c].is_zero();
            }
            if done {
                if a[r][c].is_negative() {
                    for x in a[r].iter_mut() {
                        *x = -&*x;
                    }
                }
                for i in 0..r {
                    let q = floor_div(&a[i][c], &a[r][c]);
                    sub_multiple(&mut a, i, r, &q);
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    (a, pivots)
}

fn sub_multiple(a: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Hermite normal form of the lattice spanned by `rows`, as nonzero rows.
pub fn hermite_rows(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let (a, pivots) = echelon(rows.to_vec(), n);
    a.into_iter().take(pivots.len()).collect()
}

/// Pivot column of each row of a Hermite basis.
pub fn pivot_columns(hnf: &[Vec<Int>]) -> Vec<usize> {
    hnf.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("zero row")).collect()
}

/// Canonical representative of `x` modulo the lattice with Hermite basis `hnf`.
pub fn reduce_mod_lattice(x: &[Int], hnf: &[Vec<Int>]) -> Vec<Int> {
    let mut x = x.to_vec();
    for row in hnf {
        let c = row.iter().position(|e| !e.is_zero()).expect("zero row");
        let q = floor_div(&x[c], &row[c]);
        if !q.is_zero() {
            for (a, b) in x.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
    }
    x
}

/// Whether `x` lies in the lattice with Hermite basis `hnf`.
pub fn in_lattice(x: &[Int], hnf: &[Vec<Int>]) -> bool {
    reduce_mod_lattice(x, hnf).iter().all(Zero::is_zero)
}

/// Hermite basis of `{x : a x = 0}`.
pub fn kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|j| {
            let mut r = a.col(j);
            r.extend((0..n).map(|k| if k == j { Int::one() } else { Int::zero() }));
            r
        })
        .collect();
    let (red, pivots) = echelon(rows, m);
    let ker: Vec<Vec<Int>> = red.into_iter().skip(pivots.len()).map(|r| r[m..].to_vec()).collect();
    hermite_rows(&ker, n)
}

/// Hermite basis of the intersection of two lattices in `Z^n`.
pub fn lattice_intersection(a: &[Vec<Int>], b: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Int>> = a.to_vec();
    cols.extend(b.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
    let m = IntMatrix::from_cols(&cols, n).expect("shape");
    let k = kernel(&m);
    let vecs: Vec<Vec<Int>> = k
        .iter()
        .map(|c| {
            let mut v = vec![Int::zero(); n];
            for (coef, row) in c.iter().zip(a) {
                if !coef.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += coef * y;
                    }
                }
            }
            v
        })
        .collect();
    hermite_rows(&vecs, n)
}

/// Some integer solution of `a x = y`, if one exists.
pub fn solve_integer(a: &IntMatrix, y: &[Int]) -> Result<Option<Vec<Int>>> {
    if y.len() != a.rows() {
        return Err(Error::Dimension("right hand side length".into()));
    }
    let s = smith(a);
    let c = s.u.mul_vec(y)?;
    let mut w = vec![Int::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let di = &s.d[(i, i)];
            if !(ci % di).is_zero() {
                return Ok(None);
            }
            w[i] = ci / di;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&w)?))
}
