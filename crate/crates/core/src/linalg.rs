//! Dense linear algebra over Q and minors of polynomial matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(mut m: QMatrix) -> (QMatrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    (m, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m.clone()).1.len()
}

/// Basis of the row space (the nonzero rows of the reduced echelon form).
pub fn row_basis(rows: QMatrix) -> QMatrix {
    rref(rows).0
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &QMatrix, cols: usize) -> QMatrix {
    let (r, pivots) = rref(m.clone());
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn det(m: &QMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Solves `m x = b`, returning one solution if any.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n.saturating_sub(k - cur.len()) {
            if i >= n {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// Number of `k`-minors of an `m x n` matrix, saturating.
pub fn minor_count(m: usize, n: usize, k: usize) -> u64 {
    binom(m, k).saturating_mul(binom(n, k))
}

/// All `k x k` minors for one choice of columns, indexed by row subset, via Laplace
/// expansion along the columns with memoized sub-minors.
fn minors_for_columns(
    mat: &[Vec<Polynomial>],
    cols: &[usize],
    arity: usize,
) -> Vec<(u128, Polynomial)> {
    let m = mat.len();
    let mut layer: HashMap<u128, Polynomial> = HashMap::new();
    layer.insert(0, Polynomial::one(arity));
    for &c in cols {
        let mut next: HashMap<u128, Polynomial> = HashMap::new();
        for (mask, sub) in &layer {
            if sub.is_zero() {
                continue;
            }
            for r in 0..m {
                if mask & (1 << r) != 0 || mat[r][c].is_zero() {
                    continue;
                }
                // Sign: the new row is placed last in the column expansion.
                let above = (mask >> r).count_ones();
                let term = &mat[r][c] * sub;
                let e = next
                    .entry(mask | (1 << r))
                    .or_insert_with(|| Polynomial::zero(arity));
                *e = if above % 2 == 0 {
                    &*e + &term
                } else {
                    &*e - &term
                };
            }
        }
        layer = next;
    }
    let mut out: Vec<(u128, Polynomial)> = layer.into_iter().collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

/// Nonzero `k x k` minors of a polynomial matrix. Each generated minor counts against
/// `budget.minor_cap` through `used`.
pub fn minors(
    mat: &[Vec<Polynomial>],
    k: usize,
    arity: usize,
    budget: &Budget,
    used: &mut u64,
) -> Result<Vec<Polynomial>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    if k == 0 {
        return Ok(vec![Polynomial::one(arity)]);
    }
    if k > rows || k > cols {
        return Ok(vec![]);
    }
    if rows > 128 {
        return Err(Error::Invalid("matrix too tall for minor expansion".into()));
    }
    let mut out = Vec::new();
    for cs in combinations(cols, k) {
        *used = used.saturating_add(binom(rows, k));
        budget.check_minors(*used)?;
        budget.check_time()?;
        for (_, p) in minors_for_columns(mat, &cs, arity) {
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Determinant of a square polynomial matrix.
pub fn det_poly(mat: &[Vec<Polynomial>], arity: usize) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::one(arity);
    }
    let cols: Vec<usize> = (0..n).collect();
    minors_for_columns(mat, &cols, arity)
        .pop()
        .map(|(_, p)| p)
        .unwrap_or_else(|| Polynomial::zero(arity))
}

/// Evaluates a polynomial matrix at a point.
pub fn eval_matrix(mat: &[Vec<Polynomial>], point: &[Rational]) -> QMatrix {
    mat.iter()
        .map(|r| r.iter().map(|p| p.eval(point)).collect())
        .collect()
}
