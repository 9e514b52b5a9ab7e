use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Smith decomposition `u · m · v = d`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries of `d`, in divisibility order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// row[dst] += k · row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = k * &m[(src, j)];
        m[(dst, j)] += v;
    }
}

/// col[dst] += k · col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = k * &m[(i, src)];
        m[(i, dst)] += v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -&m[(r, j)];
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        m[(i, c)] = -&m[(i, c)];
    }
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on the entry of smallest absolute value. Diagonal entries are nonnegative.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, d: a, v };
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(a[(i, t)].div_floor(&pivot));
                add_row(&mut a, i, t, &q);
                add_row(&mut u, i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(a[(t, j)].div_floor(&pivot));
                add_col(&mut a, j, t, &q);
                add_col(&mut v, j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut a, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    Smith { u, d: a, v }
}

/// Nonzero invariant factors of `m`.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariants()
}

/// Column-style Hermite normal form `h = m · t` with `t` unimodular.
///
/// Pivots are positive; entries left of a pivot in its row are reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, t, _) = hermite_with_pivots(m);
    (h, t)
}

fn hermite_with_pivots(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<(usize, usize)>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        loop {
            let best = (k..cols).filter(|&j| !h[(i, j)].is_zero()).min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()));
            let Some(j) = best else { break };
            swap_cols(&mut h, k, j);
            swap_cols(&mut t, k, j);
            let pivot = h[(i, k)].clone();
            let mut done = true;
            for j in k + 1..cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -(h[(i, j)].div_floor(&pivot));
                add_col(&mut h, j, k, &q);
                add_col(&mut t, j, k, &q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut t, k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let q = -(h[(i, j)].div_floor(&pivot));
            add_col(&mut h, j, k, &q);
            add_col(&mut t, j, k, &q);
        }
        pivots.push((i, k));
        k += 1;
    }
    (h, t, pivots)
}

/// Integer solution of `a · x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows against right-hand side of length {}", a.rows(), b.len())));
    }
    let (h, t, pivots) = hermite_with_pivots(a);
    let mut y = vec![BigInt::zero(); a.cols()];
    let mut next = pivots.iter().peekable();
    let mut solved = 0;
    for i in 0..a.rows() {
        let mut residual = b[i].clone();
        for (j, yj) in y.iter().enumerate().take(solved) {
            residual -= &h[(i, j)] * yj;
        }
        match next.peek() {
            Some(&&(pi, pk)) if pi == i => {
                let (q, r) = residual.div_rem(&h[(i, pk)]);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[pk] = q;
                solved = pk + 1;
                next.next();
            }
            _ => {
                if !residual.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let x: Vec<BigInt> = (0..a.cols()).map(|r| (0..a.cols()).map(|c| &t[(r, c)] * &y[c]).sum()).collect();
    // re-verify by multiplication
    let check = a.mul(&IntMatrix::column(&x))?;
    if (0..a.rows()).any(|i| check[(i, 0)] != b[i]) {
        return Ok(None);
    }
    Ok(Some(x))
}
