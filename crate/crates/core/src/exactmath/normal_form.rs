use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

type BigRows = Vec<Vec<BigInt>>;

fn big_identity(n: usize) -> BigRows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// `row[dst] -= q * row[src]`
fn row_axpy(m: &mut BigRows, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

fn col_axpy(m: &mut BigRows, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

fn negate_row(m: &mut BigRows, i: usize) {
    for x in m[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn swap_cols(m: &mut BigRows, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·M = H`, `U`
/// unimodular, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let (rows, cols) = m.shape();
    if rows == 0 {
        return Err(Error::EmptyInput);
    }
    let mut h = m.to_big();
    let mut u = big_identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below pivot_row
            let best = (pivot_row..rows)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..rows {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[pivot_row][col]);
                row_axpy(&mut h, i, pivot_row, &q);
                row_axpy(&mut u, i, pivot_row, &q);
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[i][col].div_floor(&h[pivot_row][col]);
            row_axpy(&mut h, i, pivot_row, &q);
            row_axpy(&mut u, i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    Ok((
        IntMatrix::from_big(&h, cols)?,
        IntMatrix::from_big(&u, rows)?,
    ))
}

/// Result of [`smith_normal_form`]: `u · m · v = s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)]).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms on both sides.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyInput);
    }
    let mut s = m.to_big();
    let mut u = big_identity(rows);
    let mut v = big_identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s, u, v, rows, cols);
            };
            s.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut s, t, bj);
            swap_cols(&mut v, t, bj);

            let mut done = true;
            for i in t + 1..rows {
                let q = s[i][t].div_floor(&s[t][t]);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !s[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = s[t][j].div_floor(&s[t][t]);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !s[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    finish(s, u, v, rows, cols)
}

fn finish(s: BigRows, u: BigRows, v: BigRows, rows: usize, cols: usize) -> Result<SmithForm> {
    Ok(SmithForm {
        s: IntMatrix::from_big(&s, cols)?,
        u: IntMatrix::from_big(&u, rows)?,
        v: IntMatrix::from_big(&v, cols)?,
    })
}

/// Determinant by fraction-free (Bareiss) elimination over big integers.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: cols,
        });
    }
    Ok(bareiss(m.to_big()))
}

pub(crate) fn bareiss(mut a: BigRows) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse of a unimodular matrix; errors if the matrix is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let (n, c) = m.shape();
    if n != c {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c,
        });
    }
    let det = determinant(m)?;
    if det.abs() != BigInt::one() {
        return Err(Error::InvalidParameter(format!(
            "matrix is not unimodular (det = {det})"
        )));
    }
    // adjugate / det, with det = ±1
    let big = m.to_big();
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: BigRows = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&cc| cc != i)
                        .map(|cc| big[r][cc].clone())
                        .collect()
                })
                .collect();
            let mut cof = bareiss(minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[i][j] = cof * &det;
        }
    }
    IntMatrix::from_big(&inv, n)
}
