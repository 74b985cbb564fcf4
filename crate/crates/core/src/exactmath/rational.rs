use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{IntMatrix, LatticeVector};
use crate::error::{Error, Result};

/// Exact rational with positive denominator, always reduced.
pub type Rational = num_rational::BigRational;

/// Smallest integer `>= q`.
pub fn ceil(q: &Rational) -> BigInt {
    // the denominator is positive, so ceiling division is exact here
    Integer::div_ceil(q.numer(), q.denom())
}

/// Solves `A·x = b` exactly. Returns `None` when the system is inconsistent.
/// Free variables, if any, are set to zero.
pub fn solve_rational(a: &IntMatrix, b: &LatticeVector) -> Result<Option<Vec<Rational>>> {
    let (rows, cols) = a.shape();
    if b.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: b.len(),
        });
    }
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(std::iter::once(&b[i]))
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| !m[i][cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(Some(x))
}
