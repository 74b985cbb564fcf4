//! Fixed-width kernels for the hot enumeration paths. Every operation is
//! checked; overflow surfaces as [`Error::Overflow`].

use crate::error::{Error, Result};

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// Bareiss determinant in checked `i128`.
pub(crate) fn det(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Rank of an integer matrix by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    let mut a = rows.to_vec();
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let (f, g) = (a[i][c], a[r][c]);
            let gcd = num_integer::Integer::gcd(&f, &g);
            let (f, g) = (f / gcd, g / gcd);
            for j in c..cols {
                a[i][j] = sub(mul(a[i][j], g)?, mul(a[r][j], f)?)?;
            }
            let content = a[i][c..]
                .iter()
                .fold(0i128, |acc, &x| num_integer::Integer::gcd(&acc, &x));
            if content > 1 {
                for x in a[i][c..].iter_mut() {
                    *x /= content;
                }
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Affine rank (dimension of the affine hull) of a point set.
pub(crate) fn affine_rank(points: &[&[i64]]) -> Result<usize> {
    let Some((first, rest)) = points.split_first() else {
        return Ok(0);
    };
    let diffs: Vec<Vec<i128>> = rest
        .iter()
        .map(|p| p.iter().zip(*first).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    rank(&diffs)
}

/// Hyperplane through `dim` points of `Z^dim`: a primitive normal `a` and
/// offset `b` with `a·p = b` for every input point, or `None` if the points
/// are affinely dependent.
pub(crate) fn hyperplane(points: &[&[i64]]) -> Result<Option<(Vec<i64>, i64)>> {
    let dim = points.len();
    let base = points[0];
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        let minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let d = det(&minor)?;
        normal.push(if j % 2 == 0 { d } else { -d });
    }
    let g = normal
        .iter()
        .fold(0i128, |acc, &x| num_integer::Integer::gcd(&acc, &x));
    if g == 0 {
        return Ok(None);
    }
    let normal: Vec<i64> = normal
        .into_iter()
        .map(|x| i64::try_from(x / g).map_err(|_| Error::Overflow))
        .collect::<Result<_>>()?;
    let offset = i64::try_from(super::dot(&normal, base)).map_err(|_| Error::Overflow)?;
    Ok(Some((normal, offset)))
}

/// Adjugate and determinant of a square matrix, normalized so that the
/// returned determinant is positive: `m · adj = det · I`.
pub(crate) fn adjugate(m: &[Vec<i128>]) -> Result<(Vec<Vec<i128>>, i128)> {
    let n = m.len();
    let d = det(m)?;
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let c = det(&minor)?;
            adj[i][j] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    if d < 0 {
        for row in adj.iter_mut() {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        return Ok((adj, -d));
    }
    Ok((adj, d))
}
