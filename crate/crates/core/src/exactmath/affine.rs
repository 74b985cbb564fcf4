use super::{
    hermite_normal_form, smith_normal_form, unimodular_inverse, IntMatrix, LatticeVector,
};
use crate::error::{Error, Result};

/// A lattice-preserving coordinate system on the affine hull of a point set.
///
/// `forward` maps `Z^m ∩ aff(points)` bijectively onto `Z^d`; `inverse`
/// undoes it. When the points span `R^m` the map is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    ambient: usize,
    dim: usize,
    origin: LatticeVector,
    /// `dim × ambient`; rows form a basis of the saturated difference lattice.
    basis: IntMatrix,
    /// `ambient × dim`; right inverse of `basis`.
    coords: IntMatrix,
    /// `e·x = c` cuts out the affine hull.
    equations: Vec<(LatticeVector, i64)>,
}

/// Builds the [`AffineLattice`] of a nonempty point set.
pub fn full_dimensionalize(points: &[LatticeVector]) -> Result<AffineLattice> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let m = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.len(),
        });
    }
    let origin = points.iter().min().cloned().unwrap();
    let diffs = points
        .iter()
        .filter(|p| **p != origin)
        .map(|p| p.checked_sub(&origin))
        .collect::<Result<Vec<_>>>()?;

    if diffs.is_empty() {
        let equations = (0..m)
            .map(|i| (LatticeVector::unit(m, i), origin[i]))
            .collect();
        return Ok(AffineLattice {
            ambient: m,
            dim: 0,
            origin,
            basis: IntMatrix::zeros(0, m),
            coords: IntMatrix::zeros(m, 0),
            equations,
        });
    }

    let diff_matrix = IntMatrix::from_rows(&diffs)?;
    let smith = smith_normal_form(&diff_matrix)?;
    let d = smith.rank();
    if d == m {
        return Ok(AffineLattice::identity(m));
    }

    let v = &smith.v;
    let v_inv = unimodular_inverse(v)?;
    let raw_basis: Vec<Vec<i64>> = (0..d).map(|i| v_inv.row(i).to_vec()).collect();
    let (basis, w) = hermite_normal_form(&IntMatrix::from_rows(&raw_basis)?)?;
    let w_inv = unimodular_inverse(&w)?;
    let mut raw_coords = IntMatrix::zeros(m, d);
    for i in 0..m {
        for j in 0..d {
            raw_coords[(i, j)] = v[(i, j)];
        }
    }
    let coords = raw_coords.checked_mul(&w_inv)?;

    let normals: Vec<Vec<i64>> = (d..m).map(|j| v.column(j).into_inner()).collect();
    let (normals, _) = hermite_normal_form(&IntMatrix::from_rows(&normals)?)?;
    let equations = (0..normals.rows())
        .map(|i| {
            let e = normals.row_vector(i);
            let c = i64::try_from(e.dot(&origin)).map_err(|_| Error::Overflow)?;
            Ok((e, c))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AffineLattice {
        ambient: m,
        dim: d,
        origin,
        basis,
        coords,
        equations,
    })
}

impl AffineLattice {
    pub fn identity(m: usize) -> Self {
        AffineLattice {
            ambient: m,
            dim: m,
            origin: LatticeVector::zeros(m),
            basis: IntMatrix::identity(m),
            coords: IntMatrix::identity(m),
            equations: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn origin(&self) -> &LatticeVector {
        &self.origin
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn equations(&self) -> &[(LatticeVector, i64)] {
        &self.equations
    }

    pub fn is_identity(&self) -> bool {
        self.dim == self.ambient && self.origin.is_zero() && self.basis == IntMatrix::identity(self.dim)
    }

    /// Local coordinates of `x`, or `None` if `x` is not a lattice point of
    /// the affine hull.
    pub fn forward(&self, x: &[i64]) -> Option<LatticeVector> {
        self.forward_scaled(x, 1)
    }

    /// Local coordinates of `x` relative to the `k`-fold dilated hull, whose
    /// origin is `k · origin`.
    pub fn forward_scaled(&self, x: &[i64], k: i64) -> Option<LatticeVector> {
        if x.len() != self.ambient {
            return None;
        }
        if self.is_identity() {
            return Some(LatticeVector::new(x.to_vec()));
        }
        let shifted: Vec<i128> = x
            .iter()
            .zip(self.origin.iter())
            .map(|(&a, &o)| a as i128 - k as i128 * o as i128)
            .collect();
        let mut c = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let s: i128 = (0..self.ambient)
                .map(|i| shifted[i] * self.coords[(i, j)] as i128)
                .sum();
            c.push(i64::try_from(s).ok()?);
        }
        let c = LatticeVector::new(c);
        let back = self.inverse_scaled(&c, k).ok()?;
        (back.coords() == x).then_some(c)
    }

    pub fn inverse(&self, c: &[i64]) -> Result<LatticeVector> {
        self.inverse_scaled(c, 1)
    }

    pub fn inverse_scaled(&self, c: &[i64], k: i64) -> Result<LatticeVector> {
        if c.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.len(),
            });
        }
        let mut x = Vec::with_capacity(self.ambient);
        for j in 0..self.ambient {
            let s: i128 = k as i128 * self.origin[j] as i128
                + (0..self.dim)
                    .map(|i| c[i] as i128 * self.basis[(i, j)] as i128)
                    .sum::<i128>();
            x.push(i64::try_from(s).map_err(|_| Error::Overflow)?);
        }
        Ok(LatticeVector::new(x))
    }

    /// Pulls a local inequality `a·c ≤ b` back to an ambient one `n·x ≤ o`
    /// that agrees with it on the affine hull.
    pub fn pull_back(&self, a: &[i64], b: i64) -> Result<(LatticeVector, i64)> {
        let n: Vec<i64> = (0..self.ambient)
            .map(|i| {
                let s: i128 = (0..self.dim)
                    .map(|j| self.coords[(i, j)] as i128 * a[j] as i128)
                    .sum();
                i64::try_from(s).map_err(|_| Error::Overflow)
            })
            .collect::<Result<_>>()?;
        let n = LatticeVector::new(n);
        let o = b as i128 + n.dot(&self.origin);
        Ok((n, i64::try_from(o).map_err(|_| Error::Overflow)?))
    }
}
