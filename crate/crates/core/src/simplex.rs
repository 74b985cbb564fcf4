//! Lattice simplices: barycentric coordinates, emptiness, unimodularity and
//! the fractional-part reduction of interior cone points.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::GradedPoint;
use crate::error::{Error, Result};
use crate::exactmath::{
    ceil, determinant, smith_normal_form, solve_rational, IntMatrix, LatticeVector, Rational,
};
use crate::polytope::{Polytope, Position};
use crate::semigroup::ReductionWitness;

/// Coefficients of a cone point in the lifted vertices `(v_i, 1)` of a
/// simplex, one per vertex in the simplex's (lexicographic) vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricCoords {
    pub coeffs: Vec<Rational>,
}

impl BarycentricCoords {
    pub fn all_positive(&self) -> bool {
        self.coeffs.iter().all(|q| q.is_positive())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|q| !q.is_negative())
    }
}

fn require_simplex(s: &Polytope) -> Result<()> {
    if s.is_simplex() {
        Ok(())
    } else {
        Err(Error::NotSimplex {
            vertices: s.vertices().len(),
            dim: s.dim(),
        })
    }
}

fn lifted_vertex_rows(s: &Polytope) -> Result<IntMatrix> {
    let rows: Vec<LatticeVector> = s.vertices().iter().map(|v| v.lifted(1)).collect();
    IntMatrix::from_rows(&rows)
}

/// Solves `y = Σ q_i (v_i, 1)` exactly.
pub fn barycentric(s: &Polytope, y: &LatticeVector) -> Result<BarycentricCoords> {
    require_simplex(s)?;
    if y.len() != s.ambient_dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim() + 1,
            found: y.len(),
        });
    }
    let columns = lifted_vertex_rows(s)?.transpose();
    match solve_rational(&columns, y)? {
        Some(coeffs) => Ok(BarycentricCoords { coeffs }),
        None => Err(Error::NotInSpan(y.clone())),
    }
}

/// Splits an interior `y` as `z + w`: with `q_i` its barycentric coordinates,
/// `w = Σ ⌈q_i − 1⌉ (v_i, 1)` and `z` has coordinates `q_i − ⌈q_i − 1⌉ ∈ (0, 1]`,
/// hence `deg z ≤ d + 1`.
pub fn lemma_a_decomposition(s: &Polytope, y: &LatticeVector) -> Result<ReductionWitness> {
    let q = barycentric(s, y)?;
    if !q.all_positive() {
        return Err(Error::NotInterior(y.clone()));
    }
    let mut w_parts = Vec::new();
    let mut z = y.clone();
    for (qi, v) in q.coeffs.iter().zip(s.vertices()) {
        let shift = ceil(&(qi - Rational::from_integer(1.into())));
        let times = shift.to_usize().ok_or(Error::Overflow)?;
        let lifted = v.lifted(1);
        for _ in 0..times {
            z = z.checked_sub(&lifted)?;
            w_parts.push(GradedPoint::new(lifted.clone(), Position::Boundary));
        }
    }
    w_parts.sort();
    Ok(ReductionWitness {
        z: GradedPoint::new(z, Position::Interior),
        w_parts,
    })
}

/// Whether the only lattice points of the simplex are its vertices.
pub fn is_empty_simplex(s: &Polytope) -> Result<bool> {
    require_simplex(s)?;
    Ok(s.lattice_points(1)?.len() == s.vertices().len())
}

/// `P` is a simplex and is empty. Non-simplices answer `false` here.
pub fn is_empty_simplex_polytope(p: &Polytope) -> Result<bool> {
    if !p.is_simplex() {
        return Ok(false);
    }
    is_empty_simplex(p)
}

/// The lifted vertices generate a direct summand of `Z^{m+1}`.
pub fn is_unimodular(s: &Polytope) -> Result<bool> {
    require_simplex(s)?;
    let snf = smith_normal_form(&lifted_vertex_rows(s)?)?;
    let factors = snf.invariant_factors();
    Ok(factors.len() == s.vertices().len() && factors.iter().all(|&f| f == 1))
}

/// `d!` times the volume: `|det|` of the edge matrix in hull coordinates.
pub fn normalized_volume(s: &Polytope) -> Result<u128> {
    require_simplex(s)?;
    let local = s.local_vertices();
    let d = s.dim();
    if d == 0 {
        return Ok(1);
    }
    let edges: Vec<LatticeVector> = local[1..]
        .iter()
        .map(|v| v.checked_sub(&local[0]))
        .collect::<Result<_>>()?;
    let det: BigInt = determinant(&IntMatrix::from_rows(&edges)?)?;
    debug_assert!(!det.is_zero());
    det.abs().to_u128().ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::family;
    use num_traits::One;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::new(v.to_vec())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn barycentric_examples() {
        let t = family::unit(2).unwrap();
        let q = barycentric(&t, &lv(&[1, 1, 3])).unwrap();
        assert_eq!(q.coeffs, vec![r(1, 1); 3]);

        // vertex order (0,0), (0,1), (2,0)
        let e = family::example1(2).unwrap();
        let q = barycentric(&e, &lv(&[3, 1, 3])).unwrap();
        assert_eq!(q.coeffs, vec![r(1, 2), r(1, 1), r(3, 2)]);

        let q = barycentric(&e, &lv(&[2, 0, 1])).unwrap();
        assert_eq!(q.coeffs, vec![r(0, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn barycentric_errors() {
        let sq = Polytope::from_vertices(2, &[lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]).unwrap();
        assert!(matches!(barycentric(&sq, &lv(&[1, 1, 2])), Err(Error::NotSimplex { .. })));
        let seg = Polytope::from_vertices(2, &[lv(&[0, 0]), lv(&[1, 0])]).unwrap();
        assert_eq!(barycentric(&seg, &lv(&[0, 1, 1])), Err(Error::NotInSpan(lv(&[0, 1, 1]))));
    }

    #[test]
    fn decomposition_examples() {
        let e = family::example1(2).unwrap();
        let w = lemma_a_decomposition(&e, &lv(&[3, 1, 3])).unwrap();
        assert_eq!(w.z.point, lv(&[1, 1, 2]));
        assert_eq!(w.w_parts.iter().map(|g| g.point.clone()).collect::<Vec<_>>(), vec![lv(&[2, 0, 1])]);

        let w = lemma_a_decomposition(&e, &lv(&[1, 1, 2])).unwrap();
        assert_eq!(w.z.point, lv(&[1, 1, 2]));
        assert!(w.w_parts.is_empty());

        let t = family::unit(2).unwrap();
        let w = lemma_a_decomposition(&t, &lv(&[2, 2, 6])).unwrap();
        assert_eq!(w.z.point, lv(&[1, 1, 3]));
        assert_eq!(w.w_parts.len(), 3);
        assert_eq!(w.total().unwrap(), lv(&[2, 2, 6]));
    }

    #[test]
    fn ceiling_on_negative_and_integral_values() {
        assert_eq!(ceil(&r(-1, 2)), BigInt::zero());
        assert_eq!(ceil(&r(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&r(2, 1)), BigInt::from(2));
        assert_eq!(ceil(&r(1, 3)), BigInt::one());
    }

    #[test]
    fn emptiness_and_unimodularity() {
        let t = family::unit(2).unwrap();
        assert!(is_empty_simplex(&t).unwrap());
        assert!(is_unimodular(&t).unwrap());
        let e = family::example1(3).unwrap();
        assert!(!is_empty_simplex(&e).unwrap());
        assert!(!is_unimodular(&e).unwrap());
        let reeve = family::reeve(2).unwrap();
        assert!(is_empty_simplex(&reeve).unwrap());
        assert!(!is_unimodular(&reeve).unwrap());
        let sq = Polytope::from_vertices(2, &[lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]).unwrap();
        assert!(matches!(is_empty_simplex(&sq), Err(Error::NotSimplex { .. })));
        assert!(!is_empty_simplex_polytope(&sq).unwrap());
        for d in 1..=5 {
            let u = family::unit(d).unwrap();
            assert!(is_unimodular(&u).unwrap());
            assert_eq!(normalized_volume(&u).unwrap(), 1);
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&family::example1(2).unwrap()).unwrap(), 2);
        for q in 1..=5 {
            let p = family::reeve(q).unwrap();
            assert_eq!(normalized_volume(&p).unwrap(), q as u128);
            assert_eq!(p.normalized_volume().unwrap(), q as u128);
        }
        // a unimodular triangle off the coordinate planes
        let t = Polytope::from_vertices(3, &[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[0, 0, 1])]).unwrap();
        assert_eq!(normalized_volume(&t).unwrap(), 1);
        assert!(is_unimodular(&t).unwrap());
    }
}
