//! Lattice polytopes given by vertices or by inequalities.
//!
//! All geometry happens in the coordinates of the affine hull (see
//! [`AffineLattice`]), so polytopes of dimension `d < m` behave exactly like
//! full-dimensional ones. Facets are pulled back to `Z^m` for reporting.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{full_dimensionalize, small, AffineLattice, LatticeVector};

/// Position of a point relative to a polytope or cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Outside,
    Boundary,
    Interior,
}

/// The inequality `normal · x ≤ offset`, with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FacetForm {
    pub normal: LatticeVector,
    pub offset: i64,
}

impl FacetForm {
    /// `offset·k − normal·x`, the slack of `x` in the `k`-th dilation.
    pub fn slack(&self, x: &[i64], k: i64) -> i128 {
        self.offset as i128 * k as i128 - self.normal.dot(x)
    }
}

#[derive(Debug, Clone)]
struct LocalFacet {
    normal: Vec<i64>,
    offset: i64,
}

impl LocalFacet {
    fn slack(&self, c: &[i64], k: i64) -> i128 {
        self.offset as i128 * k as i128 - crate::exactmath::dot(&self.normal, c)
    }
}

#[derive(Clone)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<LatticeVector>,
    name: Option<String>,
    frame: AffineLattice,
    local_vertices: Vec<LatticeVector>,
    local_facets: Vec<LocalFacet>,
    facets: Vec<FacetForm>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("name", &self.name)
            .field("ambient_dim", &self.ambient_dim)
            .field("dim", &self.dim())
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl Polytope {
    /// Convex hull of a point set. Non-extreme points are discarded.
    pub fn from_vertices(m: usize, points: &[LatticeVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = points.iter().find(|p| p.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.len(),
            });
        }
        let points: Vec<LatticeVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let frame = full_dimensionalize(&points)?;
        let d = frame.dim();
        let local: Vec<LatticeVector> = points
            .iter()
            .map(|p| frame.forward(p).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let local_facets = facets_of(&local, d)?;

        // a point is a vertex iff the normals of its tight facets have rank d
        let mut vertices = Vec::new();
        let mut local_vertices = Vec::new();
        for (p, c) in points.iter().zip(&local) {
            let tight: Vec<Vec<i128>> = local_facets
                .iter()
                .filter(|f| f.slack(c, 1) == 0)
                .map(|f| f.normal.iter().map(|&x| x as i128).collect())
                .collect();
            if small::rank(&tight)? == d {
                vertices.push(p.clone());
                local_vertices.push(c.clone());
            }
        }

        let mut paired = local_facets
            .into_iter()
            .map(|f| {
                let (normal, offset) = frame.pull_back(&f.normal, f.offset)?;
                Ok((FacetForm { normal, offset }, f))
            })
            .collect::<Result<Vec<_>>>()?;
        paired.sort_by(|a, b| a.0.cmp(&b.0));
        let (facets, local_facets) = paired.into_iter().unzip();

        Ok(Polytope {
            ambient_dim: m,
            vertices,
            name: None,
            frame,
            local_vertices,
            local_facets,
            facets,
        })
    }

    /// The polytope `{x : normal·x ≤ offset for every row}`. Fails if the
    /// region is unbounded, empty, or has a non-integral vertex.
    pub fn from_inequalities(m: usize, rows: &[FacetForm]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("ambient dimension must be positive".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.normal.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: r.normal.len(),
            });
        }
        let system: Vec<(Vec<i64>, i64)> = rows
            .iter()
            .map(|r| (r.normal.coords().to_vec(), r.offset))
            .collect();

        // recession cone, capped by the unit box
        let mut recession: Vec<(Vec<i64>, i64)> =
            system.iter().map(|(n, _)| (n.clone(), 0)).collect();
        recession.extend(box_rows(m, 1));
        let unbounded = rational_vertices(m, &recession)?
            .iter()
            .any(|(num, _)| num.iter().any(|&x| x != 0));

        if unbounded {
            let bound = feasibility_box(&system)?;
            let mut capped = system.clone();
            capped.extend(box_rows(m, bound));
            return Err(if rational_vertices(m, &capped)?.is_empty() {
                Error::Infeasible
            } else {
                Error::Unbounded
            });
        }

        let mut points = Vec::new();
        for (num, den) in rational_vertices(m, &system)? {
            if num.iter().any(|x| x % den != 0) {
                let shown = num
                    .iter()
                    .map(|x| if den == 1 { x.to_string() } else { format!("{x}/{den}") })
                    .join(",");
                return Err(Error::NonLatticeVertex(format!("({shown})")));
            }
            let v = num
                .iter()
                .map(|x| i64::try_from(x / den).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            points.push(LatticeVector::new(v));
        }
        if points.is_empty() {
            return Err(Error::Infeasible);
        }
        Polytope::from_vertices(m, &points)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn frame(&self) -> &AffineLattice {
        &self.frame
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    /// Facet inequalities in lexicographic order.
    pub fn support_hyperplanes(&self) -> &[FacetForm] {
        &self.facets
    }

    /// Equations `e·x = c` of the affine hull (empty when full-dimensional).
    pub fn hull_equations(&self) -> &[(LatticeVector, i64)] {
        self.frame.equations()
    }

    /// Lattice points of `kP`, sorted lexicographically.
    pub fn lattice_points(&self, k: i64) -> Result<Vec<LatticeVector>> {
        self.collect_points(k, false)
    }

    /// Lattice points in the relative interior of `kP`, sorted.
    pub fn interior_lattice_points(&self, k: i64) -> Result<Vec<LatticeVector>> {
        self.collect_points(k, true)
    }

    /// Lattice points of `kP` with their positions, sorted.
    pub fn classified_lattice_points(&self, k: i64) -> Result<Vec<(LatticeVector, Position)>> {
        let mut out = Vec::new();
        self.for_each_local_point(k, |c, interior| {
            let x = self.frame.inverse_scaled(c, k)?;
            let pos = if interior { Position::Interior } else { Position::Boundary };
            out.push((x, pos));
            Ok(())
        })?;
        if !self.frame.is_identity() {
            out.sort();
        }
        Ok(out)
    }

    fn collect_points(&self, k: i64, interior_only: bool) -> Result<Vec<LatticeVector>> {
        let mut out = Vec::new();
        self.for_each_local_point(k, |c, interior| {
            if interior || !interior_only {
                out.push(self.frame.inverse_scaled(c, k)?);
            }
            Ok(())
        })?;
        if !self.frame.is_identity() {
            out.sort();
        }
        Ok(out)
    }

    /// Scans the integer bounding box of `kP` in local coordinates.
    fn for_each_local_point(
        &self,
        k: i64,
        mut f: impl FnMut(&[i64], bool) -> Result<()>,
    ) -> Result<()> {
        if k < 1 {
            return Err(Error::InvalidParameter(format!("dilation factor {k} must be positive")));
        }
        let d = self.dim();
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &self.local_vertices {
            for i in 0..d {
                let x = v[i].checked_mul(k).ok_or(Error::Overflow)?;
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        let mut c = lo.clone();
        loop {
            let mut inside = true;
            let mut strict = true;
            for facet in &self.local_facets {
                let s = facet.slack(&c, k);
                if s < 0 {
                    inside = false;
                    break;
                }
                if s == 0 {
                    strict = false;
                }
            }
            if inside {
                f(&c, strict)?;
            }
            // odometer, last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if c[i] < hi[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = lo[i];
            }
        }
    }

    /// Position of `x` relative to `P`.
    pub fn classify_point(&self, x: &[i64]) -> Position {
        self.classify_scaled(x, 1)
    }

    /// Position of `x` relative to `kP` for `k ≥ 1`.
    pub fn classify_scaled(&self, x: &[i64], k: i64) -> Position {
        let Some(c) = self.frame.forward_scaled(x, k) else {
            return Position::Outside;
        };
        self.classify_local(&c, k)
    }

    pub(crate) fn classify_local(&self, c: &[i64], k: i64) -> Position {
        let mut strict = true;
        for f in &self.local_facets {
            let s = f.slack(c, k);
            if s < 0 {
                return Position::Outside;
            }
            if s == 0 {
                strict = false;
            }
        }
        if strict {
            Position::Interior
        } else {
            Position::Boundary
        }
    }

    /// Lattice normalized volume (`d!` times the Euclidean volume measured in
    /// the lattice of the affine hull), by the pyramid decomposition over the
    /// facets not containing the first vertex.
    pub fn normalized_volume(&self) -> Result<u128> {
        let d = self.dim();
        if d == 0 {
            return Ok(1);
        }
        let apex = &self.local_vertices[0];
        let mut total: u128 = 0;
        for f in &self.local_facets {
            let height = f.slack(apex, 1);
            if height == 0 {
                continue;
            }
            let on_facet: Vec<LatticeVector> = self
                .local_vertices
                .iter()
                .filter(|v| f.slack(v, 1) == 0)
                .cloned()
                .collect();
            let base = Polytope::from_vertices(d, &on_facet)?.normalized_volume()?;
            total = height
                .unsigned_abs()
                .checked_mul(base)
                .and_then(|x| total.checked_add(x))
                .ok_or(Error::Overflow)?;
        }
        Ok(total)
    }

    /// Facets of `P` containing `x` (indices into
    /// [`support_hyperplanes`](Self::support_hyperplanes)).
    pub fn facets_containing(&self, x: &[i64]) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.slack(x, 1) == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn local_vertices(&self) -> &[LatticeVector] {
        &self.local_vertices
    }
}

/// Facets of a full-dimensional point set in `Z^d`: every hyperplane through
/// `d` affinely independent points with all points weakly on one side.
fn facets_of(points: &[LatticeVector], d: usize) -> Result<Vec<LocalFacet>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut found = BTreeSet::new();
    for subset in points.iter().combinations(d) {
        let pts: Vec<&[i64]> = subset.iter().map(|p| p.coords()).collect();
        let Some((a, b)) = small::hyperplane(&pts)? else {
            continue;
        };
        let (mut below, mut above) = (false, false);
        for p in points {
            let v = crate::exactmath::dot(&a, p) - b as i128;
            below |= v < 0;
            above |= v > 0;
        }
        match (below, above) {
            (true, false) => {
                found.insert((a, b));
            }
            (false, true) => {
                found.insert((a.iter().map(|x| -x).collect(), -b));
            }
            _ => {}
        }
    }
    Ok(found
        .into_iter()
        .map(|(normal, offset)| LocalFacet { normal, offset })
        .collect())
}

fn box_rows(m: usize, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let mut rows = Vec::with_capacity(2 * m);
    for i in 0..m {
        let e = LatticeVector::unit(m, i).into_inner();
        rows.push((e.iter().map(|x| -x).collect(), bound));
        rows.push((e, bound));
    }
    rows
}

/// Any nonempty polyhedron `{Ax ≤ b}` contains a point whose coordinates are
/// ratios of minors of `[A|b]`; this bounds them.
fn feasibility_box(system: &[(Vec<i64>, i64)]) -> Result<i64> {
    let m = system.first().map_or(0, |r| r.0.len());
    let widest = system
        .iter()
        .map(|(n, b)| n.iter().chain(std::iter::once(b)).map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(1)
        .max(2);
    let mut r: i64 = 1;
    for _ in 0..m {
        r = r
            .checked_mul(i64::try_from(widest).map_err(|_| Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(r)
}

/// Vertices of `{x ∈ R^m : n·x ≤ b}` as `(numerators, denominator)` with a
/// positive denominator, deduplicated and sorted.
fn rational_vertices(m: usize, system: &[(Vec<i64>, i64)]) -> Result<Vec<(Vec<i128>, i128)>> {
    let mut out = BTreeSet::new();
    for basis in (0..system.len()).combinations(m) {
        let a: Vec<Vec<i128>> = basis
            .iter()
            .map(|&i| system[i].0.iter().map(|&x| x as i128).collect())
            .collect();
        let det = small::det(&a)?;
        if det == 0 {
            continue;
        }
        // Cramer's rule
        let mut num = Vec::with_capacity(m);
        for j in 0..m {
            let mut aj = a.clone();
            for (row, &i) in aj.iter_mut().zip(&basis) {
                row[j] = system[i].1 as i128;
            }
            num.push(small::det(&aj)?);
        }
        let (mut num, mut den) = (num, det);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num
            .iter()
            .fold(den, |acc, &x| num_integer::Integer::gcd(&acc, &x));
        let num: Vec<i128> = num.into_iter().map(|x| x / g).collect();
        let den = den / g;
        let feasible = system.iter().all(|(n, b)| {
            let lhs: i128 = n.iter().zip(&num).map(|(&x, &y)| x as i128 * y).sum();
            lhs <= *b as i128 * den
        });
        if feasible {
            out.insert((num, den));
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::new(v.to_vec())
    }

    fn pts(v: &[&[i64]]) -> Vec<LatticeVector> {
        v.iter().map(|p| lv(p)).collect()
    }

    fn ineq(normal: &[i64], offset: i64) -> FacetForm {
        FacetForm { normal: lv(normal), offset }
    }

    fn unit_triangle() -> Polytope {
        Polytope::from_vertices(2, &pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap()
    }

    fn example2_d2() -> Polytope {
        Polytope::from_inequalities(
            2,
            &[
                ineq(&[-1, 0], 0),
                ineq(&[1, 0], 2),
                ineq(&[0, -1], 0),
                ineq(&[0, 1], 2),
                ineq(&[1, 1], 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn drops_non_extreme_points() {
        let p = Polytope::from_vertices(2, &pts(&[&[0, 0], &[2, 0], &[0, 1], &[1, 0]])).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[0, 1], &[2, 0]])[..]);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.support_hyperplanes().len(), 3);
    }

    #[test]
    fn single_point_has_no_facets() {
        let p = Polytope::from_vertices(3, &pts(&[&[1, 2, 3]])).unwrap();
        assert_eq!(p.dim(), 0);
        assert!(p.support_hyperplanes().is_empty());
        assert_eq!(p.interior_lattice_points(1).unwrap(), pts(&[&[1, 2, 3]]));
        assert_eq!(p.lattice_points(3).unwrap(), pts(&[&[3, 6, 9]]));
        assert_eq!(p.classify_point(&[1, 2, 3]), Position::Interior);
    }

    #[test]
    fn errors_on_bad_input() {
        assert_eq!(Polytope::from_vertices(2, &[]), Err(Error::EmptyInput));
        assert!(matches!(
            Polytope::from_vertices(2, &pts(&[&[0, 0], &[1]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    /// Brute force over pairs of bounding lines, keeping feasible integral
    /// intersections that are not midpoints of two others.
    #[test]
    fn inequality_vertices_match_line_intersections() {
        let lines: [([i64; 2], i64); 5] =
            [([-1, 0], 0), ([1, 0], 2), ([0, -1], 0), ([0, 1], 2), ([1, 1], 3)];
        let mut candidates = BTreeSet::new();
        for i in 0..5 {
            for j in i + 1..5 {
                let (a, b) = (lines[i], lines[j]);
                let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
                if det == 0 {
                    continue;
                }
                let x = (a.1 * b.0[1] - a.0[1] * b.1) as f64 / det as f64;
                let y = (a.0[0] * b.1 - a.1 * b.0[0]) as f64 / det as f64;
                if lines.iter().all(|(n, o)| n[0] as f64 * x + n[1] as f64 * y <= *o as f64 + 1e-9) {
                    candidates.insert((x as i64, y as i64));
                }
            }
        }
        let expected: Vec<LatticeVector> = candidates.into_iter().map(|(x, y)| lv(&[x, y])).collect();
        assert_eq!(expected, pts(&[&[0, 0], &[0, 2], &[1, 2], &[2, 0], &[2, 1]]));
        assert_eq!(example2_d2().vertices(), &expected[..]);
    }

    #[test]
    fn cube_from_inequalities() {
        for m in 1..=4 {
            let mut rows = Vec::new();
            for i in 0..m {
                let e = LatticeVector::unit(m, i);
                rows.push(FacetForm { normal: e.checked_scale(-1).unwrap(), offset: 0 });
                rows.push(FacetForm { normal: e, offset: 1 });
            }
            let p = Polytope::from_inequalities(m, &rows).unwrap();
            assert_eq!(p.vertices().len(), 1 << m);
            assert_eq!(p.support_hyperplanes().len(), 2 * m);
        }
    }

    #[test]
    fn inequality_errors() {
        assert_eq!(
            Polytope::from_inequalities(1, &[ineq(&[-1], 0)]),
            Err(Error::Unbounded)
        );
        assert_eq!(
            Polytope::from_inequalities(1, &[ineq(&[-1], -2), ineq(&[1], 1)]),
            Err(Error::Infeasible)
        );
        assert!(matches!(
            Polytope::from_inequalities(1, &[ineq(&[-2], 0), ineq(&[2], 1)]),
            Err(Error::NonLatticeVertex(_))
        ));
        // a strip: unbounded, no vertices
        assert_eq!(
            Polytope::from_inequalities(2, &[ineq(&[0, 1], 1), ineq(&[0, -1], 0)]),
            Err(Error::Unbounded)
        );
        // infeasible with unbounded recession cone
        assert_eq!(
            Polytope::from_inequalities(2, &[ineq(&[0, 1], -1), ineq(&[0, -1], 0)]),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn facets_of_coordinate_simplex_and_segment() {
        let t = unit_triangle();
        let f: Vec<(Vec<i64>, i64)> = t
            .support_hyperplanes()
            .iter()
            .map(|f| (f.normal.coords().to_vec(), f.offset))
            .collect();
        assert_eq!(f, vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)]);

        let s = Polytope::from_vertices(1, &pts(&[&[0], &[2]])).unwrap();
        let f: Vec<(Vec<i64>, i64)> = s
            .support_hyperplanes()
            .iter()
            .map(|f| (f.normal.coords().to_vec(), f.offset))
            .collect();
        assert_eq!(f, vec![(vec![-1], 0), (vec![1], 2)]);
    }

    #[test]
    fn example2_facets_are_the_defining_system() {
        let p = example2_d2();
        let got: BTreeSet<(Vec<i64>, i64)> = p
            .support_hyperplanes()
            .iter()
            .map(|f| (f.normal.coords().to_vec(), f.offset))
            .collect();
        let want: BTreeSet<(Vec<i64>, i64)> = [
            (vec![-1, 0], 0),
            (vec![1, 0], 2),
            (vec![0, -1], 0),
            (vec![0, 1], 2),
            (vec![1, 1], 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn lattice_point_counts() {
        let s = Polytope::from_vertices(1, &pts(&[&[0], &[2]])).unwrap();
        assert_eq!(s.lattice_points(2).unwrap(), pts(&[&[0], &[1], &[2], &[3], &[4]]));

        let p = example2_d2();
        let got = p.lattice_points(1).unwrap();
        let mut want = Vec::new();
        for x in 0..=2 {
            for y in 0..=2 {
                if (x, y) != (2, 2) {
                    want.push(lv(&[x, y]));
                }
            }
        }
        assert_eq!(got, want);
        assert_eq!(p.interior_lattice_points(1).unwrap(), pts(&[&[1, 1]]));

        let reeve =
            Polytope::from_vertices(3, &pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])).unwrap();
        assert_eq!(reeve.lattice_points(1).unwrap(), reeve.vertices());
    }

    #[test]
    fn interior_points_of_unit_shapes() {
        let t = unit_triangle();
        assert!(t.interior_lattice_points(1).unwrap().is_empty());
        assert!(t.interior_lattice_points(2).unwrap().is_empty());
        assert_eq!(t.interior_lattice_points(3).unwrap(), pts(&[&[1, 1]]));
        let sq = Polytope::from_vertices(2, &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(sq.interior_lattice_points(1).unwrap().is_empty());
        assert_eq!(sq.classify_point(&[1, 1]), Position::Boundary);
        assert_eq!(sq.classify_point(&[5, 5]), Position::Outside);
    }

    #[test]
    fn lower_dimensional_polytope_in_space() {
        // a triangle in the plane x + y + z = 2
        let p = Polytope::from_vertices(3, &pts(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.support_hyperplanes().len(), 3);
        assert_eq!(p.lattice_points(1).unwrap().len(), 6);
        assert!(p.interior_lattice_points(1).unwrap().is_empty());
        assert_eq!(p.interior_lattice_points(2).unwrap(), pts(&[&[1, 1, 2], &[1, 2, 1], &[2, 1, 1]]));
        assert_eq!(p.classify_point(&[1, 1, 0]), Position::Boundary);
        assert_eq!(p.classify_point(&[1, 1, 1]), Position::Outside);
        assert_eq!(p.normalized_volume().unwrap(), 4);
    }

    #[test]
    fn normalized_volumes() {
        assert_eq!(unit_triangle().normalized_volume().unwrap(), 1);
        assert_eq!(example2_d2().normalized_volume().unwrap(), 7);
        let seg = Polytope::from_vertices(2, &pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!(seg.normalized_volume().unwrap(), 2);
        let cube = Polytope::from_vertices(
            3,
            &pts(&[
                &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
                &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
            ]),
        )
        .unwrap();
        assert_eq!(cube.normalized_volume().unwrap(), 6);
    }

    #[test]
    fn round_trip_through_inequalities() {
        let p = example2_d2();
        let q = Polytope::from_inequalities(2, p.support_hyperplanes()).unwrap();
        assert_eq!(p, q);
    }
}
