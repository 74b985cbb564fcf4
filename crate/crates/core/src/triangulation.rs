//! Lattice triangulations into empty simplices.
//!
//! Construction is placing (vertices in lexicographic order) followed by
//! stellar subdivision at every remaining lattice point, again in
//! lexicographic order. The interior-respecting variant keeps the boundary
//! triangulation, cones it from one interior lattice point and then
//! subdivides at the other interior points, so that every simplex with all
//! vertices on `∂P` lies in `∂P`.
//!
//! Work happens in the hull coordinates of the point set; cells are index
//! lists into `points`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{full_dimensionalize, small, AffineLattice, LatticeVector};
use crate::polytope::{Polytope, Position};
use crate::simplex;

#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Vec<LatticeVector>,
    cells: Vec<Vec<usize>>,
    frame: AffineLattice,
    local: Vec<LatticeVector>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.cells == other.cells
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            points: &'a [LatticeVector],
            cells: &'a [Vec<usize>],
        }
        Wire {
            points: &self.points,
            cells: &self.cells,
        }
        .serialize(s)
    }
}

/// Outcome of [`Triangulation::verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionVerdict {
    pub holds: bool,
    pub kmax: i64,
    pub points_checked: usize,
    pub failure: Option<DecompositionFailure>,
}

/// A cone point of degree `k` lying in the interior of `count` cones over
/// faces of Σ′, where exactly one (interior points) or none (boundary points)
/// was expected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionFailure {
    pub k: i64,
    pub point: LatticeVector,
    pub position: Position,
    pub count: usize,
}

/// Barycentric machinery for one cell: `λ_i · det = Σ_j p_j adj[j][i]` for
/// the lifted point `p`.
struct CellFrame {
    adj: Vec<Vec<i128>>,
    det: i128,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl CellFrame {
    fn new(pts: &[&LatticeVector]) -> Result<Self> {
        let m: Vec<Vec<i128>> = pts
            .iter()
            .map(|p| p.iter().map(|&x| x as i128).chain(std::iter::once(1)).collect())
            .collect();
        let (adj, det) = small::adjugate(&m)?;
        let d = pts[0].len();
        let lo = (0..d).map(|i| pts.iter().map(|p| p[i]).min().unwrap()).collect();
        let hi = (0..d).map(|i| pts.iter().map(|p| p[i]).max().unwrap()).collect();
        Ok(CellFrame { adj, det, lo, hi })
    }

    /// Barycentric numerators of the lifted point `(c, k)`, or `None` if the
    /// point is outside `k` times the cell.
    fn contains(&self, c: &[i64], k: i64) -> Option<Vec<i128>> {
        let k128 = k as i128;
        for i in 0..c.len() {
            if (c[i] as i128) < self.lo[i] as i128 * k128 || (c[i] as i128) > self.hi[i] as i128 * k128 {
                return None;
            }
        }
        let n = self.adj.len();
        let mut lambda = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = self.adj[c.len()][i] * k128;
            for (j, &x) in c.iter().enumerate() {
                s += self.adj[j][i] * x as i128;
            }
            if s < 0 {
                return None;
            }
            lambda.push(s);
        }
        Some(lambda)
    }
}

/// Mutable working state: a point pool in hull coordinates and cells.
struct Builder {
    local: Vec<LatticeVector>,
    cells: Vec<Vec<usize>>,
}

impl Builder {
    fn add_point(&mut self, c: LatticeVector) -> usize {
        self.local.push(c);
        self.local.len() - 1
    }

    fn cell_points(&self, cell: &[usize]) -> Vec<&LatticeVector> {
        cell.iter().map(|&i| &self.local[i]).collect()
    }

    /// Placing triangulation of the given pool indices, in order.
    fn place(&mut self, order: &[usize], d: usize) -> Result<()> {
        let mut chosen = vec![order[0]];
        for &i in &order[1..] {
            if chosen.len() == d + 1 {
                break;
            }
            let mut trial: Vec<&[i64]> = chosen.iter().map(|&j| self.local[j].coords()).collect();
            trial.push(self.local[i].coords());
            if small::affine_rank(&trial)? == chosen.len() {
                chosen.push(i);
            }
        }
        if chosen.len() != d + 1 {
            return Err(Error::InvalidParameter("points do not span the hull".into()));
        }
        self.cells.push(chosen.clone());
        for &p in order {
            if chosen.contains(&p) {
                continue;
            }
            let mut new_cells = Vec::new();
            for (facet, opposite) in self.boundary_facets() {
                let pts: Vec<&[i64]> = facet.iter().map(|&j| self.local[j].coords()).collect();
                let (a, b) = small::hyperplane(&pts)?.ok_or(Error::Overflow)?;
                let side = |x: &[i64]| (crate::exactmath::dot(&a, x) - b as i128).signum();
                let s_new = side(self.local[p].coords());
                let s_old = side(self.local[opposite].coords());
                if s_new != 0 && s_new == -s_old {
                    let mut cell = facet.clone();
                    cell.push(p);
                    new_cells.push(cell);
                }
            }
            self.cells.extend(new_cells);
        }
        Ok(())
    }

    /// Facets lying in exactly one cell, with the opposite vertex.
    fn boundary_facets(&self) -> Vec<(Vec<usize>, usize)> {
        let mut seen: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for cell in &self.cells {
            for (skip, &opp) in cell.iter().enumerate() {
                let mut facet: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                facet.sort_unstable();
                seen.entry(facet).or_insert((0, opp)).0 += 1;
            }
        }
        let mut out: Vec<(Vec<usize>, usize)> = seen
            .into_iter()
            .filter(|(_, (count, _))| *count == 1)
            .map(|(f, (_, opp))| (f, opp))
            .collect();
        out.sort();
        out
    }

    /// Replaces every cell containing pool point `x` by the cones from `x`
    /// over its facets not containing `x`.
    fn stellar(&mut self, x: usize) -> Result<bool> {
        let c = self.local[x].clone();
        let mut out = Vec::with_capacity(self.cells.len() + 4);
        let mut touched = false;
        for cell in std::mem::take(&mut self.cells) {
            let frame = CellFrame::new(&self.cell_points(&cell))?;
            match frame.contains(&c, 1) {
                Some(lambda) => {
                    touched = true;
                    for (j, l) in lambda.iter().enumerate() {
                        if *l > 0 {
                            let mut nc = cell.clone();
                            nc[j] = x;
                            out.push(nc);
                        }
                    }
                }
                None => out.push(cell),
            }
        }
        self.cells = out;
        Ok(touched)
    }

    /// Sorts the pool lexicographically by ambient point, drops unused
    /// points and canonicalizes cells.
    fn finish(self, frame: AffineLattice) -> Result<Triangulation> {
        let used: BTreeSet<usize> = self.cells.iter().flatten().copied().collect();
        let mut order: Vec<(LatticeVector, usize)> = used
            .into_iter()
            .map(|i| Ok((frame.inverse(&self.local[i])?, i)))
            .collect::<Result<_>>()?;
        order.sort();
        let mut remap = HashMap::new();
        let mut points = Vec::with_capacity(order.len());
        let mut local = Vec::with_capacity(order.len());
        for (new, (p, old)) in order.into_iter().enumerate() {
            remap.insert(old, new);
            points.push(p);
            local.push(self.local[old].clone());
        }
        let mut cells: Vec<Vec<usize>> = self
            .cells
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| remap[&i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cells.sort();
        cells.dedup();
        Ok(Triangulation {
            points,
            cells,
            frame,
            local,
        })
    }
}

/// Triangulation of `P` into empty simplices using every lattice point.
pub fn full_lattice_triangulation(p: &Polytope) -> Result<Triangulation> {
    let d = p.dim();
    if d < 1 {
        return Err(Error::InvalidParameter("triangulation needs dimension at least 1".into()));
    }
    let mut b = Builder {
        local: p.local_vertices().to_vec(),
        cells: Vec::new(),
    };
    let order: Vec<usize> = (0..b.local.len()).collect();
    b.place(&order, d)?;
    let vertices: BTreeSet<&LatticeVector> = p.vertices().iter().collect();
    for x in p.lattice_points(1)? {
        if vertices.contains(&x) {
            continue;
        }
        let c = p.frame().forward(&x).ok_or(Error::Overflow)?;
        let i = b.add_point(c);
        b.stellar(i)?;
    }
    b.finish(p.frame().clone())
}

/// A full lattice triangulation in which every simplex whose vertices all lie
/// on `∂P` is contained in `∂P`.
///
/// The boundary triangulation is the restriction of
/// [`full_lattice_triangulation`] to `∂P`, which is automatically compatible
/// across facets.
pub fn interior_respecting_triangulation(p: &Polytope) -> Result<Triangulation> {
    let d = p.dim();
    if d < 2 {
        return Err(Error::InvalidParameter(
            "interior-respecting triangulation needs dimension at least 2".into(),
        ));
    }
    let interior = p.interior_lattice_points(1)?;
    let Some((first, rest)) = interior.split_first() else {
        return Err(Error::NoInteriorPoint);
    };
    let full = full_lattice_triangulation(p)?;
    let mut boundary = BTreeSet::new();
    for cell in &full.cells {
        for face in cell.iter().copied().combinations(d) {
            if p
                .support_hyperplanes()
                .iter()
                .any(|f| face.iter().all(|&i| f.slack(&full.points[i], 1) == 0))
            {
                boundary.insert(face);
            }
        }
    }
    let mut b = Builder {
        local: full.local.clone(),
        cells: Vec::new(),
    };
    let apex = b.add_point(p.frame().forward(first).ok_or(Error::Overflow)?);
    for mut face in boundary {
        face.push(apex);
        b.cells.push(face);
    }
    for x in rest {
        let i = b.add_point(p.frame().forward(x).ok_or(Error::Overflow)?);
        b.stellar(i)?;
    }
    b.finish(p.frame().clone())
}

impl Triangulation {
    /// A triangulation from explicit cells over a point pool. Cells must be
    /// full-dimensional simplices of the pool's affine hull; nothing else is
    /// checked.
    pub fn from_cells(points: &[LatticeVector], cells: &[Vec<usize>]) -> Result<Self> {
        let frame = full_dimensionalize(points)?;
        let d = frame.dim();
        let local: Vec<LatticeVector> = points
            .iter()
            .map(|p| frame.forward(p).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        for cell in cells {
            if cell.len() != d + 1 || cell.iter().any(|&i| i >= points.len()) {
                return Err(Error::InvalidParameter(format!("bad cell {cell:?}")));
            }
            let pts: Vec<&[i64]> = cell.iter().map(|&i| local[i].coords()).collect();
            if small::affine_rank(&pts)? != d {
                return Err(Error::InvalidParameter(format!("degenerate cell {cell:?}")));
            }
        }
        let b = Builder {
            local,
            cells: cells.to_vec(),
        };
        b.finish(frame)
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn cell_points(&self, cell: &[usize]) -> Vec<LatticeVector> {
        cell.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Subdivides at a lattice point of the triangulated region that is not
    /// yet a vertex.
    pub fn stellar_subdivide(&self, x: &LatticeVector) -> Result<Triangulation> {
        if self.points.contains(x) {
            return Err(Error::AlreadyVertex(x.clone()));
        }
        let c = self
            .frame
            .forward(x)
            .ok_or_else(|| Error::OutsideRegion(x.clone()))?;
        let mut b = Builder {
            local: self.local.clone(),
            cells: self.cells.clone(),
        };
        let i = b.add_point(c);
        if !b.stellar(i)? {
            return Err(Error::OutsideRegion(x.clone()));
        }
        b.finish(self.frame.clone())
    }

    /// Normalized volume of one cell.
    pub fn cell_volume(&self, cell: &[usize]) -> Result<u128> {
        let pts: Vec<&LatticeVector> = cell.iter().map(|&i| &self.local[i]).collect();
        Ok(CellFrame::new(&pts)?.det.unsigned_abs())
    }

    pub fn total_volume(&self) -> Result<u128> {
        self.cells
            .iter()
            .try_fold(0u128, |acc, c| Ok(acc + self.cell_volume(c)?))
    }

    /// Every nonempty face of every cell, as sorted index lists.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for cell in &self.cells {
            for size in 1..=cell.len() {
                out.extend(cell.iter().copied().combinations(size));
            }
        }
        out
    }

    fn in_some_facet(&self, p: &Polytope, face: &[usize]) -> bool {
        p.support_hyperplanes()
            .iter()
            .any(|f| face.iter().all(|&i| f.slack(&self.points[i], 1) == 0))
    }

    /// Faces whose relative interior avoids `∂P`: exactly the faces not
    /// contained in any facet of `P`. Sorted by size, then lexicographically.
    pub fn sigma_prime(&self, p: &Polytope) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .faces()
            .into_iter()
            .filter(|f| !self.in_some_facet(p, f))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Checks that for every `k ≤ kmax` each interior lattice point of
    /// degree `k` of `C(P)` lies in the interior of `C(σ)` for exactly one
    /// `σ ∈ Σ′`, and each boundary point for none.
    pub fn verify_decomposition(&self, p: &Polytope, kmax: i64) -> Result<DecompositionVerdict> {
        if kmax < 1 {
            return Err(Error::InvalidParameter(format!("kmax must be positive, got {kmax}")));
        }
        let sigma: BTreeSet<Vec<usize>> = self.sigma_prime(p).into_iter().collect();
        let frames: Vec<CellFrame> = self
            .cells
            .iter()
            .map(|c| CellFrame::new(&c.iter().map(|&i| &self.local[i]).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let mut checked = 0;
        for k in 1..=kmax {
            for (x, position) in p.classified_lattice_points(k)? {
                checked += 1;
                let mut supports = BTreeSet::new();
                if let Some(c) = self.frame.forward_scaled(&x, k) {
                    for (cell, frame) in self.cells.iter().zip(&frames) {
                        if let Some(lambda) = frame.contains(&c, k) {
                            let support: Vec<usize> = cell
                                .iter()
                                .zip(&lambda)
                                .filter(|(_, &l)| l > 0)
                                .map(|(&v, _)| v)
                                .collect();
                            supports.insert(support);
                        }
                    }
                }
                let count = supports.iter().filter(|s| sigma.contains(*s)).count();
                let expected = usize::from(position == Position::Interior);
                if count != expected {
                    return Ok(DecompositionVerdict {
                        holds: false,
                        kmax,
                        points_checked: checked,
                        failure: Some(DecompositionFailure {
                            k,
                            point: x,
                            position,
                            count,
                        }),
                    });
                }
            }
        }
        Ok(DecompositionVerdict {
            holds: true,
            kmax,
            points_checked: checked,
            failure: None,
        })
    }

    /// Cells that are not empty simplices.
    pub fn nonempty_cells(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for cell in &self.cells {
            let s = Polytope::from_vertices(self.frame.ambient_dim(), &self.cell_points(cell))?;
            if !simplex::is_empty_simplex(&s)? {
                out.push(cell.clone());
            }
        }
        Ok(out)
    }

    /// Lattice points of `P` that are not vertices of the triangulation.
    pub fn missing_lattice_points(&self, p: &Polytope) -> Result<Vec<LatticeVector>> {
        let have: BTreeSet<&LatticeVector> = self.points.iter().collect();
        Ok(p.lattice_points(1)?
            .into_iter()
            .filter(|x| !have.contains(x))
            .collect())
    }

    /// Faces with every vertex on `∂P` that are not inside a facet of `P`.
    pub fn boundary_violations(&self, p: &Polytope) -> Vec<Vec<usize>> {
        self.faces()
            .into_iter()
            .filter(|f| {
                f.iter().all(|&i| p.classify_point(&self.points[i]) == Position::Boundary)
                    && !self.in_some_facet(p, f)
            })
            .collect()
    }

    /// Faces of Σ′ without a vertex in the interior of `P`.
    pub fn sigma_prime_without_interior_vertex(&self, p: &Polytope) -> Vec<Vec<usize>> {
        self.sigma_prime(p)
            .into_iter()
            .filter(|f| {
                !f.iter()
                    .any(|&i| p.classify_point(&self.points[i]) == Position::Interior)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::family;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::new(v.to_vec())
    }

    fn poly(m: usize, v: &[&[i64]]) -> Polytope {
        Polytope::from_vertices(m, &v.iter().map(|p| lv(p)).collect::<Vec<_>>()).unwrap()
    }

    fn unit_square() -> Polytope {
        poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn square_segment_and_example2() {
        let t = full_lattice_triangulation(&unit_square()).unwrap();
        assert_eq!(t.cells().len(), 2);
        let seg = poly(1, &[&[0], &[2]]);
        let t = full_lattice_triangulation(&seg).unwrap();
        assert_eq!(t.cells(), &[vec![0, 1], vec![1, 2]]);
        let p = family::example2(2).unwrap();
        let t = full_lattice_triangulation(&p).unwrap();
        assert_eq!(t.cells().len(), 7);
        assert_eq!(t.total_volume().unwrap(), 7);
        assert!(t.nonempty_cells().unwrap().is_empty());
        assert!(t.missing_lattice_points(&p).unwrap().is_empty());
    }

    #[test]
    fn point_polytope_is_rejected() {
        assert!(matches!(
            full_lattice_triangulation(&poly(2, &[&[1, 1]])),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn coned_triangulation_of_example2() {
        let p = family::example2(2).unwrap();
        let t = interior_respecting_triangulation(&p).unwrap();
        // 7 boundary lattice points, normalized area 7
        assert_eq!(p.lattice_points(1).unwrap().len(), 8);
        assert_eq!(t.cells().len(), 7);
        assert_eq!(t.total_volume().unwrap(), 7);
        assert!(t.cells().iter().all(|c| c.contains(&t.points().iter().position(|x| *x == lv(&[1, 1])).unwrap())));
        let sp = t.sigma_prime(&p);
        assert_eq!(sp.len(), 15);
        assert_eq!(sp.iter().filter(|f| f.len() == 3).count(), 7);
        assert_eq!(sp.iter().filter(|f| f.len() == 2).count(), 7);
        assert_eq!(sp.iter().filter(|f| f.len() == 1).count(), 1);
        assert!(t.boundary_violations(&p).is_empty());
        assert!(t.sigma_prime_without_interior_vertex(&p).is_empty());
        assert!(t.verify_decomposition(&p, 3).unwrap().holds);
    }

    #[test]
    fn interior_respecting_on_big_triangle() {
        let p = poly(2, &[&[0, 0], &[3, 0], &[0, 3]]);
        let t = interior_respecting_triangulation(&p).unwrap();
        assert_eq!(t.total_volume().unwrap(), 9);
        assert!(t.boundary_violations(&p).is_empty());
        assert!(t.nonempty_cells().unwrap().is_empty());
    }

    #[test]
    fn interior_respecting_needs_interior_point() {
        assert_eq!(
            interior_respecting_triangulation(&unit_square()),
            Err(Error::NoInteriorPoint)
        );
    }

    #[test]
    fn sigma_prime_of_square() {
        let sq = unit_square();
        let t = full_lattice_triangulation(&sq).unwrap();
        let sp = t.sigma_prime(&sq);
        assert_eq!(sp.len(), 3);
        assert_eq!(sp[0].len(), 2);
        let diag: Vec<LatticeVector> = t.cell_points(&sp[0]);
        assert_eq!(diag, vec![lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn stellar_on_hypotenuse_and_centroid() {
        let pts = vec![lv(&[0, 0]), lv(&[2, 0]), lv(&[0, 2])];
        let t = Triangulation::from_cells(&pts, &[vec![0, 1, 2]]).unwrap();
        let s = t.stellar_subdivide(&lv(&[1, 1])).unwrap();
        assert_eq!(s.cells().len(), 2);
        assert_eq!(s.total_volume().unwrap(), 4);

        let pts = vec![lv(&[0, 0]), lv(&[3, 0]), lv(&[0, 3])];
        let t = Triangulation::from_cells(&pts, &[vec![0, 1, 2]]).unwrap();
        let s = t.stellar_subdivide(&lv(&[1, 1])).unwrap();
        assert_eq!(s.cells().len(), 3);
        assert_eq!(s.total_volume().unwrap(), 9);

        assert_eq!(t.stellar_subdivide(&lv(&[0, 0])), Err(Error::AlreadyVertex(lv(&[0, 0]))));
        assert_eq!(t.stellar_subdivide(&lv(&[5, 5])), Err(Error::OutsideRegion(lv(&[5, 5]))));
    }

    #[test]
    fn decomposition_detects_corruption() {
        let tri = family::unit(2).unwrap();
        let t = full_lattice_triangulation(&tri).unwrap();
        assert!(t.verify_decomposition(&tri, 4).unwrap().holds);

        let p = family::example2(2).unwrap();
        let t = interior_respecting_triangulation(&p).unwrap();
        let mut cells = t.cells().to_vec();
        cells.pop();
        let broken = Triangulation::from_cells(t.points(), &cells).unwrap();
        let v = broken.verify_decomposition(&p, 3).unwrap();
        assert!(!v.holds);
        assert!(v.failure.is_some());

        // overlapping cells: both diagonals of the square
        let sq = unit_square();
        let pts = sq.vertices().to_vec();
        let overlapping =
            Triangulation::from_cells(&pts, &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        let v = overlapping.verify_decomposition(&sq, 3).unwrap();
        assert!(!v.holds);
        assert!(v.failure.unwrap().count > 1);
    }

    #[test]
    fn lower_dimensional_triangulation() {
        let p = poly(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let t = full_lattice_triangulation(&p).unwrap();
        assert_eq!(t.total_volume().unwrap(), p.normalized_volume().unwrap());
        assert_eq!(t.cells().len(), 4);
        assert!(t.verify_decomposition(&p, 3).unwrap().holds);
    }
}
