//! Reduced degrees, irreducible elements and generators of `M*(P)`.
//!
//! `M(P)` is the semigroup generated by the degree-one lattice points of the
//! cone and `M*(P)` the set of interior lattice points. For `y ∈ M*(P)` the
//! reduced degree is the least degree of an interior `z` with `y − z ∈ M(P)`;
//! `y` is irreducible when that least degree is `deg y`.
//!
//! Since interior + cone ⊆ interior, `y` is reducible as soon as a single
//! degree-one point can be peeled off while staying interior. Generator
//! search stops at degree `d + 1`, the unconditional bound on reduced
//! degrees.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::{GradedCone, GradedPoint};
use crate::error::{Error, Result};
use crate::exactmath::LatticeVector;
use crate::par::Exec;
use crate::polytope::{Polytope, Position};
use crate::simplex;

/// Which degree bound on the generators applies to a polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    /// `P` is an empty simplex.
    #[serde(rename = "d+1")]
    DPlusOne,
    /// `P` is not an empty simplex.
    #[serde(rename = "d")]
    D,
    /// `P` has an interior lattice point and `d ≥ 2`.
    #[serde(rename = "d-1")]
    DMinusOne,
}

impl Bound {
    pub fn for_polytope(p: &Polytope) -> Result<Self> {
        if simplex::is_empty_simplex_polytope(p)? {
            return Ok(Bound::DPlusOne);
        }
        if p.dim() >= 2 && !p.interior_lattice_points(1)?.is_empty() {
            return Ok(Bound::DMinusOne);
        }
        Ok(Bound::D)
    }

    pub fn value(self, d: usize) -> i64 {
        let d = d as i64;
        match self {
            Bound::DPlusOne => d + 1,
            Bound::D => d,
            Bound::DMinusOne => d - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bound::DPlusOne => "d+1",
            Bound::D => "d",
            Bound::DMinusOne => "d-1",
        }
    }

    pub fn reason(self) -> &'static str {
        match self {
            Bound::DPlusOne => "empty simplex",
            Bound::D => "not an empty simplex",
            Bound::DMinusOne => "has an interior lattice point",
        }
    }
}

/// Which semigroup acts on `M*(P)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// `M(P)`, generated in degree one.
    DegreeOne,
    /// All lattice points of the cone.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub dim: usize,
    pub action: Action,
    /// Minimal generators, sorted by degree and then lexicographically.
    pub generators: Vec<GradedPoint>,
    pub degree_histogram: BTreeMap<i64, usize>,
    /// Maximal generator degree, i.e. `max rdeg y` over `M*(P)` for the
    /// degree-one action.
    pub invariant: i64,
    pub applicable_bound: Bound,
    pub bound_value: i64,
    pub bound_reason: String,
}

impl GeneratorReport {
    fn new(p: &Polytope, action: Action, generators: Vec<GradedPoint>) -> Result<Self> {
        let mut degree_histogram = BTreeMap::new();
        for g in &generators {
            *degree_histogram.entry(g.degree).or_insert(0) += 1;
        }
        let invariant = generators.iter().map(|g| g.degree).max().unwrap_or(0);
        let bound = Bound::for_polytope(p)?;
        Ok(GeneratorReport {
            dim: p.dim(),
            action,
            generators,
            degree_histogram,
            invariant,
            applicable_bound: bound,
            bound_value: bound.value(p.dim()),
            bound_reason: bound.reason().to_string(),
        })
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.degree_histogram.keys().copied().collect()
    }

    pub fn points(&self) -> Vec<LatticeVector> {
        self.generators.iter().map(|g| g.point.clone()).collect()
    }
}

/// A decomposition `y = z + Σ w_parts` with `z` interior and each part a
/// lifted lattice point of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub z: GradedPoint,
    pub w_parts: Vec<GradedPoint>,
}

impl ReductionWitness {
    pub fn total(&self) -> Result<LatticeVector> {
        self.w_parts
            .iter()
            .try_fold(self.z.point.clone(), |acc, w| acc.checked_add(&w.point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdpVerdict {
    pub holds: bool,
    pub kmax: i64,
    /// First point (smallest degree, then lexicographic) that is not a sum of
    /// a point one degree lower and a degree-one point.
    pub counterexample: Option<GradedPoint>,
}

/// `P` together with its cone and degree-one points.
#[derive(Debug, Clone)]
pub struct Semigroup {
    cone: GradedCone,
    degree_one: Vec<GradedPoint>,
    exec: Exec,
}

impl Semigroup {
    pub fn new(p: &Polytope) -> Result<Self> {
        let cone = GradedCone::over(p)?;
        let degree_one = cone.slice(1, false)?;
        Ok(Semigroup {
            cone,
            degree_one,
            exec: Exec::default(),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn polytope(&self) -> &Polytope {
        self.cone.base()
    }

    pub fn cone(&self) -> &GradedCone {
        &self.cone
    }

    fn dim(&self) -> usize {
        self.polytope().dim()
    }

    /// Lifted lattice points of `P`, the generators of `M(P)`.
    pub fn degree_one_points(&self) -> &[GradedPoint] {
        &self.degree_one
    }

    fn peelable(&self, y: &[i64]) -> bool {
        self.degree_one
            .iter()
            .any(|x| self.cone.difference_is_interior(y, &x.point))
    }

    /// Whether `y ∈ M*(P)` is `M(P)`-irreducible.
    pub fn is_irreducible(&self, y: &LatticeVector) -> Result<bool> {
        let y = self.cone.require_interior(y)?;
        Ok(!self.peelable(&y.point))
    }

    /// Reduced degree of `y` with a witness decomposition.
    ///
    /// Breadth-first over repeated subtraction of degree-one points, one
    /// degree per level, keeping only interior states: a non-interior state
    /// cannot lead back into the interior. Among the remainders of least
    /// degree the lexicographically smallest is reported.
    pub fn rdeg(&self, y: &LatticeVector) -> Result<(i64, ReductionWitness)> {
        let y = self.cone.require_interior(y)?;
        let mut parent: HashMap<LatticeVector, (LatticeVector, usize)> = HashMap::new();
        let mut level = vec![y.point.clone()];
        loop {
            let mut next = BTreeSet::new();
            for s in &level {
                for (i, x) in self.degree_one.iter().enumerate() {
                    if !self.cone.difference_is_interior(s, &x.point) {
                        continue;
                    }
                    let t = s.checked_sub(&x.point)?;
                    if !parent.contains_key(&t) {
                        parent.insert(t.clone(), (s.clone(), i));
                        next.insert(t);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next.into_iter().collect();
        }
        let z = level.swap_remove(0);
        let mut w_parts = Vec::new();
        let mut cur = z.clone();
        while let Some((prev, i)) = parent.get(&cur) {
            w_parts.push(self.degree_one[*i].clone());
            cur = prev.clone();
        }
        w_parts.sort();
        let degree = z.last().unwrap();
        Ok((
            degree,
            ReductionWitness {
                z: GradedPoint::new(z, Position::Interior),
                w_parts,
            },
        ))
    }

    /// Reference reduced degree by exhaustive search over all multisets of
    /// degree-one points, largest first. Exponential; small inputs only.
    pub fn rdeg_oracle(&self, y: &LatticeVector) -> Result<i64> {
        let y = self.cone.require_interior(y)?;
        let deg = y.degree;
        let base = self.polytope();
        let m = base.ambient_dim();
        let pts: Vec<&[i64]> = self.degree_one.iter().map(|g| &g.point.coords()[..m]).collect();
        for size in (1..deg).rev() {
            let k = deg - size;
            for multiset in (0..pts.len()).combinations_with_replacement(size as usize) {
                let mut rest: Vec<i64> = y.point.coords()[..m].to_vec();
                for &i in &multiset {
                    for (r, &x) in rest.iter_mut().zip(pts[i]) {
                        *r = r.checked_sub(x).ok_or(Error::Overflow)?;
                    }
                }
                if base.classify_scaled(&rest, k) == Position::Interior {
                    return Ok(k);
                }
            }
        }
        Ok(deg)
    }

    /// The unique minimal generating set `G(P)` of `M*(P)` under `M(P)`.
    pub fn irreducible_generators(&self) -> Result<GeneratorReport> {
        let mut gens = Vec::new();
        for k in 1..=self.dim() as i64 + 1 {
            let slice = self.cone.slice(k, true)?;
            gens.extend(self.exec.filter(slice, |g| !self.peelable(&g.point)));
        }
        GeneratorReport::new(self.polytope(), Action::DegreeOne, gens)
    }

    /// All values taken by `rdeg` on `M*(P)`: the degrees of `G(P)`.
    pub fn rdeg_value_set(&self) -> Result<BTreeSet<i64>> {
        Ok(self.irreducible_generators()?.degrees())
    }

    /// Irreducibility under the action of the full semigroup `C(P) ∩ Z^{m+1}`.
    pub fn is_irreducible_full(&self, y: &LatticeVector) -> Result<bool> {
        let y = self.cone.require_interior(y)?;
        for k in 1..y.degree {
            for w in self.cone.slice(k, false)? {
                if self.cone.difference_is_interior(&y.point, &w.point) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Minimal generators of `M*(P)` under the full semigroup.
    ///
    /// Swept by degree: an interior `y` is reducible iff `y − g` lies in the
    /// cone for some generator `g` of lower degree.
    pub fn full_generators(&self) -> Result<GeneratorReport> {
        let mut gens: Vec<GradedPoint> = Vec::new();
        for k in 1..=self.dim() as i64 + 1 {
            let slice = self.cone.slice(k, true)?;
            let found = self.exec.filter(slice, |y| {
                !gens
                    .iter()
                    .any(|g| self.cone.difference_in_cone(&y.point, &g.point))
            });
            gens.extend(found);
        }
        GeneratorReport::new(self.polytope(), Action::Full, gens)
    }

    /// Checks that every lattice point of `kP`, `2 ≤ k ≤ kmax`, is a point of
    /// `(k−1)P` plus a point of `P`.
    pub fn idp_check(&self, kmax: i64) -> Result<IdpVerdict> {
        if kmax < 2 {
            return Err(Error::InvalidParameter(format!("kmax must be at least 2, got {kmax}")));
        }
        let p = self.polytope();
        let ones = p.lattice_points(1)?;
        let mut prev: HashSet<LatticeVector> = ones.iter().cloned().collect();
        for k in 2..=kmax {
            let slice = p.lattice_points(k)?;
            let decomposable = self.exec.map(&slice, |x| {
                ones.iter().any(|v| {
                    x.checked_sub(v)
                        .map(|r| prev.contains(&r))
                        .unwrap_or(false)
                })
            });
            if let Some(pos) = decomposable.iter().position(|ok| !ok) {
                let x = &slice[pos];
                return Ok(IdpVerdict {
                    holds: false,
                    kmax,
                    counterexample: Some(GradedPoint::new(x.lifted(k), p.classify_scaled(x, k))),
                });
            }
            prev = slice.into_iter().collect();
        }
        Ok(IdpVerdict {
            holds: true,
            kmax,
            counterexample: None,
        })
    }
}

pub fn irreducible_generators(p: &Polytope) -> Result<GeneratorReport> {
    Semigroup::new(p)?.irreducible_generators()
}

pub fn full_generators(p: &Polytope) -> Result<GeneratorReport> {
    Semigroup::new(p)?.full_generators()
}

pub fn rdeg(p: &Polytope, y: &LatticeVector) -> Result<(i64, ReductionWitness)> {
    Semigroup::new(p)?.rdeg(y)
}
