//! The graded cone `C(P) ⊂ R^{m+1}` spanned by `P × {1}`.
//!
//! The last coordinate is the degree. Points of the cone are classified as
//! interior (relative interior, so lower-dimensional `P` work too) or
//! boundary; the apex counts as boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{dot, LatticeVector};
use crate::polytope::{Polytope, Position};

/// A lattice point of `C(P)` together with its degree and position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedPoint {
    pub point: LatticeVector,
    pub degree: i64,
    pub position: Position,
}

impl GradedPoint {
    pub fn new(point: LatticeVector, position: Position) -> Self {
        let degree = point.last().unwrap_or(0);
        GradedPoint {
            point,
            degree,
            position,
        }
    }

    pub fn is_interior(&self) -> bool {
        self.position == Position::Interior
    }
}

#[derive(Debug, Clone)]
pub struct GradedCone {
    base: Polytope,
    forms: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl GradedCone {
    /// Homogenizes the facets `n·x ≤ o` of `P` to `o·t − n·x ≥ 0` and the
    /// hull equations `e·x = c` to `e·x − c·t = 0`.
    pub fn over(base: &Polytope) -> Result<Self> {
        let forms = base
            .support_hyperplanes()
            .iter()
            .map(|f| f.normal.checked_scale(-1).map(|n| n.lifted(f.offset)))
            .collect::<Result<Vec<_>>>()?;
        let equations = base
            .hull_equations()
            .iter()
            .map(|(e, c)| {
                let c = c.checked_neg().ok_or(Error::Overflow)?;
                Ok(e.lifted(c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedCone {
            base: base.clone(),
            forms,
            equations,
        })
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    /// Support forms, each nonnegative on the cone.
    pub fn support_forms(&self) -> &[LatticeVector] {
        &self.forms
    }

    /// Linear equations of the span of the cone (empty when `P` is
    /// full-dimensional).
    pub fn span_equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn grading_index(&self) -> usize {
        self.base.ambient_dim()
    }

    pub fn in_span(&self, y: &[i64]) -> bool {
        y.len() == self.base.ambient_dim() + 1 && self.equations.iter().all(|e| e.dot(y) == 0)
    }

    pub fn membership(&self, y: &[i64]) -> Position {
        if !self.in_span(y) {
            return Position::Outside;
        }
        self.classify_in_span(y)
    }

    /// Classification for a point already known to lie in the linear span.
    pub(crate) fn classify_in_span(&self, y: &[i64]) -> Position {
        let mut strict = *y.last().unwrap() > 0;
        for f in &self.forms {
            let v = dot(f, y);
            if v < 0 {
                return Position::Outside;
            }
            if v == 0 {
                strict = false;
            }
        }
        if strict {
            Position::Interior
        } else if y.last().copied().unwrap_or(0) < 0 {
            Position::Outside
        } else {
            Position::Boundary
        }
    }

    /// `y − x` is interior, for `y, x` in the span.
    pub(crate) fn difference_is_interior(&self, y: &[i64], x: &[i64]) -> bool {
        if y.last().unwrap() - x.last().unwrap() <= 0 {
            return false;
        }
        self.forms.iter().all(|f| dot(f, y) > dot(f, x))
    }

    /// `y − x` lies in the cone, for `y, x` in the span.
    pub(crate) fn difference_in_cone(&self, y: &[i64], x: &[i64]) -> bool {
        if y.last().unwrap() < x.last().unwrap() {
            return false;
        }
        self.forms.iter().all(|f| dot(f, y) >= dot(f, x))
    }

    /// Lattice points of the cone in degree `k`, sorted lexicographically.
    pub fn slice(&self, k: i64, interior_only: bool) -> Result<Vec<GradedPoint>> {
        Ok(self
            .base
            .classified_lattice_points(k)?
            .into_iter()
            .filter(|(_, pos)| !interior_only || *pos == Position::Interior)
            .map(|(x, pos)| GradedPoint::new(x.lifted(k), pos))
            .collect())
    }

    /// Classifies `y`, failing unless it is interior.
    pub fn require_interior(&self, y: &LatticeVector) -> Result<GradedPoint> {
        if y.len() != self.base.ambient_dim() + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.base.ambient_dim() + 1,
                found: y.len(),
            });
        }
        match self.membership(y) {
            Position::Interior => Ok(GradedPoint::new(y.clone(), Position::Interior)),
            _ => Err(Error::NotInterior(y.clone())),
        }
    }
}
