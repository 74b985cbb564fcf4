//! Reduced degrees of interior cone points and canonical module generators
//! for lattice polytopes.
//!
//! For a lattice polytope `P ⊂ R^m` of dimension `d`, the crate works with
//! the cone `C(P)` over `P × {1}`, the semigroup `M(P)` generated by its
//! degree-one lattice points and the interior lattice points `M*(P)`. The
//! reduced degree `rdeg y` of `y ∈ M*(P)` is the smallest degree of a
//! remainder `z ∈ M*(P)` with `y - z ∈ M(P)`. The elements with
//! `rdeg y = deg y` are the minimal generators of `M*(P)` as an
//! `M(P)`-module; their maximal degree is at most `d + 1`, at most `d` unless
//! `P` is an empty simplex, and at most `d - 1` when `P` has an interior
//! lattice point.
//!
//! Everything is computed by exact integer arithmetic.

// Matrix code indexes rows and columns the way the formulas do.
#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod error;
pub mod exactmath;
pub mod format;
pub mod par;
pub mod polytope;
pub mod semigroup;
pub mod simplex;
pub mod triangulation;
pub mod verify;

pub use cone::{GradedCone, GradedPoint};
pub use error::{Error, Result};
pub use exactmath::{IntMatrix, LatticeVector, Rational};
pub use par::Exec;
pub use polytope::{FacetForm, Polytope, Position};
pub use semigroup::{Bound, GeneratorReport, IdpVerdict, ReductionWitness, Semigroup};
pub use triangulation::Triangulation;
