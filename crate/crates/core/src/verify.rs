//! The invariant suite: bound theorems, simplex lemmas, oracle agreement and
//! triangulation properties, run on one polytope or on a seeded random
//! corpus.
//!
//! Reports are deterministic: the corpus and every sample are drawn from
//! seeded ChaCha streams and per-polytope results are collected in input
//! order whatever the execution policy.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::LatticeVector;
use crate::par::Exec;
use crate::polytope::{FacetForm, Polytope, Position};
use crate::semigroup::{Action, Bound, Semigroup};
use crate::simplex;
use crate::triangulation::{full_lattice_triangulation, interior_respecting_triangulation, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// Ambient dimensions drawn uniformly from this range.
    pub min_ambient: usize,
    pub max_ambient: usize,
    pub coord_min: i64,
    pub coord_max: i64,
    /// Candidate vertices per polytope are drawn from `1..=max_points`.
    pub max_points: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 1,
            count: 100,
            min_ambient: 2,
            max_ambient: 3,
            coord_min: -3,
            coord_max: 3,
            max_points: 8,
        }
    }
}

impl CorpusSpec {
    fn validate(&self) -> Result<()> {
        if self.min_ambient < 1 || self.min_ambient > self.max_ambient {
            return Err(Error::InvalidParameter("bad ambient dimension range".into()));
        }
        if self.coord_min > self.coord_max {
            return Err(Error::InvalidParameter("bad coordinate range".into()));
        }
        if self.max_points < 1 {
            return Err(Error::InvalidParameter("max_points must be positive".into()));
        }
        Ok(())
    }
}

/// Sampling sizes for the checks that run on individual cone points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Interior points per degree `1..=d+3` compared against the exhaustive
    /// oracle.
    pub oracle_per_degree: usize,
    /// Skip oracle samples whose multiset search exceeds this many candidates.
    pub oracle_budget: u128,
    /// Interior points per degree `1..=2(d+1)` for the rdeg consistency
    /// checks.
    pub consistency_per_degree: usize,
    /// Skip consistency samples in slices with more points than this.
    pub consistency_slice_cap: usize,
    pub minimize: bool,
    pub exec: Exec,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            oracle_per_degree: 2,
            oracle_budget: 20_000,
            consistency_per_degree: 1,
            consistency_slice_cap: 4_000,
            minimize: true,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeVerdict {
    pub name: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<LatticeVector>,
    pub empty_simplex: bool,
    pub interior_points: usize,
    pub invariant: i64,
    pub applicable_bound: Bound,
    pub bound_value: i64,
    pub degree_set: BTreeSet<i64>,
    pub oracle_samples: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub name: String,
    pub ambient_dim: usize,
    pub vertices: Vec<LatticeVector>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub polytopes: usize,
    pub violations: usize,
    pub oracle_samples: usize,
    pub bound_histogram: BTreeMap<String, usize>,
    pub dim_histogram: BTreeMap<usize, usize>,
    pub verdicts: Vec<PolytopeVerdict>,
    /// Smallest failing vertex set found by dropping vertices, for the first
    /// failing polytope.
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Random polytopes: hulls of up to `max_points` uniform lattice points.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<Polytope>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let m = rng.gen_range(spec.min_ambient..=spec.max_ambient);
        let n = rng.gen_range(1..=spec.max_points);
        let pts: Vec<LatticeVector> = (0..n)
            .map(|_| {
                LatticeVector::new(
                    (0..m)
                        .map(|_| rng.gen_range(spec.coord_min..=spec.coord_max))
                        .collect(),
                )
            })
            .collect();
        out.push(Polytope::from_vertices(m, &pts)?.with_name(format!("corpus-{}-{i}", spec.seed)));
    }
    Ok(out)
}

fn multiset_count(n: usize, max_size: i64) -> u128 {
    // Σ_{s=1}^{max_size} C(n+s-1, s)
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for s in 1..=max_size.max(0) as u128 {
        term = term.saturating_mul(n as u128 + s - 1) / s;
        total = total.saturating_add(term);
    }
    total
}

struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    fn check(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(Violation {
                check: check.into(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, check: &str, e: Error) {
        self.violations.push(Violation {
            check: check.into(),
            detail: format!("error: {e}"),
        });
    }
}

fn draw(rng: &mut ChaCha8Rng, pool: Vec<LatticeVector>, n: usize) -> Vec<LatticeVector> {
    if pool.len() <= n {
        return pool;
    }
    let mut picks: Vec<usize> = sample(rng, pool.len(), n).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| pool[i].clone()).collect()
}

/// Runs every check on one polytope. Errors from the computations are
/// reported as violations, never propagated.
pub fn verify_polytope(p: &Polytope, seed: u64, opts: &SuiteOptions) -> PolytopeVerdict {
    let mut c = Checker { violations: Vec::new() };
    let d = p.dim();
    let di = d as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = p.name().unwrap_or("polytope").to_string();
    let mut verdict = PolytopeVerdict {
        name,
        ambient_dim: p.ambient_dim(),
        dim: d,
        vertices: p.vertices().to_vec(),
        empty_simplex: false,
        interior_points: 0,
        invariant: 0,
        applicable_bound: Bound::D,
        bound_value: di,
        degree_set: BTreeSet::new(),
        oracle_samples: 0,
        violations: Vec::new(),
    };
    if let Err(e) = run_checks(p, opts, &mut rng, &mut c, &mut verdict) {
        c.error("computation", e);
    }
    c.violations.sort();
    verdict.violations = c.violations;
    verdict
}

fn run_checks(
    p: &Polytope,
    opts: &SuiteOptions,
    rng: &mut ChaCha8Rng,
    c: &mut Checker,
    v: &mut PolytopeVerdict,
) -> Result<()> {
    let d = p.dim();
    let di = d as i64;
    let sg = Semigroup::new(p)?.with_exec(Exec::Sequential);
    let empty = simplex::is_empty_simplex_polytope(p)?;
    let interior = p.interior_lattice_points(1)?;
    v.empty_simplex = empty;
    v.interior_points = interior.len();

    // bound theorems
    let gens = sg.irreducible_generators()?;
    v.invariant = gens.invariant;
    v.applicable_bound = gens.applicable_bound;
    v.bound_value = gens.bound_value;
    v.degree_set = gens.degrees();
    c.check(gens.invariant <= di + 1, "bound_d_plus_one", || {
        format!("invariant {} > d+1 = {}", gens.invariant, di + 1)
    });
    c.check((gens.invariant <= di) == !empty, "bound_d_iff_not_empty_simplex", || {
        format!("invariant {} with d = {d}, empty simplex = {empty}", gens.invariant)
    });
    if d >= 2 && !interior.is_empty() {
        c.check(gens.invariant < di, "bound_d_minus_one", || {
            format!("invariant {} > d-1 = {} with {} interior points", gens.invariant, di - 1, interior.len())
        });
    }
    c.check(gens.invariant <= gens.bound_value, "applicable_bound", || {
        format!("invariant {} above reported bound {}", gens.invariant, gens.bound_value)
    });
    for g in &gens.generators {
        c.check(g.degree <= di + 1 && sg.is_irreducible(&g.point)?, "generator_irreducible", || {
            format!("listed generator {} is reducible", g.point)
        });
    }

    // simplex lemmas
    let lifted_sum = p
        .vertices()
        .iter()
        .try_fold(LatticeVector::zeros(p.ambient_dim() + 1), |acc, x| acc.checked_add(&x.lifted(1)))?;
    if p.is_simplex() {
        let unimodular = simplex::is_unimodular(p)?;
        let vol = simplex::normalized_volume(p)?;
        c.check(!unimodular || empty, "unimodular_implies_empty", || "unimodular but not empty".into());
        c.check((vol == 1) == unimodular, "volume_one_iff_unimodular", || {
            format!("volume {vol}, unimodular = {unimodular}")
        });
        let pyramid = p.normalized_volume()?;
        c.check(vol == pyramid, "simplex_volume_routes", || {
            format!("determinant {vol} vs pyramid {pyramid}")
        });
        if !empty {
            c.check(gens.invariant <= di, "nonempty_simplex_bound", || {
                format!("invariant {} > d on a nonempty simplex", gens.invariant)
            });
        } else {
            let (r, _) = sg.rdeg(&lifted_sum)?;
            c.check(r == di + 1, "empty_simplex_vertex_sum", || {
                format!("rdeg {lifted_sum} = {r}, expected {}", di + 1)
            });
            c.check(!v.degree_set.contains(&di), "empty_simplex_gap", || {
                format!("generator of degree d = {d} on an empty simplex")
            });
        }
        for k in 1..=di + 2 {
            let pool: Vec<LatticeVector> = sg.cone().slice(k, true)?.into_iter().map(|g| g.point).collect();
            for y in draw(rng, pool, 2) {
                let w = simplex::lemma_a_decomposition(p, &y)?;
                let ok = w.z.degree <= di + 1
                    && w.total()? == y
                    && sg.cone().membership(&w.z.point) == Position::Interior
                    && w.w_parts.iter().all(|x| x.degree == 1 && p.vertices().contains(&x.point.truncated()));
                c.check(ok, "fractional_reduction", || format!("bad decomposition of {y}: {w:?}"));
            }
        }
        // Full-semigroup generators of empty simplices.
        if empty {
            let full = sg.full_generators()?;
            if unimodular {
                c.check(full.points() == vec![lifted_sum.clone()], "unimodular_single_generator", || {
                    format!("full generators {:?}", full.points())
                });
            } else {
                c.check(full.invariant < di, "empty_nonunimodular_full_bound", || {
                    format!("full generator degree {} > d-1", full.invariant)
                });
            }
        }
    }

    // full generators against M(P)-generators
    let full = sg.full_generators()?;
    debug_assert_eq!(full.action, Action::Full);
    let irreducible: BTreeSet<LatticeVector> = gens.points().into_iter().collect();
    let full_set: BTreeSet<LatticeVector> = full.points().into_iter().collect();
    c.check(full_set.is_subset(&irreducible), "full_subset_of_irreducible", || {
        format!("{:?} not within {:?}", full_set, irreducible)
    });
    if sg.idp_check((di + 1).max(2))?.holds {
        c.check(full_set == irreducible, "idp_generators_coincide", || {
            format!("IDP holds but {:?} != {:?}", full_set, irreducible)
        });
    }

    // oracle agreement and single-subtraction soundness
    let n1 = sg.degree_one_points().len();
    for k in 1..=di + 3 {
        if multiset_count(n1, k - 1) > opts.oracle_budget {
            break;
        }
        let pool: Vec<LatticeVector> = sg.cone().slice(k, true)?.into_iter().map(|g| g.point).collect();
        for y in draw(rng, pool, opts.oracle_per_degree) {
            let (r, w) = sg.rdeg(&y)?;
            let o = sg.rdeg_oracle(&y)?;
            v.oracle_samples += 1;
            c.check(r == o, "rdeg_oracle", || format!("rdeg {y} = {r}, oracle {o}"));
            c.check((o == k) == sg.is_irreducible(&y)?, "single_subtraction", || {
                format!("{y}: oracle {o}, peeling disagrees")
            });
            c.check(w.total()? == y && w.z.degree == r, "rdeg_witness", || format!("{y}: {w:?}"));
        }
    }

    // rdeg consistency up to degree 2(d+1)
    for k in 1..=2 * (di + 1) {
        let slice = sg.cone().slice(k, true)?;
        if slice.len() > opts.consistency_slice_cap {
            break;
        }
        let pool: Vec<LatticeVector> = slice.into_iter().map(|g| g.point).collect();
        for y in draw(rng, pool, opts.consistency_per_degree) {
            let (r, _) = sg.rdeg(&y)?;
            let irr = sg.is_irreducible(&y)?;
            c.check(
                v.degree_set.contains(&r) && r <= k && (r == k) == irr,
                "rdeg_consistency",
                || format!("rdeg {y} = {r}, irreducible = {irr}, values {:?}", v.degree_set),
            );
        }
    }

    // facet/vertex duality
    let mut rows: Vec<FacetForm> = p.support_hyperplanes().to_vec();
    for (e, b) in p.hull_equations() {
        rows.push(FacetForm { normal: e.clone(), offset: *b });
        rows.push(FacetForm {
            normal: e.checked_scale(-1)?,
            offset: b.checked_neg().ok_or(Error::Overflow)?,
        });
    }
    match Polytope::from_inequalities(p.ambient_dim(), &rows) {
        Ok(q) => c.check(q.vertices() == p.vertices(), "facet_vertex_duality", || {
            format!("inequalities give vertices {:?}", q.vertices())
        }),
        Err(e) => c.error("facet_vertex_duality", e),
    }

    // triangulations
    if d >= 1 {
        let volume = p.normalized_volume()?;
        let t = full_lattice_triangulation(p)?;
        check_triangulation(c, "full", &t, p, volume)?;
        if d >= 2 && !interior.is_empty() {
            let t = interior_respecting_triangulation(p)?;
            check_triangulation(c, "interior", &t, p, volume)?;
            let bad = t.boundary_violations(p);
            c.check(bad.is_empty(), "interior_boundary_faces", || format!("faces {bad:?}"));
            let bad = t.sigma_prime_without_interior_vertex(p);
            c.check(bad.is_empty(), "interior_sigma_prime_vertex", || format!("faces {bad:?}"));
        }
    }
    Ok(())
}

fn check_triangulation(c: &mut Checker, tag: &str, t: &Triangulation, p: &Polytope, volume: u128) -> Result<()> {
    let total = t.total_volume()?;
    c.check(total == volume, &format!("{tag}_volume"), || format!("cells sum to {total}, polytope {volume}"));
    let bad = t.nonempty_cells()?;
    c.check(bad.is_empty(), &format!("{tag}_cells_empty"), || format!("cells {bad:?}"));
    let missing = t.missing_lattice_points(p)?;
    c.check(missing.is_empty(), &format!("{tag}_all_points_used"), || format!("{missing:?}"));
    let v = t.verify_decomposition(p, p.dim() as i64 + 1)?;
    c.check(v.holds, &format!("{tag}_decomposition"), || format!("{:?}", v.failure));
    Ok(())
}

/// Drops vertices greedily while some violation with the same check name
/// persists.
pub fn minimize(p: &Polytope, seed: u64, opts: &SuiteOptions) -> Counterexample {
    let first = verify_polytope(p, seed, opts);
    let target: BTreeSet<String> = first.violations.iter().map(|v| v.check.clone()).collect();
    let mut vertices = p.vertices().to_vec();
    let mut best = first;
    let mut progress = true;
    while progress && vertices.len() > 1 {
        progress = false;
        for i in 0..vertices.len() {
            let mut fewer = vertices.clone();
            fewer.remove(i);
            let Ok(q) = Polytope::from_vertices(p.ambient_dim(), &fewer) else {
                continue;
            };
            let q = q.with_name(best.name.clone());
            let r = verify_polytope(&q, seed, opts);
            if r.violations.iter().any(|v| target.contains(&v.check)) {
                vertices = q.vertices().to_vec();
                best = r;
                progress = true;
                break;
            }
        }
    }
    Counterexample {
        name: best.name,
        ambient_dim: p.ambient_dim(),
        vertices: best.vertices,
        violations: best.violations,
    }
}

fn polytope_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

/// Runs the suite on each polytope, in parallel according to `opts.exec`.
pub fn verify_all(polytopes: &[Polytope], seed: u64, opts: &SuiteOptions) -> VerifyReport {
    let indexed: Vec<(usize, &Polytope)> = polytopes.iter().enumerate().collect();
    let verdicts: Vec<PolytopeVerdict> = opts
        .exec
        .map(&indexed, |(i, p)| verify_polytope(p, polytope_seed(seed, *i), opts));
    let mut bound_histogram = BTreeMap::new();
    let mut dim_histogram = BTreeMap::new();
    for v in &verdicts {
        *bound_histogram.entry(v.applicable_bound.label().to_string()).or_insert(0) += 1;
        *dim_histogram.entry(v.dim).or_insert(0) += 1;
    }
    let counterexample = verdicts
        .iter()
        .position(|v| !v.violations.is_empty())
        .map(|i| {
            if opts.minimize {
                minimize(&polytopes[i], polytope_seed(seed, i), opts)
            } else {
                Counterexample {
                    name: verdicts[i].name.clone(),
                    ambient_dim: verdicts[i].ambient_dim,
                    vertices: verdicts[i].vertices.clone(),
                    violations: verdicts[i].violations.clone(),
                }
            }
        });
    VerifyReport {
        polytopes: verdicts.len(),
        violations: verdicts.iter().map(|v| v.violations.len()).sum(),
        oracle_samples: verdicts.iter().map(|v| v.oracle_samples).sum(),
        bound_histogram,
        dim_histogram,
        verdicts,
        counterexample,
    }
}

pub fn verify_corpus(spec: &CorpusSpec, opts: &SuiteOptions) -> Result<VerifyReport> {
    Ok(verify_all(&generate_corpus(spec)?, spec.seed, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::family;

    #[test]
    fn corpus_is_deterministic_and_in_range() {
        let spec = CorpusSpec {
            count: 40,
            ..CorpusSpec::default()
        };
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!((2..=3).contains(&p.ambient_dim()));
            assert!(p.vertices().len() <= 8);
            assert!(p.vertices().iter().flat_map(|v| v.iter()).all(|x| (-3..=3).contains(x)));
        }
        let other = generate_corpus(&CorpusSpec { seed: 2, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(3, 0), 0);
        assert_eq!(multiset_count(3, 1), 3);
        assert_eq!(multiset_count(3, 2), 3 + 6);
        assert_eq!(multiset_count(4, 3), 4 + 10 + 20);
    }

    #[test]
    fn fixtures_pass() {
        let opts = SuiteOptions::default();
        for p in [
            family::unit(2).unwrap(),
            family::example1(3).unwrap(),
            family::example2(3).unwrap(),
            family::reeve(2).unwrap(),
        ] {
            let v = verify_polytope(&p, 7, &opts);
            assert!(v.violations.is_empty(), "{}: {:?}", v.name, v.violations);
        }
        let r = verify_polytope(&family::reeve(3).unwrap(), 0, &opts);
        assert_eq!(r.applicable_bound, Bound::DPlusOne);
        assert_eq!(r.invariant, 4);
    }

    #[test]
    fn execution_policy_does_not_change_reports() {
        let spec = CorpusSpec {
            count: 12,
            seed: 5,
            ..CorpusSpec::default()
        };
        let seq = verify_corpus(&spec, &SuiteOptions { exec: Exec::Sequential, ..SuiteOptions::default() }).unwrap();
        let par = verify_corpus(&spec, &SuiteOptions { exec: Exec::Parallel, ..SuiteOptions::default() }).unwrap();
        assert_eq!(seq, par);
        assert!(seq.passed(), "{:?}", seq.counterexample);
    }

    #[test]
    fn checker_records_failures() {
        let mut c = Checker { violations: Vec::new() };
        c.check(true, "a", || unreachable!());
        c.check(false, "b", || "why".into());
        assert_eq!(c.violations, vec![Violation { check: "b".into(), detail: "why".into() }]);
    }
}
