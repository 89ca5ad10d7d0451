//! Certificates that a triangulated manifold is combinatorial, i.e. that
//! every link is a PL sphere.
//!
//! The small-link certificate checks every simplex σ of codimension k+1:
//! for k ≤ 2 the link is handed to a direct sphere recognizer; for k ≥ 3 it
//! must be an integral homology k-sphere with at most 3k vertices. A link
//! with too many vertices only leaves the criterion's range (inconclusive);
//! a link with the wrong homology refutes manifoldness (rejected).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{ComplexError, Error, Result};
use crate::homology::{euler_characteristic, reduced_homology, Coefficients};
use crate::simplex::Simplex;

fn require_dim(k: &SimplicialComplex, d: isize) -> Result<(), ComplexError> {
    if k.dim() != d {
        return Err(ComplexError::WrongDimension { expected: d, actual: k.dim() });
    }
    Ok(())
}

/// Connected 1-complex in which every vertex has exactly two edges.
pub fn recognize_circle(k: &SimplicialComplex) -> Result<bool, ComplexError> {
    require_dim(k, 1)?;
    if k.facets().iter().any(|f| f.dim() != 1) {
        return Ok(false);
    }
    Ok(k.is_connected() && k.adjacency().values().all(|n| n.len() == 2))
}

/// Closed connected 2-pseudomanifold whose vertex links are circles and
/// whose Euler characteristic is 2.
pub fn recognize_2sphere(k: &SimplicialComplex) -> Result<bool, ComplexError> {
    require_dim(k, 2)?;
    if !k.is_closed_pseudomanifold() || !k.is_connected() {
        return Ok(false);
    }
    for &v in k.vertices() {
        let lk = k.link(&Simplex::from_sorted(vec![v]))?;
        if lk.dim() != 1 || !recognize_circle(&lk)? {
            return Ok(false);
        }
    }
    Ok(euler_characteristic(k) == 2)
}

fn recognize_s0(k: &SimplicialComplex) -> bool {
    k.dim() == 0 && k.num_vertices() == 2
}

/// Link size allowed by the small-link criterion for a link of dimension k.
pub fn allowed_link_vertices(k: isize) -> Option<usize> {
    (k >= 3).then(|| 3 * k as usize)
}

/// Per-codimension statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimensionSummary {
    /// Codimension k+1 of the checked simplices.
    pub codimension: isize,
    /// Dimension k of their links.
    pub link_dim: isize,
    pub simplices_checked: usize,
    pub max_link_vertices: usize,
    /// `3k` for k ≥ 3; `None` where the direct recognizers apply.
    pub allowed_link_vertices: Option<usize>,
    pub links_passed: usize,
    pub size_violations: usize,
    pub link_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateVerdict {
    Certified,
    Inconclusive { witness: Vec<String>, link_vertices: usize, allowed: usize },
    Rejected { witness: Vec<String>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialityCertificate {
    pub dimension: isize,
    pub codimensions: Vec<CodimensionSummary>,
    pub verdict: CertificateVerdict,
    pub notes: Vec<String>,
}

impl CombinatorialityCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CertificateVerdict::Certified
    }
}

/// Result of checking one link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkCheck {
    Pass,
    TooLarge { allowed: usize },
    Fail(String),
}

/// Checks the link of σ against the criterion for its codimension.
pub fn check_link(k: &SimplicialComplex, sigma: &Simplex) -> Result<(isize, usize, LinkCheck)> {
    let lk = k.link(sigma)?;
    let kd = k.dim() - sigma.dim() - 1;
    let n = lk.num_vertices();
    if lk.dim() != kd {
        return Ok((kd, n, LinkCheck::Fail(format!("link has dimension {} instead of {kd}", lk.dim()))));
    }
    let verdict = match kd {
        0 if recognize_s0(&lk) => LinkCheck::Pass,
        0 => LinkCheck::Fail("link is not two points".into()),
        1 if recognize_circle(&lk)? => LinkCheck::Pass,
        1 => LinkCheck::Fail("link is not a circle".into()),
        2 if recognize_2sphere(&lk)? => LinkCheck::Pass,
        2 => LinkCheck::Fail("link is not a 2-sphere".into()),
        _ => {
            let h = reduced_homology(&lk, Coefficients::Integers)?;
            let allowed = 3 * kd as usize;
            if !h.is_sphere_like(kd) {
                LinkCheck::Fail(format!("link is not a homology {kd}-sphere: {h}"))
            } else if n > allowed {
                LinkCheck::TooLarge { allowed }
            } else {
                LinkCheck::Pass
            }
        }
    };
    Ok((kd, n, verdict))
}

/// Runs the small-link criterion over every nonempty simplex.
pub fn small_link_certificate(k: &SimplicialComplex) -> Result<CombinatorialityCertificate> {
    k.require_closed_pseudomanifold()?;
    let d = k.dim();
    let simplices: Vec<&Simplex> = k.all_simplices().filter(|s| !s.is_empty() && s.dim() < d).collect();
    let checks: Vec<(isize, usize, LinkCheck)> =
        simplices.par_iter().map(|s| check_link(k, s)).collect::<Result<_>>()?;

    let mut table: BTreeMap<isize, CodimensionSummary> = BTreeMap::new();
    let mut first_failure: Option<(usize, String)> = None;
    let mut first_oversize: Option<(usize, usize, usize)> = None;
    for (idx, (kd, n, check)) in checks.iter().enumerate() {
        let row = table.entry(*kd).or_insert_with(|| CodimensionSummary {
            codimension: kd + 1,
            link_dim: *kd,
            simplices_checked: 0,
            max_link_vertices: 0,
            allowed_link_vertices: allowed_link_vertices(*kd),
            links_passed: 0,
            size_violations: 0,
            link_failures: 0,
        });
        row.simplices_checked += 1;
        row.max_link_vertices = row.max_link_vertices.max(*n);
        match check {
            LinkCheck::Pass => row.links_passed += 1,
            LinkCheck::TooLarge { allowed } => {
                row.size_violations += 1;
                first_oversize.get_or_insert((idx, *n, *allowed));
            }
            LinkCheck::Fail(why) => {
                row.link_failures += 1;
                first_failure.get_or_insert((idx, why.clone()));
            }
        }
    }
    let verdict = if let Some((idx, reason)) = first_failure {
        CertificateVerdict::Rejected { witness: k.labels_of(simplices[idx]), reason }
    } else if let Some((idx, n, allowed)) = first_oversize {
        CertificateVerdict::Inconclusive { witness: k.labels_of(simplices[idx]), link_vertices: n, allowed }
    } else {
        CertificateVerdict::Certified
    };
    let mut notes = Vec::new();
    if d >= 1 {
        notes.push("links of codimension 1-3 checked with direct recognizers".to_string());
    }
    Ok(CombinatorialityCertificate {
        dimension: d,
        codimensions: table.into_values().rev().collect(),
        verdict,
        notes,
    })
}

/// A bistellar move: σ * ∂τ is replaced by ∂σ * τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BistellarMove {
    pub sigma: Simplex,
    pub tau: Simplex,
}

impl BistellarMove {
    /// Change in facet count, 2·dim σ − d.
    pub fn facet_delta(&self, d: isize) -> isize {
        2 * self.sigma.dim() - d
    }
}

/// All moves available in a closed pseudomanifold, excluding the stellar
/// subdivision of a facet (which would introduce a vertex).
pub fn bistellar_moves(k: &SimplicialComplex) -> Vec<BistellarMove> {
    let d = k.dim();
    let mut moves = Vec::new();
    for j in 0..d {
        for sigma in k.faces(j).unwrap() {
            let lk = k.link(sigma).unwrap();
            let want = (d - j + 1) as usize;
            if lk.num_vertices() != want || lk.facets().len() != want || lk.dim() != d - j - 1 {
                continue;
            }
            let tau = Simplex::from_sorted(lk.vertices().to_vec());
            if !k.contains(&tau) {
                moves.push(BistellarMove { sigma: sigma.clone(), tau });
            }
        }
    }
    moves
}

pub fn apply_move(k: &SimplicialComplex, mv: &BistellarMove) -> SimplicialComplex {
    let removed: Vec<Simplex> =
        mv.tau.vertices().iter().map(|&t| mv.sigma.union(&mv.tau.restrict(|x| x != t))).collect();
    let mut facets: Vec<Simplex> = k.facets().iter().filter(|f| !removed.contains(f)).cloned().collect();
    facets.extend(mv.sigma.vertices().iter().map(|&s| mv.tau.union(&mv.sigma.restrict(|x| x != s))));
    SimplicialComplex::from_simplices(k.labels().clone(), facets)
}

fn is_boundary_simplex(k: &SimplicialComplex) -> bool {
    let n = (k.dim() + 2) as usize;
    k.num_vertices() == n && k.facets().len() == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum BistellarOutcome {
    ReducedToBoundarySimplex { moves: usize, restarts: usize },
    BudgetExhausted { moves: usize, best_vertex_count: usize },
}

/// Greedy bistellar search with seeded random restarts. Vertex removals
/// are taken whenever available; otherwise a random facet-reducing or
/// neutral move is made, with an occasional facet-increasing move.
/// Reaching ∂Δ^{d+1} proves the input is a PL sphere.
pub fn bistellar_sphere_heuristic(k: &SimplicialComplex, move_budget: usize) -> Result<BistellarOutcome> {
    bistellar_search(k, move_budget, |_| {})
}

/// As [`bistellar_sphere_heuristic`], calling `observe` after every move.
pub fn bistellar_search(
    k: &SimplicialComplex,
    move_budget: usize,
    mut observe: impl FnMut(&SimplicialComplex),
) -> Result<BistellarOutcome> {
    k.require_closed_pseudomanifold()?;
    let d = k.dim();
    if !reduced_homology(k, Coefficients::Integers)?.is_sphere_like(d) {
        return Err(Error::Hypothesis("bistellar search needs sphere homology".into()));
    }
    let stall_limit = 20 * k.num_vertices().max(4);
    let mut used = 0;
    let mut best = k.num_vertices();
    let mut restart = 0;
    while used < move_budget {
        let mut rng = ChaCha8Rng::seed_from_u64(restart as u64);
        let mut cur = k.clone();
        let mut last_tau: Option<Simplex> = None;
        let mut since_progress = 0;
        loop {
            if is_boundary_simplex(&cur) {
                return Ok(BistellarOutcome::ReducedToBoundarySimplex { moves: used, restarts: restart });
            }
            if used >= move_budget || since_progress > stall_limit {
                break;
            }
            let moves = bistellar_moves(&cur);
            let pick = if let Some(m) = moves.iter().find(|m| m.sigma.len() == 1) {
                m.clone()
            } else {
                let fresh: Vec<&BistellarMove> =
                    moves.iter().filter(|m| last_tau.as_ref() != Some(&m.sigma)).collect();
                let (down, up): (Vec<&BistellarMove>, Vec<&BistellarMove>) =
                    fresh.iter().partition(|m| m.facet_delta(d) <= 0);
                let climb = !up.is_empty() && (down.is_empty() || rng.gen_bool(0.1));
                let pool = if climb { &up } else { &down };
                if pool.is_empty() {
                    break;
                }
                pool[rng.gen_range(0..pool.len())].clone()
            };
            let before = cur.num_vertices();
            cur = apply_move(&cur, &pick);
            observe(&cur);
            used += 1;
            last_tau = Some(pick.tau);
            if cur.num_vertices() < before {
                since_progress = 0;
                best = best.min(cur.num_vertices());
            } else {
                since_progress += 1;
            }
        }
        restart += 1;
    }
    Ok(BistellarOutcome::BudgetExhausted { moves: used, best_vertex_count: best })
}
