//! Executable checks of structural facts about triangulations: homology of
//! the complement of a facet, Alexander duality for complementary full
//! subcomplexes of a sphere, and local homology through links.
//!
//! Groups are compared by their invariants (Betti number and torsion
//! coefficients); no maps are constructed.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatoriality::{self, CertificateVerdict};
use crate::complex::{Orientability, SimplicialComplex, VertexSet};
use crate::error::{ComplexError, Error, Result};
use crate::homology::{
    cohomology, homology, reduced_cohomology, reduced_homology, Coefficients, GroupInvariants, HomologyProfile,
    Variance,
};
use crate::simplex::Simplex;

/// One compared pair of groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub variance: Variance,
    pub left_dim: isize,
    pub right_dim: isize,
    pub ring: Coefficients,
    pub left: GroupInvariants,
    pub right: GroupInvariants,
    pub equal: bool,
    /// A mismatch here is reported but does not fail the check.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub comparisons: Vec<Comparison>,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(check: &'static str, comparisons: Vec<Comparison>, notes: Vec<String>) -> Self {
        let passed = comparisons.iter().all(|c| c.equal || c.flagged);
        CheckReport { check, comparisons, passed, notes }
    }
}

/// If `v` spans a facet of the closed pseudomanifold
/// `k`, the full subcomplex on the remaining vertices has the same
/// (co)homology as `k` below the top dimension. For non-orientable `k` the
/// homology comparison in dimension d−1 uses ℤ/2; the integral comparisons
/// in that dimension are kept in the report but only flagged.
pub fn complement_homology_check(k: &SimplicialComplex, v: &VertexSet) -> Result<CheckReport> {
    k.require_closed_pseudomanifold()?;
    let d = k.dim();
    let spanned = Simplex::new(v.ids().iter().copied()).map_err(|e| Error::Hypothesis(e.to_string()))?;
    if spanned.dim() != d || !k.contains(&spanned) {
        return Err(Error::Hypothesis(format!(
            "{} does not span a {d}-simplex of the complex",
            k.display_simplex(&spanned)
        )));
    }
    let complement = k.full_subcomplex(&v.complement_in(k))?;
    let orientable = k.orientability()? == Orientability::Orientable;
    let z = Coefficients::Integers;
    let z2 = Coefficients::Mod(2);

    let (hk, hc) = (homology(k, z)?, homology(&complement, z)?);
    let (ck, cc) = (cohomology(k, z)?, cohomology(&complement, z)?);
    let (hk2, hc2, ck2, cc2) = if orientable {
        (None, None, None, None)
    } else {
        (
            Some(homology(k, z2)?),
            Some(homology(&complement, z2)?),
            Some(cohomology(k, z2)?),
            Some(cohomology(&complement, z2)?),
        )
    };

    let mut rows = Vec::new();
    let mut push = |a: &HomologyProfile, b: &HomologyProfile, i: isize, flagged: bool| {
        let (left, right) = (a.group(i), b.group(i));
        rows.push(Comparison {
            variance: a.variance,
            left_dim: i,
            right_dim: i,
            ring: a.ring,
            equal: left == right,
            left,
            right,
            flagged,
        });
    };
    for i in 0..d {
        let caveat = !orientable && i == d - 1;
        if caveat {
            push(&hk, &hc, i, true);
            push(hk2.as_ref().unwrap(), hc2.as_ref().unwrap(), i, false);
            push(&ck, &cc, i, true);
            push(ck2.as_ref().unwrap(), cc2.as_ref().unwrap(), i, true);
        } else {
            push(&hk, &hc, i, false);
            push(&ck, &cc, i, false);
        }
    }
    let mut notes = vec![format!(
        "complement spans {} vertices, f-vector {:?}",
        complement.num_vertices(),
        complement.f_vector()
    )];
    if !orientable {
        notes.push(format!("non-orientable: dimension {} compared with Z_2 coefficients", d - 1));
    }
    Ok(CheckReport::new("complement-homology", rows, notes))
}

/// How a sphere was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereEvidence {
    /// Dimension ≤ 2 recognizer.
    Recognizer,
    /// Small-link certificate together with integral sphere homology.
    SmallLinkCertificate,
    /// Bistellar reduction to the boundary of a simplex.
    Bistellar,
}

/// A complex that has been certified to triangulate a sphere (or, for the
/// small-link route, a combinatorial integral homology sphere, which
/// suffices for duality).
#[derive(Clone, Debug)]
pub struct CertifiedSphere {
    complex: SimplicialComplex,
    evidence: SphereEvidence,
}

impl CertifiedSphere {
    /// Default bistellar budget used when the small-link route is
    /// inconclusive.
    pub const BISTELLAR_BUDGET: usize = 2_000;

    pub fn certify(k: &SimplicialComplex) -> Result<Self> {
        let d = k.dim();
        let fail = |why: String| Error::Unsupported(format!("not a certified sphere: {why}"));
        if !k.is_closed_pseudomanifold() {
            return Err(fail("not a closed pseudomanifold".into()));
        }
        if !reduced_homology(k, Coefficients::Integers)?.is_sphere_like(d) {
            return Err(fail("homology differs from a sphere".into()));
        }
        let evidence = match d {
            1 if combinatoriality::recognize_circle(k)? => SphereEvidence::Recognizer,
            2 if combinatoriality::recognize_2sphere(k)? => SphereEvidence::Recognizer,
            1 | 2 => return Err(fail("low-dimensional recognizer rejected it".into())),
            _ => match combinatoriality::small_link_certificate(k)?.verdict {
                CertificateVerdict::Certified => SphereEvidence::SmallLinkCertificate,
                CertificateVerdict::Rejected { .. } => return Err(fail("link check rejected it".into())),
                CertificateVerdict::Inconclusive { .. } => {
                    match combinatoriality::bistellar_sphere_heuristic(k, Self::BISTELLAR_BUDGET)? {
                        combinatoriality::BistellarOutcome::ReducedToBoundarySimplex { .. } => {
                            SphereEvidence::Bistellar
                        }
                        combinatoriality::BistellarOutcome::BudgetExhausted { .. } => {
                            return Err(fail("no certificate within budget".into()))
                        }
                    }
                }
            },
        };
        Ok(CertifiedSphere { complex: k.clone(), evidence })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn evidence(&self) -> SphereEvidence {
        self.evidence
    }
}

/// For an n-sphere S and a vertex partition V ⊔ V′, compares
/// H̃_i(S(V)) with H̃^{n−i−1}(S(V′)) for every i from −1 to n.
pub fn alexander_duality_check(s: &CertifiedSphere, v: &VertexSet) -> Result<CheckReport> {
    let k = s.complex();
    let n = k.dim();
    let left = k.full_subcomplex(v)?;
    let right = k.full_subcomplex(&v.complement_in(k))?;
    let z = Coefficients::Integers;
    let hl = reduced_homology(&left, z)?;
    let cr = reduced_cohomology(&right, z)?;
    let rows = (-1..=n)
        .map(|i| {
            let (a, b) = (hl.group(i), cr.group(n - i - 1));
            Comparison {
                variance: Variance::Homology,
                left_dim: i,
                right_dim: n - i - 1,
                ring: z,
                equal: a == b,
                left: a,
                right: b,
                flagged: false,
            }
        })
        .collect();
    let notes = vec![format!(
        "|V| = {}, |V'| = {}, sphere evidence: {:?}",
        v.len(),
        k.num_vertices() - v.len(),
        s.evidence()
    )];
    Ok(CheckReport::new("alexander-duality", rows, notes))
}

/// Homology of the link of one simplex, which must be a homology k-sphere
/// when σ has codimension k+1 in a manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkHomologyReport {
    pub simplex: Vec<String>,
    /// k, where σ has codimension k+1.
    pub link_dim: isize,
    pub link_vertices: usize,
    pub link_f_vector: Vec<usize>,
    pub reduced_homology: HomologyProfile,
    pub homology_sphere: bool,
}

fn link_report(k: &SimplicialComplex, sigma: &Simplex) -> Result<LinkHomologyReport> {
    if sigma.is_empty() {
        return Err(ComplexError::MissingSimplex("[] (empty simplex)".into()).into());
    }
    let lk = k.link(sigma)?;
    let link_dim = k.dim() - sigma.dim() - 1;
    let h = reduced_homology(&lk, Coefficients::Integers)?;
    Ok(LinkHomologyReport {
        simplex: k.labels_of(sigma),
        link_dim,
        link_vertices: lk.num_vertices(),
        link_f_vector: lk.f_vector(),
        homology_sphere: h.is_sphere_like(link_dim),
        reduced_homology: h,
    })
}

pub fn local_homology_check(k: &SimplicialComplex, sigma: &Simplex) -> Result<LinkHomologyReport> {
    k.require_closed_pseudomanifold()?;
    link_report(k, sigma)
}

/// Runs [`local_homology_check`] on every nonempty simplex, in parallel.
pub fn local_homology_sweep(k: &SimplicialComplex) -> Result<Vec<LinkHomologyReport>> {
    k.require_closed_pseudomanifold()?;
    let simplices: Vec<&Simplex> = k.all_simplices().collect();
    simplices.into_par_iter().map(|s| link_report(k, s)).collect()
}
