//! Lower bounds on the number of vertices of triangulated manifolds, and
//! vertex-count sphere recognition.
//!
//! The formula functions are pure integer arithmetic. [`analyze`] runs the
//! homology, fundamental group and combinatoriality machinery on a complex
//! and evaluates every applicable bound, recording which hypotheses were
//! verified, which were asserted by the user and which remain conditional.

use serde::Serialize;

use crate::combinatoriality::{small_link_certificate, CertificateVerdict};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{is_homology_sphere, reduced_homology, Coefficients};
use crate::io::{Assertions, Pi1Assertion};
use crate::pi1::{edge_path_presentation, freeness_verdict, FreenessVerdict, QuotientSearch};

/// Exact binomial coefficient; saturates at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = match acc.checked_mul((n - j) as u128) {
            Some(v) => v / (j as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Minimal n with C(n−1, i+1) ≥ r: the fewest vertices of a complex
/// homotopy equivalent to a wedge of r copies of S^i.
pub fn wedge_covering_type(r: u64, i: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::Degenerate("r = 0 describes a contractible space (covering type 1)".into()));
    }
    if i == 0 {
        return Err(Error::Hypothesis("sphere dimension i must be at least 1".into()));
    }
    let mut n = 1;
    while binomial(n - 1, i + 1) < r as u128 {
        n += 1;
    }
    Ok(n)
}

/// Covering-type lower bound for a space whose top nonvanishing homology
/// sits in dimension k: k+2 if the homology is that of S^k, otherwise k+3.
pub fn ct_lower_bound_from_hdim(k: u64, homology_is_spherical: bool) -> u64 {
    if homology_is_spherical {
        k + 2
    } else {
        k + 3
    }
}

/// 1 + d + cat(cat−1)/2, returned without any floor.
pub fn cat_vertex_bound(d: u64, cat: u64) -> u64 {
    1 + d + cat * cat.saturating_sub(1) / 2
}

/// Fewest vertices of any triangulated closed d-manifold.
pub fn vertex_floor(d: u64) -> u64 {
    d + 2
}

pub const ADAMS_DIMENSIONS: [u64; 4] = [2, 4, 8, 16];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundTag {
    /// Simply connected, first homology in the middle dimension.
    SimplyConnectedMiddle,
    /// Simply connected, first homology below the middle dimension.
    SimplyConnectedLow,
    /// Non-free fundamental group: 3d+1.
    NonFreePi1,
    /// Fewer than 3d+1 vertices forces a free fundamental group.
    NonFreePi1Contrapositive,
    /// Non-simply-connected baseline 2d+3.
    NonSimplyConnected,
    /// Integral homology spheres with at most 3d vertices.
    HomologySphere,
    /// Z_p homology spheres with at most 3d vertices.
    ModPHomologySphere,
    /// d+2.
    VertexFloor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    /// A numeric input of a formula.
    Parameter,
    /// Checked by computation on the complex.
    Verified,
    /// Supplied by the user and not checked.
    Asserted,
    /// Neither verified nor asserted; the report holds only if it is true.
    Conditional,
    /// Known to be false.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub value: String,
    pub status: HypothesisStatus,
}

impl Hypothesis {
    fn new(name: &str, value: impl ToString, status: HypothesisStatus) -> Self {
        Hypothesis { name: name.into(), value: value.to_string(), status }
    }

    fn param(name: &str, value: impl ToString) -> Self {
        Self::new(name, value, HypothesisStatus::Parameter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub tag: BoundTag,
    pub hypotheses: Vec<Hypothesis>,
    /// Weakest status among the hypotheses.
    pub status: HypothesisStatus,
    /// Lower bound on the vertex count, if the report carries one.
    pub bound: Option<u64>,
    /// Bound after a correction the raw formula does not include.
    pub adjusted_bound: Option<u64>,
    /// Weaker classical bound shown for contrast.
    pub baseline: Option<u64>,
    /// Vertex count up to which a simply connected manifold is a sphere.
    pub sphere_threshold: Option<u64>,
    pub verdict: String,
    pub flags: Vec<String>,
    pub applicable: bool,
    /// Set when the bound exceeds the actual vertex count of the complex
    /// while all hypotheses hold or are assumed.
    pub contradiction: Option<String>,
}

impl BoundReport {
    fn new(tag: BoundTag, hypotheses: Vec<Hypothesis>) -> Self {
        let status = hypotheses.iter().map(|h| h.status).max().unwrap_or(HypothesisStatus::Parameter);
        BoundReport {
            tag,
            hypotheses,
            status,
            bound: None,
            adjusted_bound: None,
            baseline: None,
            sphere_threshold: None,
            verdict: String::new(),
            flags: Vec::new(),
            applicable: true,
            contradiction: None,
        }
    }

    fn push(&mut self, h: Hypothesis) {
        self.status = self.status.max(h.status);
        self.hypotheses.push(h);
    }

    /// Raises the bound to d+2 if it is lower, flagging the clamp.
    fn clamp(mut self, d: u64) -> Self {
        let floor = vertex_floor(d);
        for b in [&mut self.bound, &mut self.adjusted_bound].into_iter().flatten() {
            if *b < floor {
                self.flags.push(format!("floor d+2 = {floor} binds (raw value {b})"));
                *b = floor;
            }
        }
        self
    }

    /// The strongest bound the report justifies.
    pub fn effective_bound(&self) -> Option<u64> {
        self.adjusted_bound.or(self.bound)
    }
}

/// Vertex bound for simply connected closed combinatorial d-manifolds
/// whose first nonvanishing reduced homology is in dimension i with the
/// given rank.
pub fn simply_connected_bound(d: u64, i: u64, rank: u64) -> Result<BoundReport> {
    if d < 2 {
        return Err(Error::Hypothesis(format!("d = {d} < 2")));
    }
    if i < 1 || 2 * i > d {
        return Err(Error::Hypothesis(format!("need 1 <= i <= d/2, got i = {i}, d = {d}")));
    }
    if rank < 1 {
        return Err(Error::Hypothesis("rank of H_i must be at least 1".into()));
    }
    let threshold = 3 * d / 2 + 2;
    let hyps = vec![
        Hypothesis::param("d", d),
        Hypothesis::param("i", i),
        Hypothesis::param("rank H_i", rank),
        Hypothesis::param("simply connected", true),
    ];
    let mut r = if 2 * i == d {
        let mut k = 1;
        while binomial(i + k, i + 1) < rank as u128 {
            k += 1;
        }
        let mut r = BoundReport::new(BoundTag::SimplyConnectedMiddle, hyps);
        r.hypotheses.push(Hypothesis::param("k", k));
        let bound = 3 * d / 2 + k + 2;
        r.bound = Some(bound);
        r.verdict = format!("at least {bound} vertices (3d/2 + k + 2 with k = {k})");
        if k == 1 && !ADAMS_DIMENSIONS.contains(&d) {
            let adjusted = 3 * d / 2 + 4;
            r.adjusted_bound = Some(adjusted);
            r.flags.push(format!(
                "k = 1 is only possible for d in {{2,4,8,16}}; adjusted bound with k = 2 is {adjusted}"
            ));
            r.verdict = format!("at least {adjusted} vertices (raw formula {bound}, k raised to 2 since d = {d} is not 2, 4, 8 or 16)");
        }
        r
    } else {
        let mut r = BoundReport::new(BoundTag::SimplyConnectedLow, hyps);
        let bound = 2 * d - i + 4;
        r.bound = Some(bound);
        r.verdict = format!("at least {bound} vertices (2d - i + 4)");
        r
    };
    r.sphere_threshold = Some(threshold);
    Ok(r.clamp(d))
}

/// At most ⌊3d/2⌋+2 vertices: a simply connected closed combinatorial
/// manifold is a sphere.
pub fn sphere_threshold(d: u64) -> u64 {
    3 * d / 2 + 2
}

/// Vertex bound for closed d-manifolds with non-free fundamental group.
pub fn nonfree_pi1_bound(d: u64) -> Result<BoundReport> {
    if d < 3 {
        return Err(Error::Hypothesis(format!("requires d >= 3, got d = {d}")));
    }
    let mut r = BoundReport::new(
        BoundTag::NonFreePi1,
        vec![Hypothesis::param("d", d), Hypothesis::param("pi1", "not free")],
    );
    r.bound = Some(3 * d + 1);
    r.baseline = Some(2 * d + 3);
    r.verdict = format!("at least {} vertices (3d + 1)", 3 * d + 1);
    r.flags.push(format!(
        "baseline 2d+3 = {} holds for every non-simply-connected d-manifold and is attained by sphere bundles over the circle",
        2 * d + 3
    ));
    Ok(r.clamp(d))
}

/// Decides whether a homology sphere with few vertices is a PL sphere.
pub fn homology_sphere_verdict(k: &SimplicialComplex, ring: Coefficients) -> Result<BoundReport> {
    k.require_closed_pseudomanifold()?;
    let d = k.dim();
    let n = k.num_vertices() as u64;
    let tag = match ring {
        Coefficients::Integers => BoundTag::HomologySphere,
        Coefficients::Mod(_) => BoundTag::ModPHomologySphere,
    };
    let is_sphere = is_homology_sphere(k, d, ring)?;
    let status = if is_sphere { HypothesisStatus::Verified } else { HypothesisStatus::Failed };
    let mut r = BoundReport::new(
        tag,
        vec![
            Hypothesis::param("d", d),
            Hypothesis::param("vertices", n),
            Hypothesis::new(&format!("{ring}-homology sphere"), is_sphere, status),
        ],
    );
    let du = d as u64;
    if !is_sphere {
        r.applicable = false;
        r.verdict = format!("no verdict: not a {ring}-homology {d}-sphere");
        return Ok(r);
    }
    if d <= 2 {
        r.verdict = format!("PL-sphere (every {ring}-homology sphere of dimension {d} is one)");
        return Ok(r);
    }
    r.sphere_threshold = Some(3 * du);
    if n > 3 * du {
        r.verdict = format!("no verdict: {n} vertices exceeds 3d = {}", 3 * du);
        return Ok(r.clamp(du));
    }
    let cert = small_link_certificate(k)?;
    match cert.verdict {
        CertificateVerdict::Certified => {
            r.push(Hypothesis::new("combinatorial", true, HypothesisStatus::Verified));
            r.verdict = format!("PL-sphere ({n} <= 3d = {} vertices)", 3 * du);
        }
        CertificateVerdict::Inconclusive { .. } => {
            r.push(Hypothesis::new("combinatorial", "not certified", HypothesisStatus::Conditional));
            r.verdict = format!("PL-sphere if the triangulation is combinatorial ({n} <= 3d = {})", 3 * du);
        }
        CertificateVerdict::Rejected { reason, .. } => {
            r.push(Hypothesis::new("combinatorial", false, HypothesisStatus::Failed));
            r.applicable = false;
            r.verdict = format!("no verdict: not a combinatorial manifold ({reason})");
        }
    }
    Ok(r.clamp(du))
}

/// What is known about π₁ and where the knowledge came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Status {
    pub verdict: FreenessVerdict,
    pub trivial: Option<bool>,
    pub free: Option<bool>,
    pub status: HypothesisStatus,
    pub conflicts: Vec<String>,
}

fn pi1_status(k: &SimplicialComplex, assertions: &Assertions) -> Result<Pi1Status> {
    let verdict = freeness_verdict(&edge_path_presentation(k)?, QuotientSearch::default());
    let (mut trivial, mut free, mut status) = match &verdict {
        FreenessVerdict::Free { rank } => (Some(*rank == 0), Some(true), HypothesisStatus::Verified),
        FreenessVerdict::NotFree { .. } => (Some(false), Some(false), HypothesisStatus::Verified),
        FreenessVerdict::Unknown { .. } => (None, None, HypothesisStatus::Conditional),
    };
    let mut conflicts = Vec::new();
    let mut assume = |name: &str, slot: &mut Option<bool>, value: bool, status: &mut HypothesisStatus| match *slot {
        Some(v) if v != value => {
            conflicts.push(format!("assertion {name}={value} contradicts the computed verdict {verdict}"))
        }
        Some(_) => {}
        None => {
            *slot = Some(value);
            *status = HypothesisStatus::Asserted;
        }
    };
    match assertions.pi1 {
        Some(Pi1Assertion::NotFree) => {
            assume("pi1 free", &mut free, false, &mut status);
            assume("pi1 trivial", &mut trivial, false, &mut status);
        }
        Some(Pi1Assertion::Free) => assume("pi1 free", &mut free, true, &mut status),
        Some(Pi1Assertion::Trivial) => {
            assume("pi1 trivial", &mut trivial, true, &mut status);
            assume("pi1 free", &mut free, true, &mut status);
        }
        None => {}
    }
    if let Some(sc) = assertions.simply_connected {
        assume("simply-connected", &mut trivial, sc, &mut status);
        if sc {
            assume("pi1 free", &mut free, true, &mut status);
        }
    }
    Ok(Pi1Status { verdict, trivial, free, status, conflicts })
}

fn check_against(r: &mut BoundReport, n: u64) {
    if !r.applicable || r.status == HypothesisStatus::Failed {
        return;
    }
    if let Some(b) = r.effective_bound() {
        if b > n {
            r.contradiction = Some(format!(
                "bound {b} exceeds the {n} vertices present, so some hypothesis ({:?}) must be false",
                r.status
            ));
        }
    }
}

/// Everything [`analyze`] found, besides the reports themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub dimension: isize,
    pub vertices: usize,
    pub pi1: Pi1Status,
    pub combinatorial: HypothesisStatus,
    pub reports: Vec<BoundReport>,
}

/// Runs homology, the π₁ verdict and the combinatoriality certificate on a
/// closed pseudomanifold, then evaluates every bound.
pub fn analyze(k: &SimplicialComplex, assertions: &Assertions) -> Result<Analysis> {
    k.require_closed_pseudomanifold()?;
    let d = k.dim();
    let du = d as u64;
    let n = k.num_vertices() as u64;
    let h = reduced_homology(k, Coefficients::Integers)?;
    let pi1 = pi1_status(k, assertions)?;
    let combinatorial = match small_link_certificate(k)?.verdict {
        CertificateVerdict::Certified => HypothesisStatus::Verified,
        CertificateVerdict::Inconclusive { .. } => HypothesisStatus::Conditional,
        CertificateVerdict::Rejected { .. } => HypothesisStatus::Failed,
    };
    let manifold = Hypothesis::new(
        "combinatorial manifold",
        combinatorial != HypothesisStatus::Failed,
        combinatorial,
    );
    let pi1_hyp = |name: &str, holds: Option<bool>, want: bool| -> Hypothesis {
        let status = match holds {
            Some(v) if v == want => pi1.status,
            Some(_) => HypothesisStatus::Failed,
            None => HypothesisStatus::Conditional,
        };
        Hypothesis::new(name, want, status)
    };
    let mut reports = Vec::new();

    let mut floor = BoundReport::new(BoundTag::VertexFloor, vec![Hypothesis::param("d", d), manifold.clone()]);
    floor.bound = Some(vertex_floor(du));
    floor.verdict = format!("at least d+2 = {} vertices", vertex_floor(du));
    reports.push(floor);

    // fundamental group bounds
    if d >= 3 {
        let mut base = BoundReport::new(
            BoundTag::NonSimplyConnected,
            vec![Hypothesis::param("d", d), manifold.clone(), pi1_hyp("pi1 nontrivial", pi1.trivial.map(|t| !t), true)],
        );
        base.bound = Some(2 * du + 3);
        base.verdict = format!("at least 2d+3 = {} vertices if not simply connected", 2 * du + 3);
        base.applicable = pi1.trivial == Some(false);
        reports.push(base);

        let mut nf = nonfree_pi1_bound(du)?;
        nf.hypotheses.retain(|h| h.name != "pi1");
        nf.status = HypothesisStatus::Parameter;
        nf.push(manifold.clone());
        nf.push(pi1_hyp("pi1 not free", pi1.free.map(|f| !f), true));
        nf.applicable = pi1.free == Some(false);
        if pi1.free.is_none() {
            nf.flags.push("suppressed: pi1 freeness unknown and not asserted".into());
        }
        reports.push(nf);

        if n < 3 * du + 1 {
            let mut c = BoundReport::new(
                BoundTag::NonFreePi1Contrapositive,
                vec![Hypothesis::param("d", d), Hypothesis::param("vertices", n), manifold.clone()],
            );
            c.baseline = Some(3 * du + 1);
            c.verdict = format!("pi1 must be free: {n} vertices < 3d+1 = {}", 3 * du + 1);
            match pi1.free {
                Some(false) => c.contradiction = Some(format!(
                    "pi1 is not free ({}), so the complex cannot be a combinatorial {d}-manifold",
                    pi1.verdict
                )),
                Some(true) => c.flags.push(format!("consistent with computed verdict {}", pi1.verdict)),
                None => {}
            }
            reports.push(c);
        }
    } else {
        let mut nf = BoundReport::new(BoundTag::NonFreePi1, vec![Hypothesis::param("d", d)]);
        nf.applicable = false;
        nf.verdict = "not applicable: requires d >= 3".into();
        let h1 = h.group(1);
        if !h1.torsion.is_empty() {
            nf.flags.push(format!("H_1 has torsion ({h1})"));
        }
        reports.push(nf);
    }

    // simply connected bounds
    if d >= 2 {
        let sc = pi1_hyp("simply connected", pi1.trivial, true);
        let first = (1..=d / 2).find(|&i| !h.group(i).is_trivial());
        match first {
            Some(i) if h.betti(i) >= 1 => {
                let mut r = simply_connected_bound(du, i as u64, h.betti(i) as u64)?;
                r.hypotheses.retain(|x| x.name != "simply connected");
                r.push(manifold.clone());
                if sc.status == HypothesisStatus::Failed {
                    r.applicable = false;
                }
                r.push(sc);
                reports.push(r);
            }
            Some(i) => {
                let mut r = BoundReport::new(
                    if 2 * i == d { BoundTag::SimplyConnectedMiddle } else { BoundTag::SimplyConnectedLow },
                    vec![Hypothesis::param("d", d), Hypothesis::param("i", i), manifold.clone(), sc],
                );
                r.applicable = false;
                r.verdict = format!("not evaluated: H_{i} = {} has rank 0", h.group(i));
                reports.push(r);
            }
            None => {
                let mut r = BoundReport::new(
                    BoundTag::SimplyConnectedLow,
                    vec![Hypothesis::param("d", d), manifold.clone(), sc],
                );
                r.sphere_threshold = Some(sphere_threshold(du));
                r.applicable = false;
                r.verdict = "reduced homology vanishes up to d/2; a simply connected such manifold is a sphere".into();
                reports.push(r);
            }
        }
    }

    // homology sphere verdicts
    for ring in [Coefficients::Integers, Coefficients::Mod(2), Coefficients::Mod(3)] {
        reports.push(homology_sphere_verdict(k, ring)?);
    }

    for r in &mut reports {
        if r.status == HypothesisStatus::Failed {
            r.applicable = false;
        }
        check_against(r, n);
    }
    Ok(Analysis { dimension: d, vertices: n as usize, pi1, combinatorial, reports })
}
