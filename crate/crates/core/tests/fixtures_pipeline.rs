use trikit::bounds::{analyze, HypothesisStatus};
use trikit::combinatoriality::{bistellar_sphere_heuristic, small_link_certificate, BistellarOutcome};
use trikit::fixtures::{self, boundary_simplex, cp2_9, cross_polytope, cyclic_polytope, rp2_6, torus_7, FixtureParams};
use trikit::homology::{homology, reduced_homology};
use trikit::io::{parse_assertions, parse_facets, write_facets, Assertions};
use trikit::verify::{local_homology_sweep, CertifiedSphere, SphereEvidence};
use trikit::{Coefficients, GroupInvariants, Orientability, SimplicialComplex};

fn valid_fixtures() -> Vec<(String, SimplicialComplex)> {
    let mut v = Vec::new();
    for d in 2..=5 {
        v.push((format!("boundary_simplex {d}"), boundary_simplex(d).unwrap()));
        v.push((format!("cross_polytope {d}"), cross_polytope(d).unwrap()));
    }
    for n in [7, 8, 9, 10] {
        v.push((format!("C({n},4)"), cyclic_polytope(n, 4).unwrap()));
    }
    v.push(("rp2_6".into(), rp2_6()));
    v.push(("torus_7".into(), torus_7()));
    v.push(("cp2_9".into(), cp2_9()));
    v
}

#[test]
fn analyze_is_consistent_on_valid_fixtures() {
    for (name, k) in valid_fixtures() {
        let a = analyze(&k, &Assertions::default()).unwrap();
        assert_eq!(a.combinatorial, HypothesisStatus::Verified, "{name}");
        for r in &a.reports {
            assert!(r.contradiction.is_none(), "{name}: {r:#?}");
            assert!(r.bound.is_none_or(|b| b >= k.dim() as u64 + 2), "{name}");
            if r.applicable && r.status <= HypothesisStatus::Verified {
                assert!(r.effective_bound().is_none_or(|b| b <= a.vertices as u64), "{name}: {r:#?}");
            }
        }
    }
}

#[test]
fn cp2_homology_and_links() {
    let k = cp2_9();
    assert_eq!(k.f_vector(), vec![9, 36, 84, 90, 36]);
    let h = homology(&k, Coefficients::Integers).unwrap();
    let want: Vec<GroupInvariants> = (0..=4).map(|i| GroupInvariants::free(usize::from(i % 2 == 0))).collect();
    assert_eq!(h.groups, want);
    assert_eq!(k.orientability().unwrap(), Orientability::Orientable);
    assert!(local_homology_sweep(&k).unwrap().iter().all(|r| r.homology_sphere));
    assert!(small_link_certificate(&k).unwrap().is_certified());
    // simply connected with H_2 = Z of rank one in the middle dimension: 3d/2 + 3 = 9 vertices
    let a = analyze(&k, &Assertions::default()).unwrap();
    assert_eq!(a.pi1.trivial, Some(true));
    let middle = a.reports.iter().find(|r| r.tag == trikit::bounds::BoundTag::SimplyConnectedMiddle).unwrap();
    assert_eq!(middle.bound, Some(9));
    assert!(middle.applicable);
    assert_eq!(middle.status, HypothesisStatus::Verified);
}

#[test]
fn suspended_projective_plane_is_flagged_as_non_manifold() {
    // the suspension kills pi1 and moves the torsion to H_2; links at the poles are RP2
    let s0 = SimplicialComplex::from_facets([["n"], ["s"]]).unwrap();
    let k = s0.join(&rp2_6()).unwrap();
    let a = analyze(&k, &Assertions::default()).unwrap();
    assert_eq!(a.combinatorial, HypothesisStatus::Failed);
    assert_eq!(a.pi1.trivial, Some(true));
    let h = homology(&k, Coefficients::Integers).unwrap();
    assert_eq!(h.group(2).to_string(), "Z_2");
    for r in &a.reports {
        assert!(!r.applicable || r.tag == trikit::bounds::BoundTag::VertexFloor || r.status == HypothesisStatus::Parameter, "{r:#?}");
    }
}

#[test]
fn user_assertions_are_marked() {
    let k = torus_7();
    let a = analyze(&k, &parse_assertions("pi1=not-free\n").unwrap()).unwrap();
    assert_eq!(a.pi1.status, HypothesisStatus::Asserted);
    assert!(a.pi1.conflicts.is_empty());
}

#[test]
fn facet_files_round_trip() {
    for (name, k) in valid_fixtures() {
        let text = write_facets(&k, Some(&name));
        let back = parse_facets(&text).unwrap();
        assert_eq!(back, k, "{name}");
        assert_eq!(back.f_vector(), k.f_vector());
    }
}

#[test]
fn fixture_lookup() {
    for name in fixtures::FIXTURE_NAMES {
        let p = FixtureParams { d: Some(3), n: Some(7) };
        let k = fixtures::fixture(name, p).unwrap();
        assert!(k.is_closed_pseudomanifold(), "{name}");
    }
    assert!(fixtures::fixture("klein", FixtureParams::default()).is_err());
    assert!(fixtures::fixture("cyclic", FixtureParams { d: Some(4), n: None }).is_err());
}

#[test]
fn spheres_get_certified() {
    for d in 1..=4 {
        let s = CertifiedSphere::certify(&cross_polytope(d).unwrap()).unwrap();
        let expected_direct = d <= 2;
        assert_eq!(matches!(s.evidence(), SphereEvidence::Recognizer), expected_direct, "d = {d}");
    }
    assert!(CertifiedSphere::certify(&rp2_6()).is_err());
    assert!(CertifiedSphere::certify(&torus_7()).is_err());
}

#[test]
fn bistellar_reduces_small_spheres() {
    for k in [cross_polytope(3).unwrap(), cyclic_polytope(8, 4).unwrap(), boundary_simplex(4).unwrap()] {
        let out = bistellar_sphere_heuristic(&k, 5000).unwrap();
        assert!(matches!(out, BistellarOutcome::ReducedToBoundarySimplex { .. }), "{out:?}");
    }
}

#[test]
fn reduced_and_unreduced_agree_above_zero() {
    for (_, k) in valid_fixtures() {
        let h = homology(&k, Coefficients::Integers).unwrap();
        let r = reduced_homology(&k, Coefficients::Integers).unwrap();
        for i in 1..=k.dim() {
            assert_eq!(h.group(i), r.group(i));
        }
        assert_eq!(h.betti(0), r.betti(0) + 1);
    }
}
