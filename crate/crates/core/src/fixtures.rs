//! Built-in complexes. Labels are `1..=n`; vertex id `i` carries label `i+1`.

use std::sync::Arc;

use itertools::Itertools;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::io::parse_facets;
use crate::simplex::Simplex;

const MAX_DIM: usize = 8;
const CP2_9: &str = include_str!("../data/cp2_9.facets");

fn numbered(n: usize, facets: impl IntoIterator<Item = Vec<usize>>) -> SimplicialComplex {
    let labels: Arc<[String]> = (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().into();
    let simplices = facets.into_iter().map(|f| Simplex::new(f).expect("fixture facet")).collect();
    SimplicialComplex::from_simplices(labels, simplices)
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::FixtureParam(format!("d = {d} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

/// ∂Δ^{d+1}: the d-sphere on d+2 vertices.
pub fn boundary_simplex(d: usize) -> Result<SimplicialComplex> {
    check_dim(d)?;
    let n = d + 2;
    Ok(numbered(n, (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect())))
}

/// Boundary of the (d+1)-dimensional cross-polytope, a d-sphere with
/// 2(d+1) vertices and 2^{d+1} facets. Vertices `2j` and `2j+1` are
/// antipodal.
pub fn cross_polytope(d: usize) -> Result<SimplicialComplex> {
    check_dim(d)?;
    let pairs = d + 1;
    let facets = (0..1usize << pairs).map(|mask| (0..pairs).map(|j| 2 * j + ((mask >> j) & 1)).collect());
    Ok(numbered(2 * pairs, facets))
}

/// Boundary of the cyclic polytope C(n, d) via Gale's evenness condition:
/// a combinatorial (d−1)-sphere on n vertices.
pub fn cyclic_polytope(n: usize, d: usize) -> Result<SimplicialComplex> {
    if !(2..=MAX_DIM + 1).contains(&d) {
        return Err(Error::FixtureParam(format!("cyclic polytope dimension {d} outside 2..={}", MAX_DIM + 1)));
    }
    if n < d + 1 || n > 64 {
        return Err(Error::FixtureParam(format!("cyclic polytope needs d+1 <= n <= 64, got n = {n}")));
    }
    let facets = (0..n).combinations(d).filter(|s| {
        (0..n).filter(|v| !s.contains(v)).tuple_combinations().all(|(i, j)| {
            s.iter().filter(|&&x| i < x && x < j).count() % 2 == 0
        })
    });
    Ok(numbered(n, facets))
}

/// Six-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    const FACETS: [[usize; 3]; 10] = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    numbered(6, FACETS.iter().map(|f| f.iter().map(|v| v - 1).collect()))
}

/// Seven-vertex (Möbius) torus.
pub fn torus_7() -> SimplicialComplex {
    let facets = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]);
    numbered(7, facets)
}

/// Nine-vertex complex projective plane, read from the bundled facet file.
pub fn cp2_9() -> SimplicialComplex {
    parse_facets(CP2_9).expect("bundled CP2 facet file")
}

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: &[&str] =
    &["boundary_simplex", "cross_polytope", "cyclic", "rp2_6", "torus_7", "cp2_9"];

/// Parameters for [`fixture`]; unused fields are ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct FixtureParams {
    pub d: Option<usize>,
    pub n: Option<usize>,
}

/// Looks up a fixture by name. `cyclic` takes the polytope dimension `d`
/// (the boundary has dimension d−1) and vertex count `n`.
pub fn fixture(name: &str, params: FixtureParams) -> Result<SimplicialComplex> {
    let need = |p: Option<usize>, what: &str| p.ok_or_else(|| Error::FixtureParam(format!("{name} needs --{what}")));
    match name {
        "boundary_simplex" => boundary_simplex(need(params.d, "d")?),
        "cross_polytope" => cross_polytope(need(params.d, "d")?),
        "cyclic" => cyclic_polytope(need(params.n, "n")?, need(params.d, "d")?),
        "rp2_6" => Ok(rp2_6()),
        "torus_7" => Ok(torus_7()),
        "cp2_9" => Ok(cp2_9()),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn boundary_simplex_counts() {
        for d in 1..=MAX_DIM {
            let k = boundary_simplex(d).unwrap();
            let want: Vec<usize> = (0..=d).map(|i| binom(d + 2, i + 1)).collect();
            assert_eq!(k.f_vector(), want);
        }
        assert_eq!(fixture("boundary_simplex", FixtureParams { d: Some(3), n: None }).unwrap().f_vector(), vec![
            5, 10, 10, 5
        ]);
    }

    #[test]
    fn cross_polytope_counts() {
        for d in 1..=6 {
            let k = cross_polytope(d).unwrap();
            // f_i = C(d+1, i+1) 2^{i+1}
            let want: Vec<usize> = (0..=d).map(|i| binom(d + 1, i + 1) << (i + 1)).collect();
            assert_eq!(k.f_vector(), want);
        }
        let k = cross_polytope(3).unwrap();
        assert_eq!(k.num_vertices(), 8);
        assert_eq!(k.facets().len(), 16);
    }

    #[test]
    fn cyclic_facet_counts() {
        // boundary of a cyclic 4-polytope has n(n−3)/2 facets and is 2-neighborly
        for n in 5..=12 {
            let k = cyclic_polytope(n, 4).unwrap();
            assert_eq!(k.facets().len(), n * (n - 3) / 2);
            assert_eq!(k.f_vector()[1], binom(n, 2));
            assert!(k.is_closed_pseudomanifold());
        }
        assert_eq!(cyclic_polytope(5, 4).unwrap(), boundary_simplex(3).unwrap());
        assert!(cyclic_polytope(3, 4).is_err());
    }

    #[test]
    fn small_surfaces() {
        let rp2 = rp2_6();
        assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
        assert!(rp2.is_closed_pseudomanifold());
        let t = torus_7();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert!(t.is_closed_pseudomanifold());
    }

    #[test]
    fn cp2_counts() {
        let k = cp2_9();
        assert_eq!(k.f_vector(), vec![9, 36, 84, 90, 36]);
        assert!(k.is_closed_pseudomanifold());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(fixture("klein", FixtureParams::default()), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("cross_polytope", FixtureParams::default()), Err(Error::FixtureParam(_))));
        assert!(boundary_simplex(9).is_err());
    }
}
