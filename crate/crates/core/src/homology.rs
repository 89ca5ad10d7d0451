//! Simplicial homology and cohomology over ℤ and ℤ/p.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{ComplexError, Error, Result};
use crate::snf::{is_prime, rank_mod_p, smith_normal_form, IntMatrix};

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    /// ℤ/p with p prime.
    Mod(u64),
}

impl Coefficients {
    pub fn mod_p(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Mod(p))
        } else {
            Err(Error::InvalidCoefficient(format!("{p} is not prime")))
        }
    }

    /// Accepts `z`, `Z`, `z2`, `Z_3`, `zp7`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let rest = t.strip_prefix('z').ok_or_else(|| Error::InvalidCoefficient(s.to_string()))?;
        let rest = rest.trim_start_matches(['_', 'p']);
        if rest.is_empty() {
            return Ok(Coefficients::Integers);
        }
        let p: u64 = rest.parse().map_err(|_| Error::InvalidCoefficient(s.to_string()))?;
        Self::mod_p(p)
    }

    fn validate(self) -> Result<Self> {
        match self {
            Coefficients::Mod(p) if !is_prime(p) => Err(Error::InvalidCoefficient(format!("{p} is not prime"))),
            c => Ok(c),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(p) => write!(f, "Z_{p}"),
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rows are `(i−1)`-faces, columns `i`-faces, in lexicographic order.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub dim: isize,
    pub rows: usize,
    pub cols: usize,
    /// Sparse columns of `(row, ±1)`.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[(r, c)] = v as i64;
            }
        }
        m
    }
}

/// ∂_i: C_i → C_{i−1}. With `reduced`, ∂₀ is the augmentation onto the
/// empty simplex.
pub fn boundary_matrix(k: &SimplicialComplex, i: isize, reduced: bool) -> Result<BoundaryMatrix> {
    if i < 0 || i > k.dim() {
        return Err(ComplexError::DimensionOutOfRange { requested: i, max: k.dim() }.into());
    }
    let cols = k.faces(i)?;
    if i == 0 {
        let rows = usize::from(reduced);
        let columns = cols.iter().map(|_| if reduced { vec![(0, 1)] } else { vec![] }).collect();
        return Ok(BoundaryMatrix { dim: 0, rows, cols: cols.len(), columns });
    }
    let lower = k.faces(i - 1)?;
    let columns = cols
        .iter()
        .map(|s| {
            s.boundary()
                .map(|(sign, f)| (lower.binary_search(&f).expect("face of a face is a face"), sign))
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix { dim: i, rows: lower.len(), cols: cols.len(), columns })
}

/// Betti number and torsion coefficients of one group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub betti: usize,
    /// Invariant factors > 1, in divisibility order. Empty over a field.
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn free(rank: usize) -> Self {
        GroupInvariants { betti: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Isomorphic to the coefficient ring itself.
    pub fn is_ring(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Torsion<'a>(&'a [BigInt]);

impl Serialize for Torsion<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            match t.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&t.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for GroupInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupInvariants", 2)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Homology,
    Cohomology,
}

/// Per-dimension invariants of (co)homology with given coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub ring: Coefficients,
    pub reduced: bool,
    pub variance: Variance,
    /// Dimension of `groups[0]`: −1 for reduced profiles, 0 otherwise.
    pub first_dim: isize,
    pub groups: Vec<GroupInvariants>,
}

impl HomologyProfile {
    /// The group in dimension `i`; zero outside the computed range.
    pub fn group(&self, i: isize) -> GroupInvariants {
        usize::try_from(i - self.first_dim)
            .ok()
            .and_then(|j| self.groups.get(j).cloned())
            .unwrap_or_default()
    }

    pub fn betti(&self, i: isize) -> usize {
        self.group(i).betti
    }

    pub fn dims(&self) -> impl Iterator<Item = isize> + '_ {
        (0..self.groups.len() as isize).map(move |j| j + self.first_dim)
    }

    /// Highest dimension carried (−1 for reduced profile of `{∅}`).
    pub fn top_dim(&self) -> isize {
        self.first_dim + self.groups.len() as isize - 1
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> Vec<(isize, &GroupInvariants)> {
        self.dims().zip(&self.groups).filter(|(_, g)| !g.is_trivial()).collect()
    }

    /// Reduced profile is that of S^d: only dimension `d` nonzero, ≅ ring.
    pub fn is_sphere_like(&self, d: isize) -> bool {
        let nz = self.nonzero();
        nz.len() == 1 && nz[0].0 == d && nz[0].1.is_ring()
    }

    /// Σ (−1)^i b_i.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims().zip(&self.groups).map(|(i, g)| if i.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sym, pos) = match (self.variance, self.reduced) {
            (Variance::Homology, false) => ("H", "_"),
            (Variance::Homology, true) => ("~H", "_"),
            (Variance::Cohomology, false) => ("H", "^"),
            (Variance::Cohomology, true) => ("~H", "^"),
        };
        let parts: Vec<String> = self
            .dims()
            .zip(&self.groups)
            .map(|(i, g)| {
                let group = match (self.ring, g.betti) {
                    (Coefficients::Integers, _) | (_, 0) => g.to_string(),
                    (ring, 1) => ring.to_string(),
                    (ring, b) => format!("({ring})^{b}"),
                };
                format!("{sym}{pos}{i}({}) = {group}", self.ring)
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            dim: isize,
            #[serde(flatten)]
            group: &'a GroupInvariants,
        }
        let mut st = s.serialize_struct("HomologyProfile", 4)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("variance", &self.variance)?;
        st.serialize_field("reduced", &self.reduced)?;
        let groups: Vec<Entry<'_>> = self.dims().zip(&self.groups).map(|(dim, group)| Entry { dim, group }).collect();
        st.serialize_field("groups", &groups)?;
        st.end()
    }
}

/// Rank and nontrivial invariant factors of one boundary map.
struct MapData {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn analyze_map(m: &IntMatrix, ring: Coefficients) -> MapData {
    match ring {
        Coefficients::Integers => {
            let snf = smith_normal_form(m);
            let torsion = snf.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect();
            MapData { rank: snf.rank, torsion }
        }
        Coefficients::Mod(p) => MapData { rank: rank_mod_p(m, p), torsion: Vec::new() },
    }
}

fn compute(k: &SimplicialComplex, ring: Coefficients, reduced: bool, variance: Variance) -> Result<HomologyProfile> {
    let ring = ring.validate()?;
    let lo: isize = if reduced { -1 } else { 0 };
    let top = k.dim();
    if top < lo {
        return Ok(HomologyProfile { ring, reduced, variance, first_dim: lo, groups: Vec::new() });
    }
    let count = |i: isize| -> usize {
        if i == -1 {
            usize::from(reduced)
        } else {
            k.faces(i).map_or(0, <[_]>::len)
        }
    };
    // maps[j] describes ∂_{lo+1+j}, or its transpose for cohomology
    let maps: Vec<MapData> = ((lo + 1).max(0)..=top)
        .into_par_iter()
        .map(|i| {
            let b = boundary_matrix(k, i, reduced).expect("dimension in range").to_dense();
            let m = match variance {
                Variance::Homology => b,
                Variance::Cohomology => b.transpose(),
            };
            analyze_map(&m, ring)
        })
        .collect();
    let offset = (lo + 1).max(0);
    let map = |i: isize| -> Option<&MapData> {
        if i < offset || i > top {
            None
        } else {
            maps.get((i - offset) as usize)
        }
    };
    let rank = |i: isize| map(i).map_or(0, |d| d.rank);
    let groups = (lo..=top)
        .map(|i| {
            let betti = count(i) - rank(i) - rank(i + 1);
            let torsion = match variance {
                // torsion of H_i comes from im ∂_{i+1}
                Variance::Homology => map(i + 1).map(|d| d.torsion.clone()).unwrap_or_default(),
                // torsion of H^i comes from im δ^{i−1} = im ∂_i^T
                Variance::Cohomology => map(i).map(|d| d.torsion.clone()).unwrap_or_default(),
            };
            GroupInvariants { betti, torsion }
        })
        .collect();
    Ok(HomologyProfile { ring, reduced, variance, first_dim: lo, groups })
}

pub fn homology(k: &SimplicialComplex, ring: Coefficients) -> Result<HomologyProfile> {
    compute(k, ring, false, Variance::Homology)
}

/// Reduced homology; `{∅}` has H̃₋₁ ≅ ring.
pub fn reduced_homology(k: &SimplicialComplex, ring: Coefficients) -> Result<HomologyProfile> {
    compute(k, ring, true, Variance::Homology)
}

pub fn cohomology(k: &SimplicialComplex, ring: Coefficients) -> Result<HomologyProfile> {
    compute(k, ring, false, Variance::Cohomology)
}

pub fn reduced_cohomology(k: &SimplicialComplex, ring: Coefficients) -> Result<HomologyProfile> {
    compute(k, ring, true, Variance::Cohomology)
}

/// Σ (−1)^i f_i.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
}

/// Closed pseudomanifold of dimension `d` whose reduced homology with the
/// given coefficients is that of S^d.
pub fn is_homology_sphere(k: &SimplicialComplex, d: isize, ring: Coefficients) -> Result<bool> {
    k.require_closed_pseudomanifold()?;
    if k.dim() != d {
        return Err(ComplexError::WrongDimension { expected: d, actual: k.dim() }.into());
    }
    Ok(reduced_homology(k, ring)?.is_sphere_like(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z() -> Coefficients {
        Coefficients::Integers
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn boundary_matrices() {
        let circle = fixtures::boundary_simplex(1).unwrap();
        let b = boundary_matrix(&circle, 1, false).unwrap();
        assert_eq!((b.rows, b.cols), (3, 3));
        assert_eq!(smith_normal_form(&b.to_dense()).rank, 2);

        let s2 = fixtures::boundary_simplex(2).unwrap();
        let b2 = boundary_matrix(&s2, 2, false).unwrap();
        assert_eq!((b2.rows, b2.cols), (6, 4));
        assert_eq!(smith_normal_form(&b2.to_dense()).rank, 3);
        assert!(b2.columns.iter().all(|c| c.len() == 3));
        assert!(boundary_matrix(&s2, 3, false).is_err());
    }

    #[test]
    fn boundary_squared_is_zero() {
        let ks = [
            fixtures::boundary_simplex(4).unwrap(),
            fixtures::cross_polytope(3).unwrap(),
            fixtures::rp2_6(),
            fixtures::cyclic_polytope(8, 4).unwrap(),
            fixtures::cp2_9(),
        ];
        for k in &ks {
            for i in 1..=k.dim() {
                let lo = boundary_matrix(k, i, true).unwrap().to_dense();
                let hi = if i < k.dim() { boundary_matrix(k, i + 1, true).unwrap().to_dense() } else { continue };
                assert!(lo.mul(&hi).is_zero(), "∂{i}∂{} ≠ 0", i + 1);
            }
            let aug = boundary_matrix(k, 0, true).unwrap().to_dense();
            let b1 = boundary_matrix(k, 1, true).unwrap().to_dense();
            assert!(aug.mul(&b1).is_zero());
        }
    }

    #[test]
    fn spheres() {
        for d in 1..=6 {
            let h = homology(&fixtures::boundary_simplex(d).unwrap(), z()).unwrap();
            for i in 0..=d as isize {
                let want = if i == 0 || i == d as isize { GroupInvariants::free(1) } else { GroupInvariants::default() };
                assert_eq!(h.group(i), want);
            }
        }
        let oct = homology(&fixtures::cross_polytope(2).unwrap(), z()).unwrap();
        assert_eq!(oct.groups, vec![GroupInvariants::free(1), GroupInvariants::default(), GroupInvariants::free(1)]);
    }

    #[test]
    fn projective_plane() {
        let rp2 = fixtures::rp2_6();
        let h = homology(&rp2, z()).unwrap();
        assert_eq!(h.group(0), GroupInvariants::free(1));
        assert_eq!(h.group(1), GroupInvariants { betti: 0, torsion: big(&[2]) });
        assert_eq!(h.group(2), GroupInvariants::default());
        let h2 = homology(&rp2, Coefficients::Mod(2)).unwrap();
        assert_eq!(h2.groups.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 1, 1]);
        let h3 = homology(&rp2, Coefficients::Mod(3)).unwrap();
        assert_eq!(h3.groups.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 0]);

        let c = cohomology(&rp2, z()).unwrap();
        assert_eq!(c.group(0), GroupInvariants::free(1));
        assert_eq!(c.group(1), GroupInvariants::default());
        assert_eq!(c.group(2), GroupInvariants { betti: 0, torsion: big(&[2]) });
    }

    #[test]
    fn torus_and_cp2() {
        let t = homology(&fixtures::torus_7(), z()).unwrap();
        assert_eq!(t.groups.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(euler_characteristic(&fixtures::torus_7()), 0);
        let cp2 = homology(&fixtures::cp2_9(), z()).unwrap();
        assert_eq!(cp2.groups.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1]);
        assert!(cp2.groups.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn reduced_differs_in_degree_zero_only() {
        for k in [fixtures::rp2_6(), fixtures::torus_7(), fixtures::cross_polytope(3).unwrap()] {
            let h = homology(&k, z()).unwrap();
            let r = reduced_homology(&k, z()).unwrap();
            assert_eq!(r.group(-1), GroupInvariants::default());
            assert_eq!(r.betti(0) + 1, h.betti(0));
            for i in 1..=k.dim() {
                assert_eq!(r.group(i), h.group(i));
            }
        }
    }

    #[test]
    fn empty_complex_has_reduced_class_in_degree_minus_one() {
        let k = fixtures::boundary_simplex(2).unwrap();
        let empty = k.link(&k.facets()[0].clone()).unwrap();
        let r = reduced_homology(&empty, z()).unwrap();
        assert_eq!(r.group(-1), GroupInvariants::free(1));
        assert!(homology(&empty, z()).unwrap().groups.is_empty());
        let rc = reduced_cohomology(&empty, z()).unwrap();
        assert_eq!(rc.group(-1), GroupInvariants::free(1));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&fixtures::boundary_simplex(2).unwrap()), 2);
        assert_eq!(euler_characteristic(&fixtures::rp2_6()), 1);
        assert_eq!(euler_characteristic(&fixtures::cp2_9()), 3);
    }

    #[test]
    fn homology_spheres() {
        for d in 1..=5 {
            let k = fixtures::boundary_simplex(d).unwrap();
            for ring in [z(), Coefficients::Mod(2), Coefficients::Mod(3), Coefficients::Mod(7)] {
                assert!(is_homology_sphere(&k, d as isize, ring).unwrap());
            }
        }
        let rp2 = fixtures::rp2_6();
        assert!(!is_homology_sphere(&rp2, 2, Coefficients::Mod(2)).unwrap());
        // over ℤ/3 the top class dies with the non-orientability, so ℝP² is
        // ℤ/3-acyclic rather than a ℤ/3-sphere
        assert!(!is_homology_sphere(&rp2, 2, Coefficients::Mod(3)).unwrap());
        assert!(!is_homology_sphere(&rp2, 2, z()).unwrap());
        let full = SimplicialComplex::from_facets([["a", "b", "c"]]).unwrap();
        assert!(matches!(is_homology_sphere(&full, 2, z()), Err(Error::Complex(ComplexError::NotAPseudomanifold(_)))));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!(Coefficients::parse("z").unwrap(), Coefficients::Integers);
        assert_eq!(Coefficients::parse("Z2").unwrap(), Coefficients::Mod(2));
        assert_eq!(Coefficients::parse("z_3").unwrap(), Coefficients::Mod(3));
        assert!(matches!(Coefficients::parse("z4"), Err(Error::InvalidCoefficient(_))));
        assert!(Coefficients::parse("q").is_err());
        assert!(homology(&fixtures::rp2_6(), Coefficients::Mod(9)).is_err());
    }

    #[test]
    fn profile_json_shape() {
        let h = homology(&fixtures::rp2_6(), z()).unwrap();
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["ring"], "Z");
        assert_eq!(v["groups"][1]["dim"], 1);
        assert_eq!(v["groups"][1]["torsion"][0], 2);
        assert_eq!(h.to_string(), "H_0(Z) = Z, H_1(Z) = Z_2, H_2(Z) = 0");
    }
}
