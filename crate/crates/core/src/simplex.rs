use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::ComplexError;

/// Dense vertex identifier. Labels are resolved through the owning complex.
pub type VertexId = usize;

/// A simplex stored as its strictly increasing vertex list.
///
/// The empty simplex (no vertices, dimension −1) is a valid value; the
/// operations that cannot accept it reject it explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from arbitrary-order vertices. Duplicates are rejected.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self, ComplexError> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        v.sort_unstable();
        if let Some((a, _)) = v.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(ComplexError::MalformedFacet {
                index: 0,
                reason: format!("vertex {a} repeated"),
            });
        }
        Ok(Simplex(v))
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    /// Caller guarantees `v` is strictly increasing.
    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other` by a merge walk over the sorted lists.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().merge(other.0.iter()).dedup().copied().collect())
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    /// Keeps only the vertices accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(VertexId) -> bool) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&v| keep(v)).collect())
    }

    /// Codimension-one faces with their incidence signs: deleting the
    /// vertex at position `j` contributes `(-1)^j`.
    pub fn boundary(&self) -> impl Iterator<Item = (i8, Simplex)> + '_ {
        (0..self.0.len()).map(move |j| {
            let mut f = self.0.clone();
            f.remove(j);
            (if j % 2 == 0 { 1 } else { -1 }, Simplex(f))
        })
    }

    /// All faces with exactly `size` vertices, lexicographically ordered.
    pub fn faces_with_size(&self, size: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().copied().combinations(size).map(Simplex)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}
