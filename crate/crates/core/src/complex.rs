//! Immutable facet-list simplicial complexes and the combinatorial
//! operations on them (faces, links, stars, joins, full subcomplexes).
//!
//! Vertex ids are dense indices into a label table that is shared between a
//! complex and every subcomplex derived from it, so ids stay comparable
//! across links, stars and full subcomplexes of the same parent.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::ComplexError;
use crate::simplex::{Simplex, VertexId};

/// Sorted duplicate-free vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: Vec<_> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `K⁰ − self`.
    pub fn complement_in(&self, k: &SimplicialComplex) -> VertexSet {
        VertexSet(k.vertices().iter().copied().filter(|v| !self.contains(*v)).collect())
    }

    pub fn with(&self, v: VertexId) -> VertexSet {
        VertexSet::new(self.0.iter().copied().chain([v]))
    }
}

impl From<&Simplex> for VertexSet {
    fn from(s: &Simplex) -> Self {
        VertexSet(s.vertices().to_vec())
    }
}

/// Outcome of the closed-pseudomanifold test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub pure: bool,
    pub ridge_degree_two: bool,
    pub strongly_connected: bool,
    /// First ridge whose facet degree is not two, in labels.
    pub bad_ridge: Option<Vec<String>>,
}

impl PseudomanifoldReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure && self.ridge_degree_two && self.strongly_connected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

/// A finite simplicial complex given by its facets.
///
/// The complex containing only the empty simplex (dimension −1) is
/// representable; it arises as the link of a facet or the full subcomplex
/// on no vertices.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Arc<[String]>,
    vertices: Vec<VertexId>,
    facets: Vec<Simplex>,
    dim: isize,
    /// Index `i + 1` holds the `i`-faces.
    skeleta: Vec<OnceLock<Vec<Simplex>>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim)
            .field("facets", &self.labeled_facets())
            .finish()
    }
}

/// Two complexes are equal when their labeled facet sets coincide.
impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.labels, &other.labels) {
            return self.facets == other.facets;
        }
        self.canonical_facets() == other.canonical_facets()
    }
}

impl Eq for SimplicialComplex {}

/// Reduces a family of simplices to its maximal elements.
fn maximal(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    simplices.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(simplices.len());
    for s in simplices {
        if !kept.iter().any(|k| s.is_face_of(k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from label tuples. Labels are numbered in order of
    /// first appearance and facets are reduced to the maximal antichain.
    pub fn from_facets<S, I, F>(facet_lists: I) -> Result<Self, ComplexError>
    where
        S: AsRef<str>,
        F: IntoIterator<Item = S>,
        I: IntoIterator<Item = F>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut simplices = Vec::new();
        for (i, facet) in facet_lists.into_iter().enumerate() {
            let mut ids = Vec::new();
            for label in facet {
                let label = label.as_ref();
                let id = *index.entry(label.to_string()).or_insert_with(|| {
                    labels.push(label.to_string());
                    labels.len() - 1
                });
                ids.push(id);
            }
            if ids.is_empty() {
                return Err(ComplexError::MalformedFacet { index: i, reason: "empty facet".into() });
            }
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::MalformedFacet {
                    index: i,
                    reason: format!("label {:?} repeated", labels[w[0]]),
                });
            }
            simplices.push(Simplex::from_sorted(sorted));
        }
        if simplices.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        Ok(Self::from_simplices(labels.into(), simplices))
    }

    /// Builds a complex over an existing label table. Any family of
    /// simplices is accepted; it is closed downward implicitly.
    pub fn from_simplices(labels: Arc<[String]>, simplices: Vec<Simplex>) -> Self {
        let mut facets = maximal(simplices);
        if facets.is_empty() {
            facets.push(Simplex::empty());
        }
        let dim = facets.iter().map(Simplex::dim).max().unwrap_or(-1);
        let vertices: BTreeSet<VertexId> =
            facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        debug_assert!(vertices.iter().all(|&v| v < labels.len()));
        let skeleta = (0..dim + 2).map(|_| OnceLock::new()).collect();
        SimplicialComplex { labels, vertices: vertices.into_iter().collect(), facets, dim, skeleta }
    }

    /// The complex `{∅}` over the given label table.
    pub fn empty_over(labels: Arc<[String]>) -> Self {
        Self::from_simplices(labels, vec![Simplex::empty()])
    }

    /// The full simplex on `s` with all its faces.
    pub fn simplex_closure(&self, s: &Simplex) -> Self {
        Self::from_simplices(self.labels.clone(), vec![s.clone()])
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        let id = self.labels.iter().position(|l| l == label)?;
        self.vertices.binary_search(&id).ok().map(|_| id)
    }

    /// Resolves labels to a simplex of the label table (membership in the
    /// complex is not checked).
    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex, ComplexError> {
        let ids = labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|x| x == l.as_ref())
                    .ok_or_else(|| ComplexError::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(ids)
    }

    pub fn vertex_set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet, ComplexError> {
        let ids = labels
            .iter()
            .map(|l| {
                self.vertex_by_label(l.as_ref())
                    .ok_or_else(|| ComplexError::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VertexSet::new(ids))
    }

    pub fn labels_of(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        format!("[{}]", self.labels_of(s).join(","))
    }

    /// 0-skeleton, sorted.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(self.vertices.clone())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    /// True for the complex `{∅}`.
    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    /// Facets as sorted label tuples; independent of the id assignment.
    pub fn labeled_facets(&self) -> Vec<Vec<String>> {
        self.facets.iter().filter(|f| !f.is_empty()).map(|f| self.labels_of(f)).collect()
    }

    /// Label-sorted facet set, the canonical form used for equality.
    pub fn canonical_facets(&self) -> BTreeSet<Vec<String>> {
        self.labeled_facets()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    fn check_dim(&self, i: isize) -> Result<(), ComplexError> {
        if i < -1 || i > self.dim {
            return Err(ComplexError::DimensionOutOfRange { requested: i, max: self.dim });
        }
        Ok(())
    }

    /// All `i`-faces, each once, in lexicographic order. `i = −1` yields the
    /// empty simplex.
    pub fn faces(&self, i: isize) -> Result<&[Simplex], ComplexError> {
        self.check_dim(i)?;
        Ok(self.skeleta[(i + 1) as usize].get_or_init(|| {
            let size = (i + 1) as usize;
            let mut all: Vec<Simplex> = self
                .facets
                .iter()
                .filter(|f| f.len() >= size)
                .flat_map(|f| f.faces_with_size(size))
                .collect();
            all.sort_unstable();
            all.dedup();
            all
        }))
    }

    /// Position of an `i`-face within `faces(i)`.
    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        self.faces(s.dim()).ok()?.binary_search(s).ok()
    }

    /// `(f₀, f₁, …, f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|i| self.faces(i).map_or(0, <[Simplex]>::len)).collect()
    }

    /// Every nonempty simplex, grouped by dimension.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        (0..=self.dim).flat_map(move |i| self.faces(i).unwrap().iter())
    }

    fn require(&self, s: &Simplex) -> Result<(), ComplexError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(ComplexError::MissingSimplex(self.display_simplex(s)))
        }
    }

    fn derived(&self, simplices: Vec<Simplex>) -> Self {
        Self::from_simplices(self.labels.clone(), simplices)
    }

    /// lk(σ) = { τ : τ ∩ σ = ∅, τ ∪ σ ∈ K }.
    pub fn link(&self, sigma: &Simplex) -> Result<Self, ComplexError> {
        self.require(sigma)?;
        let parts = self
            .facets
            .iter()
            .filter(|f| sigma.is_face_of(f))
            .map(|f| f.difference(sigma))
            .collect();
        Ok(self.derived(parts))
    }

    /// Closed star: the cofaces of σ together with all their faces.
    pub fn star(&self, sigma: &Simplex) -> Result<Self, ComplexError> {
        self.require(sigma)?;
        let parts = self.facets.iter().filter(|f| sigma.is_face_of(f)).cloned().collect();
        Ok(self.derived(parts))
    }

    /// Every nonempty simplex with at least one vertex in `v`.
    pub fn open_star_support(&self, v: &VertexSet) -> Result<BTreeSet<Simplex>, ComplexError> {
        self.check_vertices(v)?;
        Ok(self
            .all_simplices()
            .filter(|s| s.vertices().iter().any(|&x| v.contains(x)))
            .cloned()
            .collect())
    }

    fn check_vertices(&self, v: &VertexSet) -> Result<(), ComplexError> {
        match v.ids().iter().find(|x| self.vertices.binary_search(x).is_err()) {
            Some(&bad) => Err(ComplexError::UnknownVertex(
                self.labels.get(bad).cloned().unwrap_or_else(|| format!("#{bad}")),
            )),
            None => Ok(()),
        }
    }

    /// K(V): every simplex of K whose vertices all lie in `v`.
    pub fn full_subcomplex(&self, v: &VertexSet) -> Result<Self, ComplexError> {
        self.check_vertices(v)?;
        let parts = self.facets.iter().map(|f| f.restrict(|x| v.contains(x))).collect();
        Ok(self.derived(parts))
    }

    /// K(V ∪ {v}) assembled as K(V) ∪ v * (lk(v) ∩ K(V)).
    pub fn incremental_full_subcomplex(&self, v: &VertexSet, vertex: VertexId) -> Result<Self, ComplexError> {
        self.check_vertices(v)?;
        self.check_vertices(&VertexSet::new([vertex]))?;
        if v.contains(vertex) {
            return Err(ComplexError::RedundantVertex(self.labels[vertex].clone()));
        }
        let base = self.full_subcomplex(v)?;
        let link = self.link(&Simplex::from_sorted(vec![vertex]))?;
        let cone_base = link.intersection(&base);
        let apex = self.simplex_closure(&Simplex::from_sorted(vec![vertex]));
        let cone = apex.join(&cone_base)?;
        Ok(base.union(&cone))
    }

    /// Union of two complexes over the same label table.
    pub fn union(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels);
        self.derived(self.facets.iter().chain(other.facets.iter()).cloned().collect())
    }

    /// Intersection of two complexes over the same label table.
    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels);
        let parts = self
            .facets
            .iter()
            .flat_map(|f| other.facets.iter().map(move |g| f.intersection(g)))
            .collect();
        self.derived(parts)
    }

    /// Join K * L. Operands over the same label table must have disjoint
    /// vertex sets; otherwise labels of L are appended to K's table and must
    /// not clash with labels used by K.
    pub fn join(&self, other: &Self) -> Result<Self, ComplexError> {
        let same_table = Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels;
        let (labels, remap): (Arc<[String]>, Vec<VertexId>) = if same_table {
            if let Some(v) = other.vertices.iter().find(|v| self.vertices.binary_search(v).is_ok()) {
                return Err(ComplexError::JoinCollision(self.labels[*v].clone()));
            }
            (self.labels.clone(), (0..other.labels.len()).collect())
        } else {
            let used: BTreeSet<&str> = self.vertices.iter().map(|&v| self.labels[v].as_str()).collect();
            if let Some(v) = other.vertices.iter().find(|&&v| used.contains(other.labels[v].as_str())) {
                return Err(ComplexError::JoinCollision(other.labels[*v].clone()));
            }
            let mut table: Vec<String> = self.labels.to_vec();
            let remap = other
                .labels
                .iter()
                .map(|l| match table.iter().position(|x| x == l) {
                    Some(p) if !used.contains(l.as_str()) => p,
                    _ => {
                        table.push(l.clone());
                        table.len() - 1
                    }
                })
                .collect();
            (table.into(), remap)
        };
        let mut parts = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                let mapped = Simplex::new(g.vertices().iter().map(|&v| remap[v])).expect("injective remap");
                parts.push(f.union(&mapped));
            }
        }
        Ok(Self::from_simplices(labels, parts))
    }

    /// Relabels vertices through `f`; the result has a fresh label table.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<Self, ComplexError> {
        let lists: Vec<Vec<String>> =
            self.facets.iter().map(|s| s.vertices().iter().map(|&v| f(&self.labels[v])).collect()).collect();
        Self::from_facets(lists)
    }

    /// Connectivity of the 1-skeleton. The complex `{∅}` counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut queue = VecDeque::from([self.vertices[0]]);
        seen.insert(self.vertices[0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Sorted neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> HashMap<VertexId, Vec<VertexId>> {
        let mut adj: HashMap<VertexId, Vec<VertexId>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        if self.dim >= 1 {
            for e in self.faces(1).unwrap() {
                let (a, b) = (e.vertices()[0], e.vertices()[1]);
                adj.get_mut(&a).unwrap().push(b);
                adj.get_mut(&b).unwrap().push(a);
            }
        }
        for n in adj.values_mut() {
            n.sort_unstable();
        }
        adj
    }

    /// Checks purity, ridge degree two and strong connectivity.
    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let d = self.dim;
        let pure = self.facets.iter().all(|f| f.dim() == d);
        let mut ridge_facets: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            if f.dim() < 1 {
                continue;
            }
            for (_, r) in f.boundary() {
                ridge_facets.entry(r).or_default().push(i);
            }
        }
        let mut bad: Vec<&Simplex> = ridge_facets.iter().filter(|(_, fs)| fs.len() != 2).map(|(r, _)| r).collect();
        bad.sort();
        let ridge_degree_two = d >= 1 && bad.is_empty();

        // facet adjacency through shared ridges
        let n = self.facets.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for fs in ridge_facets.values() {
            for w in fs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        let strongly_connected = d >= 1 && (0..n).all(|i| find(&mut parent, i) == root);
        PseudomanifoldReport {
            pure,
            ridge_degree_two,
            strongly_connected,
            bad_ridge: bad.first().map(|r| self.labels_of(r)),
        }
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pseudomanifold_report().is_closed_pseudomanifold()
    }

    pub(crate) fn require_closed_pseudomanifold(&self) -> Result<(), ComplexError> {
        let r = self.pseudomanifold_report();
        if r.is_closed_pseudomanifold() {
            return Ok(());
        }
        let why = if !r.pure {
            "not pure".to_string()
        } else if !r.ridge_degree_two {
            match &r.bad_ridge {
                Some(ridge) => format!("ridge [{}] does not lie in exactly two facets", ridge.join(",")),
                None => "dimension below 1".to_string(),
            }
        } else {
            "facet graph is not connected".to_string()
        };
        Err(ComplexError::NotAPseudomanifold(why))
    }

    /// Propagates a coherent orientation across ridges.
    pub fn orientability(&self) -> Result<Orientability, ComplexError> {
        self.require_closed_pseudomanifold()?;
        // ridge -> [(facet, sign of ridge in facet's boundary)]
        let mut ridges: HashMap<Simplex, Vec<(usize, i8)>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for (sign, r) in f.boundary() {
                ridges.entry(r).or_default().push((i, sign));
            }
        }
        let mut orient: Vec<i8> = vec![0; self.facets.len()];
        orient[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (sign, r) in self.facets[i].boundary() {
                let induced = orient[i] * sign;
                for &(j, s) in &ridges[&r] {
                    if j == i {
                        continue;
                    }
                    // coherent: the shared ridge is induced with opposite signs
                    let want = -induced * s;
                    if orient[j] == 0 {
                        orient[j] = want;
                        queue.push_back(j);
                    } else if orient[j] != want {
                        return Ok(Orientability::NonOrientable);
                    }
                }
            }
        }
        Ok(Orientability::Orientable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cx(facets: &[&[&str]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn single_triangle() {
        let k = cx(&[&["a", "b", "c"]]);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn antichain_absorbs_subfacet() {
        let k = cx(&[&["a", "b"], &["a", "b", "c"]]);
        assert_eq!(k, cx(&[&["a", "b", "c"]]));
        assert_eq!(k.facets().len(), 1);
    }

    #[test]
    fn construction_errors() {
        let empty: Vec<Vec<&str>> = vec![];
        assert_eq!(SimplicialComplex::from_facets(empty), Err(ComplexError::EmptyComplex));
        assert!(matches!(
            SimplicialComplex::from_facets([["a", "a"]]),
            Err(ComplexError::MalformedFacet { .. })
        ));
    }

    #[test]
    fn labels_in_first_appearance_order() {
        let k = cx(&[&["z", "y"], &["y", "x"]]);
        assert_eq!(&k.labels()[..], &["z".to_string(), "y".into(), "x".into()]);
    }

    #[test]
    fn boundary_of_4_simplex_f_vector() {
        let four_subsets: Vec<Vec<String>> = (0..5)
            .map(|skip| (0..5).filter(|&v| v != skip).map(|v| v.to_string()).collect())
            .collect();
        let k = SimplicialComplex::from_facets(four_subsets).unwrap();
        assert_eq!(k.f_vector(), vec![5, 10, 10, 5]);
    }

    #[test]
    fn faces_counts_and_range() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        assert_eq!(tet.faces(1).unwrap().len(), 6);
        assert_eq!(tet.faces(2).unwrap().len(), 4);
        assert_eq!(tet.faces(-1).unwrap(), &[Simplex::empty()]);
        assert!(tet.faces(3).is_err());
        assert!(tet.faces(-2).is_err());
        let oct = fixtures::cross_polytope(2).unwrap();
        assert_eq!(oct.faces(2).unwrap().len(), 8);
        let edges = tet.faces(1).unwrap();
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn links_of_boundary_simplex() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        let lk = tet.link(&Simplex::new([0]).unwrap()).unwrap();
        assert_eq!(lk.f_vector(), vec![3, 3]);
        assert_eq!(lk.facets().len(), 3);
        for d in 2..=5isize {
            let k = fixtures::boundary_simplex(d as usize).unwrap();
            for j in 0..d {
                let s = k.faces(j).unwrap()[0].clone();
                let lk = k.link(&s).unwrap();
                // ∂Δ^{d−j} on the remaining d−j+1 vertices
                assert_eq!(lk.num_vertices() as isize, d - j + 1);
                assert_eq!(lk.dim(), d - j - 1);
                assert_eq!(lk.facets().len() as isize, d - j + 1);
            }
        }
        assert!(tet.link(&Simplex::new([0, 1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn octahedron_vertex_link_is_a_4_cycle() {
        let oct = fixtures::cross_polytope(2).unwrap();
        let lk = oct.link(&Simplex::new([0]).unwrap()).unwrap();
        assert_eq!(lk.f_vector(), vec![4, 4]);
        assert!(lk.adjacency().values().all(|n| n.len() == 2));
    }

    #[test]
    fn link_of_facet_is_empty_complex() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        let lk = tet.link(&tet.facets()[0].clone()).unwrap();
        assert!(lk.is_empty());
        assert_eq!(lk.dim(), -1);
    }

    #[test]
    fn star_and_open_star_support() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        let v = Simplex::new([0]).unwrap();
        let st = tet.star(&v).unwrap();
        assert_eq!(st.facets().len(), 3);
        let supp = tet.open_star_support(&VertexSet::new([0])).unwrap();
        assert!(supp.iter().all(|s| s.contains_vertex(0)));
        assert_eq!(supp.len(), 1 + 3 + 3);

        let oct = fixtures::cross_polytope(2).unwrap();
        // cross-polytope vertices 2j, 2j+1 are antipodal
        let poles = VertexSet::new([0, 1]);
        let supp = oct.open_star_support(&poles).unwrap();
        let equator = oct.full_subcomplex(&poles.complement_in(&oct)).unwrap();
        let eq_faces: BTreeSet<Simplex> = equator.all_simplices().cloned().collect();
        assert_eq!(eq_faces.len(), 8);
        let all: BTreeSet<Simplex> = oct.all_simplices().cloned().collect();
        assert_eq!(supp, all.difference(&eq_faces).cloned().collect());
    }

    #[test]
    fn joins() {
        let point = cx(&[&["p"]]);
        let tri = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let cone = point.join(&tri).unwrap();
        assert_eq!(cone.num_vertices(), 4);
        assert_eq!(cone.facets().len(), 3);

        let s0a = cx(&[&["a"], &["b"]]);
        let s0b = cx(&[&["c"], &["d"]]);
        let circle = s0a.join(&s0b).unwrap();
        assert_eq!(circle.f_vector(), vec![4, 4]);

        let oct = fixtures::cross_polytope(2).unwrap();
        let s0 = cx(&[&["n"], &["s"]]);
        let susp = s0.join(&oct).unwrap();
        assert_eq!(susp.f_vector(), fixtures::cross_polytope(3).unwrap().f_vector());
        assert_eq!(susp.f_vector(), vec![8, 24, 32, 16]);

        assert!(matches!(tri.join(&tri), Err(ComplexError::JoinCollision(_))));
    }

    #[test]
    fn full_subcomplexes() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        let k = tet.full_subcomplex(&VertexSet::new([0, 1, 2])).unwrap();
        assert_eq!(k.facets().len(), 1);
        assert_eq!(k.dim(), 2);

        let oct = fixtures::cross_polytope(2).unwrap();
        let eq = oct.full_subcomplex(&VertexSet::new([2, 3, 4, 5])).unwrap();
        assert_eq!(eq.f_vector(), vec![4, 4]);

        let rp2 = fixtures::rp2_6();
        let facet = rp2.vertex_set_from_labels(&["1", "2", "4"]).unwrap();
        let comp = rp2.full_subcomplex(&facet.complement_in(&rp2)).unwrap();
        assert_eq!(comp.f_vector(), vec![3, 3]);

        assert!(matches!(tet.full_subcomplex(&VertexSet::new([9])), Err(ComplexError::UnknownVertex(_))));
        assert!(tet.full_subcomplex(&VertexSet::new([])).unwrap().is_empty());
    }

    #[test]
    fn incremental_full_subcomplex_basics() {
        let tet = fixtures::boundary_simplex(2).unwrap();
        let single = tet.incremental_full_subcomplex(&VertexSet::default(), 2).unwrap();
        assert_eq!(single.facets(), &[Simplex::new([2]).unwrap()]);
        let tri = tet.incremental_full_subcomplex(&VertexSet::new([0, 1]), 2).unwrap();
        assert_eq!(tri.facets(), &[Simplex::new([0, 1, 2]).unwrap()]);
        assert!(matches!(
            tet.incremental_full_subcomplex(&VertexSet::new([0, 1]), 1),
            Err(ComplexError::RedundantVertex(_))
        ));
    }

    #[test]
    fn pseudomanifold_reports() {
        for d in 1..=6 {
            assert!(fixtures::boundary_simplex(d).unwrap().is_closed_pseudomanifold());
            assert!(fixtures::cross_polytope(d).unwrap().is_closed_pseudomanifold());
        }
        let full = cx(&[&["a", "b", "c"]]);
        let r = full.pseudomanifold_report();
        assert!(r.pure && !r.ridge_degree_two);

        // two copies of ∂Δ², each a closed 1-pseudomanifold, side by side
        let two = cx(&[&["a", "b"], &["b", "c"], &["a", "c"], &["x", "y"], &["y", "z"], &["x", "z"]]);
        let r = two.pseudomanifold_report();
        assert!(r.pure && r.ridge_degree_two && !r.strongly_connected);

        // two triangles sharing an edge plus a disjoint pair
        let pairs = cx(&[&["a", "b", "c"], &["a", "b", "d"], &["p", "q", "r"], &["p", "q", "s"]]);
        assert!(!pairs.pseudomanifold_report().strongly_connected);

        let mixed = cx(&[&["a", "b", "c"], &["c", "d"]]);
        assert!(!mixed.pseudomanifold_report().pure);
    }

    #[test]
    fn orientability_of_fixtures() {
        assert_eq!(fixtures::boundary_simplex(2).unwrap().orientability(), Ok(Orientability::Orientable));
        assert_eq!(fixtures::cross_polytope(2).unwrap().orientability(), Ok(Orientability::Orientable));
        assert_eq!(fixtures::rp2_6().orientability(), Ok(Orientability::NonOrientable));
        assert_eq!(fixtures::torus_7().orientability(), Ok(Orientability::Orientable));
        let full = cx(&[&["a", "b", "c"]]);
        assert!(matches!(full.orientability(), Err(ComplexError::NotAPseudomanifold(_))));
    }

    #[test]
    fn join_across_label_tables_keeps_labels() {
        let a = cx(&[&["1", "2"]]);
        let b = cx(&[&["3"], &["4"]]);
        let j = a.join(&b).unwrap();
        let expect: BTreeSet<Vec<String>> = [vec!["1", "2", "3"], vec!["1", "2", "4"]]
            .into_iter()
            .map(|f| f.into_iter().map(String::from).collect())
            .collect();
        assert_eq!(j.canonical_facets(), expect);
    }
}
