//! Edge-path presentations of the fundamental group, Tietze simplification,
//! abelianization and freeness verdicts.
//!
//! Words are sequences of nonzero letters: `g + 1` stands for generator `g`
//! and `-(g + 1)` for its inverse.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{ComplexError, Error, Result};
use crate::homology::GroupInvariants;
use crate::simplex::{Simplex, VertexId};
use crate::snf::{smith_normal_form, IntMatrix};

pub type Letter = i32;
pub type Word = Vec<Letter>;

fn letter(g: usize, inverse: bool) -> Letter {
    let l = g as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn power(w: &[Letter], k: i32) -> Word {
    let base = if k < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(&out)
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse letters at the two ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    let mut start = 0;
    while w.len() >= start + 2 && w[start] == -w[w.len() - 1] {
        start += 1;
        w.pop();
    }
    w.drain(..start);
    w
}

/// Smallest representative among the cyclic rotations of `w` and `w⁻¹`.
fn canonical_relator(w: &[Letter]) -> Word {
    let inv = inverse(w);
    let mut best: Option<Word> = None;
    for base in [w, &inv[..]] {
        for r in 0..base.len().max(1) {
            let cand: Word = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Where the generators of an edge-path presentation came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Edges of the spanning tree, as vertex labels.
    pub tree_edges: Vec<[String; 2]>,
    /// The oriented edge (low id to high id) behind each generator.
    pub generator_edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

impl GroupPresentation {
    /// Builds a presentation, freely reducing every relator.
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(&l) = w.iter().find(|&&l| l == 0 || generator_of(l) >= generators) {
                return Err(Error::Degenerate(format!("letter {l} out of range for {generators} generators")));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators: relators.iter().map(|w| free_reduce(w)).collect(),
            provenance: None,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    fn generator_name(&self, g: usize) -> String {
        if self.generators <= 26 {
            ((b'a' + g as u8) as char).to_string()
        } else {
            format!("g{}", g + 1)
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .chunk_by(|&&l| l)
            .into_iter()
            .map(|(l, run)| {
                let n = run.count() as i64 * l.signum() as i64;
                let name = self.generator_name(generator_of(l));
                if n == 1 {
                    name
                } else {
                    format!("{name}^{n}")
                }
            })
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = (0..self.generators).map(|g| self.generator_name(g)).join(", ");
        let rels = self.relators.iter().map(|w| self.format_word(w)).join(", ");
        write!(f, "⟨{gens} | {rels}⟩")
    }
}

/// How the spanning tree of the 1-skeleton is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanningTree {
    /// Breadth-first search from the smallest vertex id, neighbours in id order.
    Bfs,
    /// Breadth-first search from a random root with shuffled neighbour order.
    Random(u64),
}

/// Edge-path group presentation read from the 2-skeleton, using the
/// deterministic breadth-first spanning tree.
pub fn edge_path_presentation(k: &SimplicialComplex) -> Result<GroupPresentation> {
    edge_path_presentation_with(k, SpanningTree::Bfs)
}

pub fn edge_path_presentation_with(k: &SimplicialComplex, tree: SpanningTree) -> Result<GroupPresentation> {
    if k.dim() < 1 {
        return Err(ComplexError::DimensionOutOfRange { requested: 1, max: k.dim() }.into());
    }
    if !k.is_connected() {
        return Err(ComplexError::Disconnected.into());
    }
    let mut adj = k.adjacency();
    let (root, mut rng) = match tree {
        SpanningTree::Bfs => (k.vertices()[0], None),
        SpanningTree::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let root = *k.vertices().choose(&mut rng).unwrap();
            (root, Some(rng))
        }
    };
    if let Some(rng) = rng.as_mut() {
        let mut keys: Vec<VertexId> = adj.keys().copied().collect();
        keys.sort_unstable();
        for v in keys {
            adj.get_mut(&v).unwrap().shuffle(rng);
        }
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::from([root]);
    let mut tree_edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                tree_edges.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }

    let mut gen_index: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut generator_edges = Vec::new();
    for e in k.faces(1)? {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if !tree_edges.contains(&(a, b)) {
            gen_index.insert((a, b), generator_edges.len());
            generator_edges.push([k.label(a).to_string(), k.label(b).to_string()]);
        }
    }
    let edge_letter = |a: VertexId, b: VertexId| -> Option<Letter> {
        let (lo, hi) = (a.min(b), a.max(b));
        gen_index.get(&(lo, hi)).map(|&g| letter(g, a > b))
    };
    let triangles: &[Simplex] = if k.dim() >= 2 { k.faces(2)? } else { &[] };
    let relators = triangles
        .iter()
        .map(|t| {
            let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
            free_reduce(&[edge_letter(a, b), edge_letter(b, c), edge_letter(c, a)].into_iter().flatten().collect_vec())
        })
        .collect();
    Ok(GroupPresentation {
        generators: generator_edges.len(),
        relators,
        provenance: Some(Provenance {
            tree_edges: tree_edges.iter().map(|&(a, b)| [k.label(a).to_string(), k.label(b).to_string()]).collect(),
            generator_edges,
        }),
    })
}

/// A simplified presentation together with, for every generator of the
/// input, an equal word in the output generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplification {
    pub presentation: GroupPresentation,
    pub expressions: Vec<Word>,
}

fn substitute(w: &[Letter], g: usize, by: &[Letter]) -> Word {
    let inv = inverse(by);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if generator_of(l) == g {
            out.extend_from_slice(if l > 0 { by } else { &inv });
        } else {
            out.push(l);
        }
    }
    free_reduce(&out)
}

struct Simplifier {
    alive: Vec<bool>,
    relators: Vec<Word>,
    expressions: Vec<Word>,
}

impl Simplifier {
    fn eliminate(&mut self, g: usize, by: Word, skip: Option<usize>) {
        for (i, r) in self.relators.iter_mut().enumerate() {
            if Some(i) != skip {
                *r = cyclic_reduce(&substitute(r, g, &by));
            }
        }
        for e in &mut self.expressions {
            *e = substitute(e, g, &by);
        }
        self.alive[g] = false;
    }

    fn tidy(&mut self) {
        let mut seen = BTreeSet::new();
        self.relators.retain(|r| !r.is_empty() && seen.insert(canonical_relator(r)));
    }

    /// One move; false when nothing applies.
    fn step(&mut self) -> bool {
        self.tidy();
        // a relator that is a single letter kills its generator
        if let Some(i) = self.relators.iter().position(|r| r.len() == 1) {
            let g = generator_of(self.relators[i][0]);
            self.relators.swap_remove(i);
            self.eliminate(g, Vec::new(), None);
            return true;
        }
        // a relator x^e y^f with x ≠ y expresses x through y
        if let Some(i) =
            self.relators.iter().position(|r| r.len() == 2 && generator_of(r[0]) != generator_of(r[1]))
        {
            let r = self.relators.swap_remove(i);
            let g = generator_of(r[0]);
            let by = if r[0] > 0 { vec![-r[1]] } else { vec![r[1]] };
            self.eliminate(g, by, None);
            return true;
        }
        // a generator occurring exactly once in some relator, if the total length does not grow
        let total: usize = self.relators.iter().map(Vec::len).sum();
        let mut best: Option<(usize, usize, Word, usize)> = None;
        for (i, r) in self.relators.iter().enumerate() {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &l in r {
                *counts.entry(generator_of(l)).or_default() += 1;
            }
            for (j, &l) in r.iter().enumerate() {
                let g = generator_of(l);
                if counts[&g] != 1 {
                    continue;
                }
                // rotate so the generator comes first: g^e w = 1
                let rest: Word = r[j + 1..].iter().chain(&r[..j]).copied().collect();
                let by = if l > 0 { inverse(&rest) } else { rest };
                let new_total: usize = self
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, s)| cyclic_reduce(&substitute(s, g, &by)).len())
                    .sum();
                if new_total <= total && best.as_ref().is_none_or(|b| new_total < b.3) {
                    best = Some((i, g, by, new_total));
                }
            }
        }
        if let Some((i, g, by, _)) = best {
            self.relators.remove(i);
            self.eliminate(g, by, None);
            return true;
        }
        false
    }
}

/// Applies length-non-increasing Tietze moves until none applies or the
/// budget of moves is spent.
pub fn tietze_simplify(p: &GroupPresentation, effort_budget: usize) -> GroupPresentation {
    tietze_simplify_with_map(p, effort_budget).presentation
}

pub fn tietze_simplify_with_map(p: &GroupPresentation, effort_budget: usize) -> Simplification {
    let mut s = Simplifier {
        alive: vec![true; p.generators],
        relators: p.relators.iter().map(|r| cyclic_reduce(r)).collect(),
        expressions: (0..p.generators).map(|g| vec![letter(g, false)]).collect(),
    };
    let mut spent = 0;
    while spent < effort_budget && s.step() {
        spent += 1;
    }
    s.tidy();
    let mut renumber = vec![usize::MAX; p.generators];
    let mut next = 0;
    for g in 0..p.generators {
        if s.alive[g] {
            renumber[g] = next;
            next += 1;
        }
    }
    let map = |w: &Word| -> Word { w.iter().map(|&l| letter(renumber[generator_of(l)], l < 0)).collect() };
    let mut relators: Vec<Word> = s
        .relators
        .iter()
        .map(|r| {
            let w = map(r);
            if w.iter().filter(|&&l| l < 0).count() * 2 > w.len() {
                inverse(&w)
            } else {
                w
            }
        })
        .collect();
    relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Simplification {
        presentation: GroupPresentation { generators: next, relators, provenance: None },
        expressions: s.expressions.iter().map(map).collect(),
    }
}

pub const DEFAULT_TIETZE_EFFORT: usize = 100_000;

fn exponent_matrix(p: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators.len(), p.generators);
    for (i, r) in p.relators.iter().enumerate() {
        for &l in r {
            m[(i, generator_of(l))] += l.signum() as i64;
        }
    }
    m
}

/// Free rank and torsion of the abelianized group.
pub fn abelianization(p: &GroupPresentation) -> GroupInvariants {
    let snf = smith_normal_form(&exponent_matrix(p));
    GroupInvariants { betti: p.generators - snf.rank, torsion: snf.torsion() }
}

/// A permutation of {0, …, n-1} stored as its image list.
pub type Permutation = Vec<u8>;

fn compose(a: &[u8], b: &[u8]) -> Permutation {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u8]) -> Permutation {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn identity(n: usize) -> Permutation {
    (0..n as u8).collect()
}

fn is_identity(a: &[u8]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x as usize)
}

fn is_even(a: &[u8]) -> bool {
    let mut seen = vec![false; a.len()];
    let mut transpositions = 0;
    for i in 0..a.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = a[j] as usize;
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    transpositions % 2 == 0
}

/// The image of a word under generator images.
pub fn evaluate(w: &[Letter], images: &[Permutation], n: usize) -> Permutation {
    let mut acc = identity(n);
    for &l in w {
        let img = &images[generator_of(l)];
        acc = if l > 0 { compose(&acc, img) } else { compose(&acc, &invert(img)) };
    }
    acc
}

/// Bounds on the finite-quotient search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSearch {
    /// Largest n for which homomorphisms to S_n are searched.
    pub max_degree: usize,
    /// Maximum number of partial assignments visited, over all degrees.
    pub node_budget: usize,
}

impl Default for QuotientSearch {
    fn default() -> Self {
        QuotientSearch { max_degree: 5, node_budget: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NotFreeCertificate {
    /// H₁ has torsion; free groups have free abelianization.
    TorsionInH1 {
        #[serde(serialize_with = "ser_big")]
        coefficient: BigInt,
        #[serde(serialize_with = "ser_bigs")]
        invariant_factors: Vec<BigInt>,
    },
    /// Perfect group with a nontrivial homomorphism to S_n; a nontrivial
    /// perfect group is not free. Images are given for the generators of
    /// the presentation the verdict was computed from.
    PerfectAndNontrivialQuotient { degree: usize, images: Vec<Permutation> },
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FreenessVerdict {
    Free { rank: usize },
    NotFree { certificate: NotFreeCertificate },
    Unknown { reason: String },
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessVerdict::Free { .. })
    }

    pub fn is_not_free(&self) -> bool {
        matches!(self, FreenessVerdict::NotFree { .. })
    }

    /// Same variant, ignoring certificate details.
    pub fn same_kind(&self, other: &FreenessVerdict) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// Re-checks a NOT_FREE certificate against the presentation; other
    /// verdicts carry nothing to check and return true.
    pub fn validate(&self, p: &GroupPresentation) -> bool {
        match self {
            FreenessVerdict::NotFree { certificate: NotFreeCertificate::TorsionInH1 { coefficient, .. } } => {
                let snf = smith_normal_form(&exponent_matrix(p));
                *coefficient > BigInt::one()
                    && snf.invariant_factors.iter().any(|f| !f.is_zero() && f.is_multiple_of(coefficient))
            }
            FreenessVerdict::NotFree {
                certificate: NotFreeCertificate::PerfectAndNontrivialQuotient { degree, images },
            } => {
                let n = *degree;
                images.len() == p.generators
                    && images.iter().all(|img| {
                        let mut sorted = img.clone();
                        sorted.sort_unstable();
                        sorted == identity(n)
                    })
                    && images.iter().any(|img| !is_identity(img))
                    && p.relators.iter().all(|r| is_identity(&evaluate(r, images, n)))
                    && abelianization(p).is_trivial()
            }
            _ => true,
        }
    }
}

impl fmt::Display for FreenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreenessVerdict::Free { rank } => write!(f, "FREE({rank})"),
            FreenessVerdict::NotFree { certificate: NotFreeCertificate::TorsionInH1 { coefficient, .. } } => {
                write!(f, "NOT_FREE(torsion Z_{coefficient} in H_1)")
            }
            FreenessVerdict::NotFree {
                certificate: NotFreeCertificate::PerfectAndNontrivialQuotient { degree, .. },
            } => write!(f, "NOT_FREE(perfect with nontrivial quotient in S_{degree})"),
            FreenessVerdict::Unknown { reason } => write!(f, "UNKNOWN({reason})"),
        }
    }
}

fn permutations(n: usize) -> Vec<Permutation> {
    (0..n as u8).permutations(n).collect()
}

/// Searches for a nontrivial homomorphism to S_n. Since the search is only
/// run on perfect groups, images are restricted to even permutations.
/// Returns `Err(())` when the node budget runs out.
fn find_quotient(
    p: &GroupPresentation,
    n: usize,
    nodes: &AtomicUsize,
    budget: usize,
) -> std::result::Result<Option<Vec<Permutation>>, ()> {
    let g = p.generators;
    if g == 0 || n < 2 {
        return Ok(None);
    }
    let elements: Vec<Permutation> = permutations(n).into_iter().filter(|a| is_even(a)).collect();
    // relators become checkable once their largest generator is assigned
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); g];
    for r in &p.relators {
        if let Some(top) = r.iter().map(|&l| generator_of(l)).max() {
            checks[top].push(r);
        }
    }
    let exhausted = AtomicUsize::new(0);

    fn extend(
        assigned: &mut Vec<Permutation>,
        elements: &[Permutation],
        checks: &[Vec<&Word>],
        n: usize,
        nodes: &AtomicUsize,
        budget: usize,
        exhausted: &AtomicUsize,
    ) -> Option<Vec<Permutation>> {
        let j = assigned.len() - 1;
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            exhausted.store(1, Ordering::Relaxed);
            return None;
        }
        if !checks[j].iter().all(|r| is_identity(&evaluate(r, assigned, n))) {
            return None;
        }
        if assigned.len() == checks.len() {
            return assigned.iter().any(|a| !is_identity(a)).then(|| assigned.clone());
        }
        for e in elements {
            assigned.push(e.clone());
            if let Some(found) = extend(assigned, elements, checks, n, nodes, budget, exhausted) {
                return Some(found);
            }
            assigned.pop();
            if exhausted.load(Ordering::Relaxed) == 1 {
                return None;
            }
        }
        None
    }

    let found = elements.par_iter().find_map_first(|first| {
        let mut assigned = vec![first.clone()];
        extend(&mut assigned, &elements, &checks, n, nodes, budget, &exhausted)
    });
    match found {
        Some(f) => Ok(Some(f)),
        None if exhausted.load(Ordering::Relaxed) == 1 => Err(()),
        None => Ok(None),
    }
}

/// Sound three-valued verdict on whether the presented group is free.
pub fn freeness_verdict(p: &GroupPresentation, search: QuotientSearch) -> FreenessVerdict {
    let simp = tietze_simplify_with_map(p, DEFAULT_TIETZE_EFFORT);
    if simp.presentation.relators.is_empty() {
        return FreenessVerdict::Free { rank: simp.presentation.generators };
    }
    let ab = abelianization(p);
    if let Some(t) = ab.torsion.first() {
        let snf = smith_normal_form(&exponent_matrix(p));
        return FreenessVerdict::NotFree {
            certificate: NotFreeCertificate::TorsionInH1 {
                coefficient: t.clone(),
                invariant_factors: snf.invariant_factors,
            },
        };
    }
    if !ab.is_trivial() {
        return FreenessVerdict::Unknown {
            reason: format!("abelianization {ab} is free and relators remain after simplification"),
        };
    }
    let nodes = AtomicUsize::new(0);
    for n in 2..=search.max_degree {
        match find_quotient(&simp.presentation, n, &nodes, search.node_budget) {
            Ok(Some(images)) => {
                let lifted: Vec<Permutation> =
                    simp.expressions.iter().map(|w| evaluate(w, &images, n)).collect();
                let verdict = FreenessVerdict::NotFree {
                    certificate: NotFreeCertificate::PerfectAndNontrivialQuotient { degree: n, images: lifted },
                };
                debug_assert!(verdict.validate(p));
                return verdict;
            }
            Ok(None) => {}
            Err(()) => {
                return FreenessVerdict::Unknown {
                    reason: format!("perfect group; quotient search budget exhausted at S_{n}"),
                }
            }
        }
    }
    FreenessVerdict::Unknown {
        reason: format!("perfect group with no nontrivial quotient in S_n for n <= {}", search.max_degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{homology, Coefficients};

    fn cycle(n: usize) -> SimplicialComplex {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        SimplicialComplex::from_facets((0..n).map(|i| vec![names[i].clone(), names[(i + 1) % n].clone()])).unwrap()
    }

    fn icosahedral() -> GroupPresentation {
        GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2, 2], power(&[1, 2], 5)]).unwrap()
    }

    #[test]
    fn word_reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(power(&[1, 2], -2), vec![-2, -1, -2, -1]);
        assert_eq!(canonical_relator(&[2, 1]), canonical_relator(&[-1, -2]));
    }

    #[test]
    fn four_cycle_is_free_of_rank_one() {
        let p = edge_path_presentation(&cycle(4)).unwrap();
        assert_eq!(p.generators(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(abelianization(&p), GroupInvariants::free(1));
        assert_eq!(freeness_verdict(&p, QuotientSearch::default()), FreenessVerdict::Free { rank: 1 });
        assert_eq!(p.to_string(), "⟨a | ⟩");
    }

    #[test]
    fn tetrahedron_boundary_simplifies_to_trivial() {
        let p = edge_path_presentation(&fixtures::boundary_simplex(2).unwrap()).unwrap();
        assert_eq!(p.generators(), 3);
        assert_eq!(p.relators().len(), 4);
        let s = tietze_simplify(&p, 100);
        assert_eq!((s.generators(), s.relators().len()), (0, 0));
        assert_eq!(freeness_verdict(&p, QuotientSearch::default()), FreenessVerdict::Free { rank: 0 });
    }

    #[test]
    fn tietze_examples() {
        let p = GroupPresentation::new(2, vec![vec![1]]).unwrap();
        let s = tietze_simplify(&p, 10);
        assert_eq!((s.generators(), s.relators().len()), (1, 0));
        assert_eq!(s.to_string(), "⟨a | ⟩");
        let rp2 = edge_path_presentation(&fixtures::rp2_6()).unwrap();
        let s = tietze_simplify(&rp2, 1000);
        assert_eq!(s.generators(), 1);
        assert_eq!(s.relators().len(), 1);
        assert_eq!(s.relators()[0].len(), 2);
        assert_eq!(s.to_string(), "⟨a | a^2⟩");
    }

    #[test]
    fn tietze_budget_zero_only_tidies() {
        let p = GroupPresentation::new(2, vec![vec![], vec![1, 2], vec![2, 1]]).unwrap();
        let s = tietze_simplify(&p, 0);
        assert_eq!(s.generators(), 2);
        assert_eq!(s.relators().len(), 1);
    }

    #[test]
    fn expressions_track_eliminated_generators() {
        // a = b^-1 from the relator a b
        let p = GroupPresentation::new(2, vec![vec![1, 2], vec![1, 1, 1]]).unwrap();
        let s = tietze_simplify_with_map(&p, 10);
        assert_eq!(s.presentation.generators(), 1);
        assert_eq!(s.expressions, vec![vec![-1], vec![1]]);
        assert_eq!(s.presentation.relators(), &[vec![1, 1, 1]]);
    }

    #[test]
    fn abelianization_examples() {
        let free2 = GroupPresentation::new(2, vec![]).unwrap();
        assert_eq!(abelianization(&free2), GroupInvariants::free(2));
        let z2 = GroupPresentation::new(1, vec![vec![1, 1]]).unwrap();
        assert_eq!(abelianization(&z2).to_string(), "Z_2");
        let rp2 = edge_path_presentation(&fixtures::rp2_6()).unwrap();
        let h1 = homology(&fixtures::rp2_6(), Coefficients::Integers).unwrap().group(1).clone();
        assert_eq!(abelianization(&rp2), h1);
    }

    #[test]
    fn projective_plane_is_not_free() {
        let p = edge_path_presentation(&fixtures::rp2_6()).unwrap();
        let v = freeness_verdict(&p, QuotientSearch::default());
        match &v {
            FreenessVerdict::NotFree { certificate: NotFreeCertificate::TorsionInH1 { coefficient, .. } } => {
                assert_eq!(*coefficient, BigInt::from(2));
            }
            other => panic!("{other:?}"),
        }
        assert!(v.validate(&p));
        assert_eq!(v.to_string(), "NOT_FREE(torsion Z_2 in H_1)");
    }

    #[test]
    fn icosahedral_group_maps_onto_a5() {
        let p = icosahedral();
        assert!(abelianization(&p).is_trivial());
        let v = freeness_verdict(&p, QuotientSearch::default());
        let FreenessVerdict::NotFree {
            certificate: NotFreeCertificate::PerfectAndNontrivialQuotient { degree, images },
        } = &v
        else {
            panic!("{v:?}")
        };
        assert_eq!(*degree, 5);
        for r in p.relators() {
            assert!(is_identity(&evaluate(r, images, 5)));
        }
        assert!(v.validate(&p));
        // tampering breaks the certificate
        let mut bad = v.clone();
        if let FreenessVerdict::NotFree {
            certificate: NotFreeCertificate::PerfectAndNontrivialQuotient { images, .. },
        } = &mut bad
        {
            images[0] = identity(5);
        }
        assert!(!bad.validate(&p));
    }

    #[test]
    fn small_budget_gives_unknown() {
        let v = freeness_verdict(&icosahedral(), QuotientSearch { max_degree: 5, node_budget: 10 });
        assert!(matches!(v, FreenessVerdict::Unknown { .. }), "{v:?}");
        let v = freeness_verdict(&icosahedral(), QuotientSearch { max_degree: 4, node_budget: 1_000_000 });
        assert!(matches!(v, FreenessVerdict::Unknown { .. }), "{v:?}");
    }

    #[test]
    fn torus_is_unknown() {
        let p = edge_path_presentation(&fixtures::torus_7()).unwrap();
        assert_eq!(abelianization(&p), GroupInvariants::free(2));
        assert!(matches!(freeness_verdict(&p, QuotientSearch::default()), FreenessVerdict::Unknown { .. }));
    }

    #[test]
    fn random_trees_agree() {
        let k = fixtures::rp2_6();
        for seed in 0..5 {
            let p = edge_path_presentation_with(&k, SpanningTree::Random(seed)).unwrap();
            assert_eq!(p.provenance().unwrap().tree_edges.len(), 5);
            assert!(freeness_verdict(&p, QuotientSearch::default()).is_not_free());
        }
    }

    #[test]
    fn errors() {
        let two = SimplicialComplex::from_facets([["a", "b"], ["c", "d"]]).unwrap();
        assert!(matches!(edge_path_presentation(&two), Err(Error::Complex(ComplexError::Disconnected))));
        assert!(GroupPresentation::new(1, vec![vec![2]]).is_err());
        assert!(GroupPresentation::new(1, vec![vec![0]]).is_err());
    }

    #[test]
    fn parity() {
        assert!(is_even(&[0, 1, 2]));
        assert!(!is_even(&[1, 0, 2]));
        assert!(is_even(&[1, 2, 0]));
        assert_eq!(permutations(5).iter().filter(|p| is_even(p)).count(), 60);
    }
}
