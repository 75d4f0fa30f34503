//! Clique-complex tests on facet lists, intersection data and reconstruction
//! from the facet-adjacency matrix.

mod canonical;
mod counterexample;
mod intersection;

pub use canonical::{canonical_form, CanonicalKey, FacetLabels, DEFAULT_CANONICAL_LIMIT};
pub use counterexample::{counterexample_base, generate_counterexample, CounterexamplePair};
pub use intersection::{
    intersection_data, reconstruct_from_adjacency, vertex_data_from_full_intersection_data,
    IntersectionData, Reconstruction, ReconstructionCheck, MAX_FULL_DATA_FACETS,
};

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::complex::{SimplicialComplex, Verdict};
use crate::error::{Error, Result};

/// Facets as bitsets over the complex's vertex columns.
pub(crate) struct FacetSets {
    labels: Vec<u32>,
    sets: Vec<FixedBitSet>,
}

impl FacetSets {
    pub(crate) fn new(complex: &SimplicialComplex) -> Self {
        let labels = complex.vertex_labels();
        let index = complex.label_index();
        let sets = complex
            .facets()
            .iter()
            .map(|f| {
                let mut set = FixedBitSet::with_capacity(labels.len());
                for v in f {
                    set.insert(index[v]);
                }
                set
            })
            .collect();
        Self { labels, sets }
    }

    pub(crate) fn len(&self) -> usize {
        self.sets.len()
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn get(&self, i: usize) -> &FixedBitSet {
        &self.sets[i]
    }

    fn is_face(&self, set: &FixedBitSet) -> bool {
        set.is_clear() || self.sets.iter().any(|f| set.is_subset(f))
    }

    fn to_labels(&self, set: &FixedBitSet) -> Vec<u32> {
        let mut out: Vec<u32> = set.ones().map(|j| self.labels[j]).collect();
        out.sort_unstable();
        out
    }

    /// `(Fi∩Fj) ∪ (Fi∩Fk) ∪ (Fj∩Fk)`.
    fn pairwise_union(&self, i: usize, j: usize, k: usize) -> FixedBitSet {
        let (a, b, c) = (&self.sets[i], &self.sets[j], &self.sets[k]);
        let mut out = a & b;
        out.union_with(&(a & c));
        out.union_with(&(b & c));
        out
    }
}

fn check_index(i: usize, q: usize) -> Result<()> {
    if i < q {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, q })
    }
}

/// The union of the three pairwise intersections of facets `i`, `j`, `k`.
pub fn pairwise_union_face(
    complex: &SimplicialComplex,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Vec<u32>> {
    let q = complex.facet_count();
    for idx in [i, j, k] {
        check_index(idx, q)?;
    }
    if i == j || i == k || j == k {
        return Err(Error::InvalidParameter(format!(
            "facet indices must be distinct, got ({i}, {j}, {k})"
        )));
    }
    let sets = FacetSets::new(complex);
    Ok(sets.to_labels(&sets.pairwise_union(i, j, k)))
}

/// The empty set and every subset of a facet are faces.
pub fn is_face(complex: &SimplicialComplex, vertices: &[u32]) -> bool {
    complex.contains_face(vertices)
}

/// Facet-only clique test: every facet triple's pairwise-intersection union
/// must be a face. Fails with the lexicographically first offending triple.
pub fn is_clique_complex_by_theorem(complex: &SimplicialComplex) -> Verdict<[usize; 3]> {
    let sets = FacetSets::new(complex);
    for (i, j, k) in (0..sets.len()).tuple_combinations() {
        if !sets.is_face(&sets.pairwise_union(i, j, k)) {
            return Verdict::Fails([i, j, k]);
        }
    }
    Verdict::Holds
}

/// Clique test through the 1-skeleton: the facets must be exactly the
/// maximal cliques of the graph whose edges are the pairs inside a facet.
pub fn is_clique_complex_by_skeleton(complex: &SimplicialComplex) -> bool {
    let sets = FacetSets::new(complex);
    let n = sets.vertex_count();
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for facet in &sets.sets {
        for u in facet.ones() {
            adjacency[u].union_with(facet);
        }
    }
    for (u, row) in adjacency.iter_mut().enumerate() {
        row.set(u, false);
    }

    let mut cliques: Vec<Vec<usize>> = maximal_cliques(&adjacency)
        .iter()
        .map(|c| c.ones().collect())
        .collect();
    let mut facets: Vec<Vec<usize>> = sets.sets.iter().map(|f| f.ones().collect()).collect();
    cliques.sort();
    facets.sort();
    cliques == facets
}

/// Maximal cliques of a graph given as neighbour bitsets, by Bron–Kerbosch
/// with pivoting. Vertices are visited in ascending order.
pub fn maximal_cliques(adjacency: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = adjacency.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut out = Vec::new();
    bron_kerbosch(
        adjacency,
        FixedBitSet::with_capacity(n),
        all,
        FixedBitSet::with_capacity(n),
        &mut out,
    );
    out
}

fn bron_kerbosch(
    adjacency: &[FixedBitSet],
    current: FixedBitSet,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(current);
        }
        return;
    }
    // pivot maximizing the candidates it covers
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| {
            (
                candidates.intersection(&adjacency[u]).count(),
                std::cmp::Reverse(u),
            )
        })
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates.difference(&adjacency[pivot]).collect();
    for v in branch {
        let mut next = current.clone();
        next.insert(v);
        let next_candidates = &candidates & &adjacency[v];
        let next_excluded = &excluded & &adjacency[v];
        bron_kerbosch(adjacency, next, next_candidates, next_excluded, out);
        candidates.set(v, false);
        excluded.insert(v);
    }
}

/// `F_{i1…iℓ}`: the union over all `(ℓ−1)`-subsets of the chosen facets of
/// their common intersection, with whether it is a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedFace {
    pub vertices: Vec<u32>,
    pub is_face: bool,
}

pub fn generalized_face(complex: &SimplicialComplex, indices: &[usize]) -> Result<GeneralizedFace> {
    let q = complex.facet_count();
    for &i in indices {
        check_index(i, q)?;
    }
    let indices: Vec<usize> = indices.iter().copied().sorted().dedup().collect();
    if indices.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 distinct facet indices, got {}",
            indices.len()
        )));
    }
    let sets = FacetSets::new(complex);
    let mut union = FixedBitSet::with_capacity(sets.vertex_count());
    for subset in indices.iter().combinations(indices.len() - 1) {
        let mut common = sets.get(*subset[0]).clone();
        for &&i in &subset[1..] {
            common.intersect_with(sets.get(i));
        }
        union.union_with(&common);
    }
    Ok(GeneralizedFace {
        is_face: sets.is_face(&union),
        vertices: sets.to_labels(&union),
    })
}

/// First facet triple (lexicographic) where each facet misses a vertex that
/// the other two share.
pub fn has_triangle_intersection(complex: &SimplicialComplex) -> Option<[usize; 3]> {
    let sets = FacetSets::new(complex);
    let residual_nonempty = |shared_a: usize, shared_b: usize, missing: usize| {
        let both = sets.get(shared_a) & sets.get(shared_b);
        both.difference(sets.get(missing)).next().is_some()
    };
    (0..sets.len())
        .tuple_combinations()
        .find(|&(a, b, c)| {
            residual_nonempty(b, c, a) && residual_nonempty(a, c, b) && residual_nonempty(a, b, c)
        })
        .map(|(a, b, c)| [a, b, c])
}
