//! Brute-force oracles: every `p`-pure complex with `q` facets on exactly
//! `n` labeled vertices, generated as `q`-subsets of the `p`-subsets of
//! `[n]` that cover `[n]`.
//!
//! Facets are `u64` masks, so `n ≤ 64`.

use std::ops::RangeInclusive;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clique::{
    has_triangle_intersection, is_clique_complex_by_skeleton, is_clique_complex_by_theorem,
};
use crate::complex::SimplicialComplex;
use crate::counting::{binomial, binomial_big, min_vertices};
use crate::error::{Error, Result};

/// Default cap on candidate `q`-subsets per invocation.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Default cap on rejection-sampling attempts.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 100_000;

/// Which complexes an enumeration keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    None,
    Clique,
    CliqueTriangleFree,
}

/// Which clique predicate a filter applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CliqueTest {
    /// Facet-triple test.
    #[default]
    Theorem,
    /// Maximal cliques of the 1-skeleton.
    Skeleton,
}

impl Filter {
    pub fn accepts(self, complex: &SimplicialComplex, test: CliqueTest) -> bool {
        let clique = || match test {
            CliqueTest::Theorem => is_clique_complex_by_theorem(complex).holds(),
            CliqueTest::Skeleton => is_clique_complex_by_skeleton(complex),
        };
        match self {
            Filter::None => true,
            Filter::Clique => clique(),
            Filter::CliqueTriangleFree => clique() && has_triangle_intersection(complex).is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationTask {
    pub p: usize,
    pub q: usize,
    pub n_range: RangeInclusive<usize>,
    pub filter: Filter,
    pub clique_test: CliqueTest,
    pub budget: u128,
}

impl EnumerationTask {
    /// Task over the full vertex range `n₀..=pq`.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameter(
                "purity and facet count must be positive".into(),
            ));
        }
        if p * q > 64 {
            return Err(Error::LimitExceeded {
                what: "p·q",
                got: p * q,
                limit: 64,
            });
        }
        let lo = min_vertices(p as u64, q as u64) as usize;
        Ok(Self {
            p,
            q,
            n_range: lo..=p * q,
            filter: Filter::None,
            clique_test: CliqueTest::Theorem,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Restricts the vertex range; it must lie inside `n₀..=pq`.
    pub fn with_range(mut self, range: RangeInclusive<usize>) -> Result<Self> {
        let full = self.full_range();
        if range.start() < full.start() || range.end() > full.end() || range.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "vertex range {}..={} must lie within {}..={}",
                range.start(),
                range.end(),
                full.start(),
                full.end()
            )));
        }
        self.n_range = range;
        Ok(self)
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_clique_test(mut self, test: CliqueTest) -> Self {
        self.clique_test = test;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn full_range(&self) -> RangeInclusive<usize> {
        min_vertices(self.p as u64, self.q as u64) as usize..=self.p * self.q
    }

    /// `Σ_n C(C(n,p), q)` over the range, saturating.
    pub fn projected_work(&self) -> u128 {
        let total: BigUint = self
            .n_range
            .clone()
            .map(|n| binomial_big(&binomial(n as u64, self.p as u64), self.q as u64))
            .sum();
        total.to_u128().unwrap_or(u128::MAX)
    }

    fn check_budget(&self) -> Result<()> {
        let projected = self.projected_work();
        if projected > self.budget {
            return Err(Error::BudgetExceeded {
                projected,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// `p`-subsets of `{0..n}` as masks, in lexicographic order.
fn subset_masks(n: usize, p: usize) -> Vec<u64> {
    (0..n)
        .combinations(p)
        .map(|c| c.into_iter().fold(0u64, |m, v| m | 1 << v))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Complex on labels `1..=n` from facet masks.
pub fn complex_from_masks(masks: &[u64]) -> SimplicialComplex {
    let facets = masks
        .iter()
        .map(|&m| {
            (0..64)
                .filter(|&v| m >> v & 1 == 1)
                .map(|v| v as u32 + 1)
                .collect()
        })
        .collect();
    SimplicialComplex::new(facets).expect("distinct equal-size facets form an antichain")
}

/// Per-`n` counts and their total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationCounts {
    pub per_n: Vec<(usize, u64)>,
    pub total: u64,
}

impl EnumerationCounts {
    pub fn at(&self, n: usize) -> u64 {
        self.per_n
            .iter()
            .find(|&&(m, _)| m == n)
            .map_or(0, |&(_, c)| c)
    }
}

/// Counts the complexes in the task's space. Work is split across rayon
/// workers by the index of the first facet; the reduction is a plain sum.
pub fn count(task: &EnumerationTask) -> Result<EnumerationCounts> {
    task.check_budget()?;
    let per_n: Vec<(usize, u64)> = task
        .n_range
        .clone()
        .map(|n| (n, count_at(task, n)))
        .collect();
    let total = per_n.iter().map(|&(_, c)| c).sum();
    Ok(EnumerationCounts { per_n, total })
}

fn count_at(task: &EnumerationTask, n: usize) -> u64 {
    let facets = subset_masks(n, task.p);
    let target = full_mask(n);
    let q = task.q;
    if facets.len() < q {
        return 0;
    }
    (0..=facets.len() - q)
        .into_par_iter()
        .map(|first| {
            let mut chosen = Vec::with_capacity(q);
            chosen.push(facets[first]);
            let mut found = 0;
            extend_cover(
                task,
                &facets,
                target,
                first + 1,
                facets[first],
                &mut chosen,
                &mut found,
            );
            found
        })
        .sum()
}

fn extend_cover(
    task: &EnumerationTask,
    facets: &[u64],
    target: u64,
    next: usize,
    union: u64,
    chosen: &mut Vec<u64>,
    found: &mut u64,
) {
    let left = task.q - chosen.len();
    if left == 0 {
        if union == target
            && (task.filter == Filter::None
                || task
                    .filter
                    .accepts(&complex_from_masks(chosen), task.clique_test))
        {
            *found += 1;
        }
        return;
    }
    // each further facet adds at most p new vertices
    if (union.count_ones() as usize) + left * task.p < target.count_ones() as usize {
        return;
    }
    for i in next..=facets.len() - left {
        chosen.push(facets[i]);
        extend_cover(
            task,
            facets,
            target,
            i + 1,
            union | facets[i],
            chosen,
            found,
        );
        chosen.pop();
    }
}

/// Streams the complexes in lexicographic order: by `n`, then by the
/// positions of the facets in the lexicographic list of `p`-subsets.
pub fn stream(task: &EnumerationTask) -> Result<impl Iterator<Item = SimplicialComplex>> {
    task.check_budget()?;
    let (p, q, filter, test) = (task.p, task.q, task.filter, task.clique_test);
    Ok(task.n_range.clone().flat_map(move |n| {
        Covers::new(subset_masks(n, p), full_mask(n), p, q)
            .map(|masks| complex_from_masks(&masks))
            .filter(move |k| filter.accepts(k, test))
    }))
}

/// Depth-first walk over increasing index tuples whose facets cover
/// `target`, pruning branches that cannot reach full cover.
struct Covers {
    facets: Vec<u64>,
    target: u64,
    p: usize,
    q: usize,
    chosen: Vec<usize>,
    unions: Vec<u64>,
    cursor: usize,
    done: bool,
}

impl Covers {
    fn new(facets: Vec<u64>, target: u64, p: usize, q: usize) -> Self {
        Self {
            facets,
            target,
            p,
            q,
            chosen: Vec::with_capacity(q),
            unions: Vec::with_capacity(q),
            cursor: 0,
            done: false,
        }
    }

    fn backtrack(&mut self) -> bool {
        match self.chosen.pop() {
            Some(i) => {
                self.unions.pop();
                self.cursor = i + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for Covers {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let needed = self.target.count_ones() as usize;
        while !self.done {
            let left = self.q - self.chosen.len();
            let union = self.unions.last().copied().unwrap_or(0);
            if left == 0 {
                let hit = (union == self.target)
                    .then(|| self.chosen.iter().map(|&i| self.facets[i]).collect());
                self.backtrack();
                if hit.is_some() {
                    return hit;
                }
                continue;
            }
            if self.cursor + left > self.facets.len()
                || (union.count_ones() as usize) + left * self.p < needed
            {
                if !self.backtrack() {
                    self.done = true;
                }
                continue;
            }
            self.chosen.push(self.cursor);
            self.unions.push(union | self.facets[self.cursor]);
            self.cursor += 1;
        }
        None
    }
}

/// Directly counts `k × m` 0/1 matrices, `p ≤ m ≤ pk`, with `p` ones per
/// row and no zero column.
pub fn enumerate_alignments(p: usize, k: usize, budget: u128) -> Result<u64> {
    if p == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "strip length and count must be positive".into(),
        ));
    }
    if p * k > 64 {
        return Err(Error::LimitExceeded {
            what: "p·k",
            got: p * k,
            limit: 64,
        });
    }
    let projected: BigUint = (p..=p * k)
        .map(|m| binomial(m as u64, p as u64).pow(k as u32))
        .sum();
    let projected = projected.to_u128().unwrap_or(u128::MAX);
    if projected > budget {
        return Err(Error::BudgetExceeded { projected, budget });
    }
    fn rows(strips: &[u64], target: u64, p: usize, left: usize, union: u64) -> u64 {
        if left == 0 {
            return (union == target) as u64;
        }
        if (union.count_ones() as usize) + left * p < target.count_ones() as usize {
            return 0;
        }
        strips
            .iter()
            .map(|&s| rows(strips, target, p, left - 1, union | s))
            .sum()
    }
    Ok((p..=p * k)
        .map(|m| rows(&subset_masks(m, p), full_mask(m), p, k, 0))
        .sum())
}

/// Rejection-samples a pure, triangle-intersection-free clique complex:
/// uniform `n` in `n₀..=pq`, then a uniform `q`-subset of the `p`-subsets of
/// `[n]`, kept once it covers `[n]` and passes both predicates.
pub fn random_pure_clique_tif(
    p: usize,
    q: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<SimplicialComplex> {
    let task = EnumerationTask::new(p, q)?;
    let range = task.full_range();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut covering, mut clique) = (0u64, 0u64);
    for _ in 0..max_attempts {
        let n = rng.gen_range(range.clone());
        let mut picked: Vec<Vec<usize>> = Vec::with_capacity(q);
        while picked.len() < q {
            let mut facet = rand::seq::index::sample(&mut rng, n, p).into_vec();
            facet.sort_unstable();
            if !picked.contains(&facet) {
                picked.push(facet);
            }
        }
        picked.sort();
        let masks: Vec<u64> = picked
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        if masks.iter().fold(0, |u, m| u | m) != full_mask(n) {
            continue;
        }
        covering += 1;
        let complex = complex_from_masks(&masks);
        if !is_clique_complex_by_theorem(&complex).holds() {
            continue;
        }
        clique += 1;
        if has_triangle_intersection(&complex).is_none() {
            return Ok(complex);
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: max_attempts,
        covering,
        clique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::s_pure;

    fn counted(p: usize, q: usize, filter: Filter) -> u64 {
        count(&EnumerationTask::new(p, q).unwrap().with_filter(filter))
            .unwrap()
            .total
    }

    #[test]
    fn count_examples() {
        assert_eq!(counted(2, 2, Filter::None), 6);
        assert_eq!(counted(2, 3, Filter::Clique), 61);
        assert_eq!(counted(3, 2, Filter::None), 31);
        assert_eq!(counted(3, 2, Filter::Clique), 31);
    }

    #[test]
    fn per_n_counts_match_formula() {
        let counts = count(&EnumerationTask::new(2, 3).unwrap()).unwrap();
        assert_eq!(counts.per_n.first().unwrap().0, 3);
        for &(n, c) in &counts.per_n {
            assert_eq!(s_pure(2, 3, n as u64), c, "n={n}");
        }
        assert_eq!(counts.at(3), 1);
        assert_eq!(counts.at(99), 0);
    }

    #[test]
    fn stream_agrees_with_count_and_is_lexicographic() {
        let task = EnumerationTask::new(2, 3)
            .unwrap()
            .with_filter(Filter::Clique);
        let all: Vec<_> = stream(&task).unwrap().collect();
        assert_eq!(all.len() as u64, count(&task).unwrap().total);
        let first = &all[0];
        assert_eq!(first.facets(), &[vec![1, 2], vec![1, 3], vec![1, 4]]);
        // deterministic
        let again: Vec<_> = stream(&task).unwrap().collect();
        assert_eq!(all, again);
    }

    #[test]
    fn unfiltered_stream_starts_with_the_triangle() {
        let task = EnumerationTask::new(2, 3).unwrap();
        let first = stream(&task).unwrap().next().unwrap();
        assert_eq!(first.facets(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn range_and_budget_guards() {
        let task = EnumerationTask::new(2, 3).unwrap();
        assert_eq!(task.n_range, 3..=6);
        assert!(task.clone().with_range(2..=4).is_err());
        assert!(task.clone().with_range(4..=7).is_err());
        let narrowed = task.clone().with_range(4..=4).unwrap();
        assert_eq!(
            count(&narrowed).unwrap().per_n,
            vec![(4, s_pure(2, 3, 4).to_u64().unwrap())]
        );
        let tight = task.with_budget(10);
        assert!(matches!(
            count(&tight),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
        assert!(EnumerationTask::new(0, 2).is_err());
        assert!(EnumerationTask::new(9, 8).is_err());
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(enumerate_alignments(3, 1, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(enumerate_alignments(2, 2, DEFAULT_BUDGET).unwrap(), 13);
        assert_eq!(enumerate_alignments(1, 2, DEFAULT_BUDGET).unwrap(), 3);
        assert!(enumerate_alignments(3, 3, 10).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let a = random_pure_clique_tif(2, 3, 1, DEFAULT_MAX_ATTEMPTS).unwrap();
        let b = random_pure_clique_tif(2, 3, 1, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert_eq!(a, b);
        assert!(is_clique_complex_by_theorem(&a).holds());
        assert!(has_triangle_intersection(&a).is_none());
        assert_eq!(a.purity(), Some(2));
        assert_eq!(a.facet_count(), 3);

        let c = random_pure_clique_tif(3, 2, 42, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert_eq!((c.purity(), c.facet_count()), (Some(3), 2));
    }

    #[test]
    fn sampler_reports_exhaustion() {
        let err = random_pure_clique_tif(1, 3, 0, 0).unwrap_err();
        assert_eq!(
            err,
            Error::AttemptsExhausted {
                attempts: 0,
                covering: 0,
                clique: 0
            }
        );
    }

    #[test]
    fn sampled_instance_reconstructs() {
        use crate::clique::{
            canonical_form, reconstruct_from_adjacency, FacetLabels, DEFAULT_CANONICAL_LIMIT,
        };
        use crate::complex::adjacency_from_complex;
        let k = random_pure_clique_tif(4, 4, 7, DEFAULT_MAX_ATTEMPTS).unwrap();
        let rebuilt = reconstruct_from_adjacency(&adjacency_from_complex(&k)).unwrap();
        assert!(rebuilt.verified());
        assert_eq!(
            canonical_form(
                &rebuilt.complex,
                FacetLabels::Fixed,
                DEFAULT_CANONICAL_LIMIT
            )
            .unwrap(),
            canonical_form(&k, FacetLabels::Fixed, DEFAULT_CANONICAL_LIMIT).unwrap()
        );
    }
}
