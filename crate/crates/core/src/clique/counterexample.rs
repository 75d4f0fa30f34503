//! Pairs of pure clique complexes that agree on intersection data up to a
//! chosen degree `k` yet are not isomorphic.
//!
//! The unpadded members have `k + 1` facets with symmetric vertex data:
//! every pattern with an odd number of facets holds one vertex in `K`, every
//! pattern with an even (nonzero) number holds one vertex in `K′`. Both are
//! then closed off by a covering facet and padded with private vertices
//! until every facet has the same size.

use super::intersection::intersection_data;
use super::{canonical_form, is_clique_complex_by_theorem, FacetLabels, DEFAULT_CANONICAL_LIMIT};
use crate::complex::{
    facets_from_incidence, incidence_from_vertex_data, SimplicialComplex, VertexData,
};
use crate::error::{Error, Result};

/// Largest supported `k`; the padded complexes have `2^k + (k+1)·2^(k−1)` vertices.
pub const MAX_COUNTEREXAMPLE_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexamplePair {
    pub k: usize,
    pub complex: SimplicialComplex,
    pub prime: SimplicialComplex,
    /// Intersection data agree for all subsets up to this size.
    pub agreement_degree: usize,
    /// 0-based facet indices `0..=k` where the two disagree.
    pub disagreement: Vec<usize>,
    pub verified: bool,
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 3, got {k}"
        )));
    }
    if k > MAX_COUNTEREXAMPLE_K {
        return Err(Error::LimitExceeded {
            what: "k",
            got: k,
            limit: MAX_COUNTEREXAMPLE_K,
        });
    }
    Ok(())
}

/// The two unpadded complexes on `k + 1` facets, vertices numbered by
/// incidence column.
pub fn counterexample_base(k: usize) -> Result<(SimplicialComplex, SimplicialComplex)> {
    check_k(k)?;
    let q = k + 1;
    let build = |odd: bool| -> Result<SimplicialComplex> {
        let counts = (1u64..1 << q)
            .filter(|a| (a.count_ones() % 2 == 1) == odd)
            .map(|a| (a, 1));
        let data = VertexData::new(q, counts)?;
        Ok(facets_from_incidence(&incidence_from_vertex_data(&data)?))
    };
    Ok((build(true)?, build(false)?))
}

/// Adds the covering facet of size `v` and pads facets `1..=k+1` with
/// private vertices. Fresh labels start at `v + 1`, facet by facet.
fn pad(base: &SimplicialComplex, v: usize, facet_size: usize) -> SimplicialComplex {
    let n = base.vertex_count();
    let mut facets: Vec<Vec<u32>> = base.facets().to_vec();
    let cover: Vec<u32> = (1..=v as u32).collect();
    debug_assert!(n <= v);
    let mut next = v as u32 + 1;
    for facet in facets.iter_mut() {
        for _ in 0..(v - facet_size) {
            facet.push(next);
            next += 1;
        }
    }
    facets.push(cover);
    SimplicialComplex::new(facets).expect("padded facets form an antichain")
}

pub fn generate_counterexample(k: usize) -> Result<CounterexamplePair> {
    let (base, base_prime) = counterexample_base(k)?;
    let v = base.vertex_count().max(base_prime.vertex_count());
    let s1 = base.facet(0).len();
    debug_assert!(base
        .facets()
        .iter()
        .chain(base_prime.facets())
        .all(|f| f.len() == s1));

    let complex = pad(&base, v, s1);
    let prime = pad(&base_prime, v, s1);
    let pair = CounterexamplePair {
        k,
        complex,
        prime,
        agreement_degree: k,
        disagreement: (0..=k).collect(),
        verified: false,
    };
    verify(&pair)?;
    Ok(CounterexamplePair {
        verified: true,
        ..pair
    })
}

/// Checks every pair invariant; the error names the first that fails.
fn verify(pair: &CounterexamplePair) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::Inconsistent(format!(
            "counterexample k={}: {what}",
            pair.k
        )))
    };
    let (a, b) = (&pair.complex, &pair.prime);
    let q = pair.k + 2;
    if a.facet_count() != q || b.facet_count() != q {
        return fail("wrong facet count");
    }
    match (a.purity(), b.purity()) {
        (Some(p), Some(p2)) if p == p2 => {}
        _ => return fail("members are not pure of equal purity"),
    }
    if !is_clique_complex_by_theorem(a).holds() || !is_clique_complex_by_theorem(b).holds() {
        return fail("a member is not a clique complex");
    }
    let da = intersection_data(a, q)?;
    let db = intersection_data(b, q)?;
    if da
        .iter()
        .zip(db.iter())
        .any(|(x, y)| x.0.count_ones() as usize <= pair.k && x != y)
    {
        return fail("intersection data differ below the agreement degree");
    }
    if da.get_indices(&pair.disagreement) == db.get_indices(&pair.disagreement) {
        return fail("intersection data agree on the disagreement subset");
    }
    if q <= DEFAULT_CANONICAL_LIMIT {
        if canonical_form(a, FacetLabels::Free, DEFAULT_CANONICAL_LIMIT)?
            == canonical_form(b, FacetLabels::Free, DEFAULT_CANONICAL_LIMIT)?
        {
            return fail("members are isomorphic");
        }
    } else {
        // any facet relabeling preserves the multiset of degree-(k+1) values
        let multiset = |d: &super::IntersectionData| {
            let mut vals: Vec<u64> = d.degree(pair.k + 1).map(|(_, v)| v).collect();
            vals.sort_unstable();
            vals
        };
        if multiset(&da) == multiset(&db) {
            return fail("degree-(k+1) multisets coincide");
        }
    }
    Ok(())
}
