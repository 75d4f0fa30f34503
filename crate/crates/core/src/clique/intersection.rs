use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::{has_triangle_intersection, is_clique_complex_by_theorem, FacetSets};
use crate::complex::{
    adjacency_from_complex, facets_from_incidence, incidence_from_vertex_data,
    is_realizable_vertex_data, AdjacencyMatrix, SimplicialComplex, VertexData, MAX_PATTERN_FACETS,
};
use crate::error::{Error, Result};

/// Largest facet count for operations that touch all `2^q` facet subsets.
pub const MAX_FULL_DATA_FACETS: usize = 20;

/// Sizes `s_S = |∩_{i∈S} F_i|` for every nonempty facet subset `S` with
/// `|S| ≤ max_degree`. Subsets are `u64` masks, bit `i` for facet `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionData {
    q: usize,
    max_degree: usize,
    values: BTreeMap<u64, u64>,
}

impl IntersectionData {
    /// Validates that every subset up to `max_degree` is present, no larger
    /// subset is, and values shrink as subsets grow.
    pub fn new(q: usize, max_degree: usize, values: BTreeMap<u64, u64>) -> Result<Self> {
        if q == 0 || q > MAX_PATTERN_FACETS {
            return Err(Error::Malformed(format!("facet count {q} out of range")));
        }
        if max_degree == 0 || max_degree > q {
            return Err(Error::Malformed(format!(
                "degree {max_degree} must be between 1 and {q}"
            )));
        }
        for &mask in values.keys() {
            if mask == 0 || mask >> q != 0 {
                return Err(Error::Malformed(format!(
                    "subset {mask:#b} is not a nonempty subset of [{q}]"
                )));
            }
            if mask.count_ones() as usize > max_degree {
                return Err(Error::Malformed(format!(
                    "subset {} exceeds degree {max_degree}",
                    subset_key(mask)
                )));
            }
        }
        let expected: usize = (1..=max_degree).map(|d| binomial_usize(q, d)).sum();
        if values.len() != expected {
            return Err(Error::Malformed(format!(
                "expected {expected} subsets up to degree {max_degree}, got {}",
                values.len()
            )));
        }
        for (&mask, &value) in &values {
            for i in 0..q {
                let smaller = mask & !(1 << i);
                if smaller != mask && smaller != 0 && values[&smaller] < value {
                    return Err(Error::Inconsistent(format!(
                        "s_{{{}}} = {value} exceeds s_{{{}}} = {}",
                        subset_key(mask),
                        subset_key(smaller),
                        values[&smaller]
                    )));
                }
            }
        }
        Ok(Self {
            q,
            max_degree,
            values,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_complete(&self) -> bool {
        self.max_degree == self.q
    }

    pub fn get(&self, mask: u64) -> Option<u64> {
        self.values.get(&mask).copied()
    }

    /// Value at a subset given by 0-based facet indices.
    pub fn get_indices(&self, indices: &[usize]) -> Option<u64> {
        let mask = indices
            .iter()
            .try_fold(0u64, |acc, &i| (i < self.q).then(|| acc | 1 << i))?;
        self.get(mask)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values.iter().map(|(&m, &v)| (m, v))
    }

    /// Values of one degree, keyed by subset.
    pub fn degree(&self, d: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.iter()
            .filter(move |(m, _)| m.count_ones() as usize == d)
    }

    /// The facet-adjacency matrix carried by degrees 1 and 2.
    pub fn adjacency(&self) -> Option<AdjacencyMatrix> {
        if self.max_degree < 2 && self.q > 1 {
            return None;
        }
        let entries = (0..self.q)
            .map(|i| {
                (0..self.q)
                    .map(|j| self.values[&(1 << i | 1 << j)])
                    .collect()
            })
            .collect();
        AdjacencyMatrix::from_rows(entries).ok()
    }
}

/// Comma-joined 1-based facet indices, e.g. `"1,2,4"`.
pub(crate) fn subset_key(mask: u64) -> String {
    (0..64)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn binomial_usize(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Intersection sizes up to `max_degree`, by direct set intersection.
pub fn intersection_data(
    complex: &SimplicialComplex,
    max_degree: usize,
) -> Result<IntersectionData> {
    let q = complex.facet_count();
    if max_degree == 0 || max_degree > q {
        return Err(Error::InvalidParameter(format!(
            "degree must be between 1 and {q}, got {max_degree}"
        )));
    }
    if q > MAX_PATTERN_FACETS {
        return Err(Error::LimitExceeded {
            what: "facet count",
            got: q,
            limit: MAX_PATTERN_FACETS,
        });
    }
    let sets = FacetSets::new(complex);
    let mut values = BTreeMap::new();
    // depth-first over subsets with increasing indices, carrying the intersection
    fn extend(
        sets: &FacetSets,
        mask: u64,
        common: &FixedBitSet,
        next: usize,
        depth: usize,
        max_degree: usize,
        values: &mut BTreeMap<u64, u64>,
    ) {
        if depth == max_degree {
            return;
        }
        for i in next..sets.len() {
            let inter = common & sets.get(i);
            let m = mask | 1 << i;
            values.insert(m, inter.count_ones(..) as u64);
            extend(sets, m, &inter, i + 1, depth + 1, max_degree, values);
        }
    }
    let mut everything = FixedBitSet::with_capacity(sets.vertex_count());
    everything.insert_range(..);
    extend(&sets, 0, &everything, 0, 0, max_degree, &mut values);
    Ok(IntersectionData {
        q,
        max_degree,
        values,
    })
}

/// Recovers vertex data from complete intersection data by inclusion–exclusion:
/// `c(a) = Σ_{T ⊇ S(a)} (−1)^{|T|−|S(a)|} s_T`.
pub fn vertex_data_from_full_intersection_data(data: &IntersectionData) -> Result<VertexData> {
    if !data.is_complete() {
        return Err(Error::InvalidParameter(format!(
            "intersection data only reaches degree {} of {}",
            data.max_degree, data.q
        )));
    }
    vertex_data_by_mobius(data.q, |mask| data.values[&mask] as i128)
}

fn vertex_data_by_mobius(q: usize, value: impl Fn(u64) -> i128) -> Result<VertexData> {
    if q > MAX_FULL_DATA_FACETS {
        return Err(Error::LimitExceeded {
            what: "facet count",
            got: q,
            limit: MAX_FULL_DATA_FACETS,
        });
    }
    let size = 1usize << q;
    let mut g: Vec<i128> = (0..size as u64)
        .map(|m| if m == 0 { 0 } else { value(m) })
        .collect();
    // superset Möbius transform
    for i in 0..q {
        let bit = 1usize << i;
        for mask in 0..size {
            if mask & bit == 0 {
                g[mask] -= g[mask | bit];
            }
        }
    }
    let mut counts = Vec::new();
    for (mask, &c) in g.iter().enumerate().skip(1) {
        if c < 0 {
            return Err(Error::Inconsistent(format!(
                "inclusion-exclusion gives {c} vertices for pattern {}",
                crate::complex::pattern_word(q, mask as u64)
            )));
        }
        if c > 0 {
            counts.push((mask as u64, c as u64));
        }
    }
    let vertex_data = VertexData::new(q, counts)?;
    if let Some(defect) = is_realizable_vertex_data(&vertex_data).witness() {
        return Err(Error::Inconsistent(format!(
            "resulting vertex data is not realizable: {defect}"
        )));
    }
    Ok(vertex_data)
}

/// Self-check results for a reconstructed complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructionCheck {
    pub adjacency_matches: bool,
    pub pure: bool,
    pub clique: bool,
    pub triangle_free: bool,
}

impl ReconstructionCheck {
    pub fn verified(&self) -> bool {
        self.adjacency_matches && self.pure && self.clique && self.triangle_free
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub complex: SimplicialComplex,
    pub vertex_data: VertexData,
    pub check: ReconstructionCheck,
}

impl Reconstruction {
    pub fn verified(&self) -> bool {
        self.check.verified()
    }

    /// The complex, or an error when any self-check failed.
    pub fn into_verified(self) -> Result<SimplicialComplex> {
        if self.verified() {
            Ok(self.complex)
        } else {
            Err(Error::Inconsistent(format!(
                "reconstruction failed self-verification: {:?}",
                self.check
            )))
        }
    }
}

/// Rebuilds a complex from its facet-adjacency matrix, extending the
/// intersection data with `s_S = min_{i∈S} s_{S∖i}` for `|S| ≥ 3`.
///
/// This is exact for pure, triangle-intersection-free clique complexes. The
/// returned check records whether the output actually is one and maps back
/// to `Q`; errors mean no complex could be assembled at all.
pub fn reconstruct_from_adjacency(matrix: &AdjacencyMatrix) -> Result<Reconstruction> {
    let q = matrix.dim();
    if q > MAX_FULL_DATA_FACETS {
        return Err(Error::LimitExceeded {
            what: "facet count",
            got: q,
            limit: MAX_FULL_DATA_FACETS,
        });
    }
    let size = 1usize << q;
    let mut values = vec![0u64; size];
    // every proper sub-mask is numerically smaller, so one ascending pass suffices
    for mask in 1..size {
        let members: Vec<usize> = (0..q).filter(|&i| mask >> i & 1 == 1).collect();
        values[mask] = match members[..] {
            [i] => matrix.get(i, i),
            [i, j] => matrix.get(i, j),
            _ => members
                .iter()
                .map(|&i| values[mask & !(1 << i)])
                .min()
                .expect("at least three members"),
        };
    }
    let vertex_data = vertex_data_by_mobius(q, |mask| values[mask as usize] as i128)?;
    let incidence = incidence_from_vertex_data(&vertex_data)?;
    let complex = facets_from_incidence(&incidence);
    let check = ReconstructionCheck {
        adjacency_matches: adjacency_from_complex(&complex) == *matrix,
        pure: complex.purity().is_some(),
        clique: is_clique_complex_by_theorem(&complex).holds(),
        triangle_free: has_triangle_intersection(&complex).is_none(),
    };
    Ok(Reconstruction {
        complex,
        vertex_data,
        check,
    })
}
