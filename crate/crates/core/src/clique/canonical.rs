use itertools::Itertools;

use crate::complex::{vertex_data_from_complex, SimplicialComplex};
use crate::error::{Error, Result};

/// Default facet-count limit for [`FacetLabels::Free`] keys.
pub const DEFAULT_CANONICAL_LIMIT: usize = 8;

/// Whether facet labels are part of the identity being compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetLabels {
    /// Only vertex labels are forgotten.
    Fixed,
    /// Vertex and facet labels are both forgotten.
    Free,
}

/// Isomorphism key: sorted `(pattern, count)` vertex data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub q: usize,
    pub entries: Vec<(u64, u64)>,
}

pub fn canonical_form(
    complex: &SimplicialComplex,
    labels: FacetLabels,
    limit: usize,
) -> Result<CanonicalKey> {
    let data = vertex_data_from_complex(complex);
    let q = data.q();
    let fixed: Vec<(u64, u64)> = data.iter().collect();
    match labels {
        FacetLabels::Fixed => Ok(CanonicalKey { q, entries: fixed }),
        FacetLabels::Free => {
            if q > limit {
                return Err(Error::LimitExceeded {
                    what: "facet count",
                    got: q,
                    limit,
                });
            }
            let entries = (0..q)
                .permutations(q)
                .map(|perm| {
                    let mut permuted: Vec<(u64, u64)> = fixed
                        .iter()
                        .map(|&(a, c)| {
                            let b = perm
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| a >> i & 1 == 1)
                                .fold(0u64, |acc, (_, &to)| acc | 1 << to);
                            (b, c)
                        })
                        .collect();
                    permuted.sort_unstable();
                    permuted
                })
                .min()
                .expect("at least one permutation");
            Ok(CanonicalKey { q, entries })
        }
    }
}
