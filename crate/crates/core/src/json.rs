//! JSON forms of the domain types.
//!
//! ```text
//! complex           {"facets": [[1,2,3],[1,3,4]]}
//! matrix            {"rows": 2, "cols": 4, "data": [[1,1,1,0],[1,0,1,1]]}
//! vertex data       {"q": 2, "counts": {"10": 1, "01": 1, "11": 2}}
//! intersection data {"q": 2, "values": {"1": 3, "2": 3, "1,2": 2}}
//! counterexample    {"k": 3, "K": {...}, "Kprime": {...}, "verified": true}
//! ```

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clique::{CounterexamplePair, IntersectionData};
use crate::complex::{parse_word, AdjacencyMatrix, IncidenceMatrix, SimplicialComplex, VertexData};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    facets: Vec<Vec<u32>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr {
            facets: self.facets().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ComplexRepr::deserialize(deserializer)?;
        SimplicialComplex::new(repr.facets).map_err(D::Error::custom)
    }
}

/// Row-major integer matrix as read from JSON, before any validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u64>>,
}

impl MatrixJson {
    pub fn from_data(data: Vec<Vec<u64>>) -> Self {
        Self {
            rows: data.len(),
            cols: data.first().map_or(0, Vec::len),
            data,
        }
    }

    /// Checks the declared shape against the data.
    pub fn checked_data(&self) -> Result<&[Vec<u64>]> {
        if self.data.len() != self.rows {
            return Err(Error::Malformed(format!(
                "declared {} rows, found {}",
                self.rows,
                self.data.len()
            )));
        }
        if let Some((i, row)) = self
            .data
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.cols)
        {
            return Err(Error::Malformed(format!(
                "declared {} columns, row {} has {}",
                self.cols,
                i + 1,
                row.len()
            )));
        }
        Ok(&self.data)
    }

    /// The data as 0/1 entries.
    pub fn binary_rows(&self) -> Result<Vec<Vec<u8>>> {
        self.checked_data()?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        0 | 1 => Ok(x as u8),
                        _ => Err(Error::Malformed(format!("entry {x} is not 0 or 1"))),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_incidence(&self) -> Result<IncidenceMatrix> {
        IncidenceMatrix::from_rows(self.binary_rows()?)
    }

    pub fn to_adjacency(&self) -> Result<AdjacencyMatrix> {
        if self.rows != self.cols {
            return Err(Error::Malformed(format!(
                "adjacency matrix must be square, got {}×{}",
                self.rows, self.cols
            )));
        }
        AdjacencyMatrix::from_rows(self.checked_data()?.to_vec())
    }
}

impl From<&IncidenceMatrix> for MatrixJson {
    fn from(m: &IncidenceMatrix) -> Self {
        Self::from_data(
            m.rows()
                .iter()
                .map(|r| r.iter().map(|&x| x as u64).collect())
                .collect(),
        )
    }
}

impl From<&AdjacencyMatrix> for MatrixJson {
    fn from(m: &AdjacencyMatrix) -> Self {
        Self::from_data(m.rows().to_vec())
    }
}

impl Serialize for IncidenceMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IncidenceMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(deserializer)?
            .to_incidence()
            .map_err(D::Error::custom)
    }
}

impl Serialize for AdjacencyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AdjacencyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(deserializer)?
            .to_adjacency()
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct VertexDataRepr {
    q: usize,
    counts: BTreeMap<String, u64>,
}

impl Serialize for VertexData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VertexDataRepr {
            q: self.q(),
            counts: self.iter().map(|(p, c)| (self.word(p), c)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = VertexDataRepr::deserialize(deserializer)?;
        let counts = repr
            .counts
            .iter()
            .map(|(w, &c)| parse_word(repr.q, w).map(|p| (p, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        VertexData::new(repr.q, counts).map_err(D::Error::custom)
    }
}

/// Keys ordered by degree, then lexicographically by index list.
struct OrderedValues<'a>(&'a IntersectionData);

impl Serialize for OrderedValues<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries: Vec<(Vec<usize>, u64)> = self
            .0
            .iter()
            .map(|(m, v)| ((0..64).filter(|&i| m >> i & 1 == 1).collect(), v))
            .collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut map = serializer.serialize_map(Some(entries.len()))?;
        for (indices, v) in entries {
            let key = indices
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.serialize_entry(&key, &v)?;
        }
        map.end()
    }
}

impl Serialize for IntersectionData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("q", &self.q())?;
        map.serialize_entry("values", &OrderedValues(self))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct IntersectionRepr {
    q: usize,
    values: BTreeMap<String, u64>,
}

fn parse_subset(q: usize, key: &str) -> Result<u64> {
    let mut mask = 0u64;
    for part in key.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad facet index in {key:?}")))?;
        if i == 0 || i > q {
            return Err(Error::Malformed(format!(
                "facet index {i} out of range in {key:?}"
            )));
        }
        if mask >> (i - 1) & 1 == 1 {
            return Err(Error::Malformed(format!("repeated facet index in {key:?}")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

impl<'de> Deserialize<'de> for IntersectionData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = IntersectionRepr::deserialize(deserializer)?;
        let values = repr
            .values
            .iter()
            .map(|(k, &v)| parse_subset(repr.q, k).map(|m| (m, v)))
            .collect::<Result<BTreeMap<u64, u64>>>()
            .map_err(D::Error::custom)?;
        let degree = values
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        IntersectionData::new(repr.q, degree, values).map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct CounterexampleRepr<'a> {
    k: usize,
    #[serde(rename = "K")]
    complex: &'a SimplicialComplex,
    #[serde(rename = "Kprime")]
    prime: &'a SimplicialComplex,
    verified: bool,
}

impl Serialize for CounterexamplePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CounterexampleRepr {
            k: self.k,
            complex: &self.complex,
            prime: &self.prime,
            verified: self.verified,
        }
        .serialize(serializer)
    }
}
