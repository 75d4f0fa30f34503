//! Encodings of a facet-labeled complex and their realizability tests.
//!
//! A complex can be held as a facet list ([`SimplicialComplex`]), as a
//! facet-incidence matrix ([`IncidenceMatrix`]) or as vertex data
//! ([`VertexData`]); all three carry the same information once vertex labels
//! are forgotten. The facet-adjacency matrix ([`AdjacencyMatrix`]) is the
//! lossy projection `Q = B Bᵀ`.
//!
//! Membership patterns are stored as `u64` masks with bit `i` set when the
//! vertex lies in facet `i` (0-based). Their textual form is a binary word
//! whose first character is facet 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest facet count a membership pattern can describe.
pub const MAX_PATTERN_FACETS: usize = 63;

/// Default facet-count limit for [`is_realizable_adjacency`].
pub const DEFAULT_ADJACENCY_SEARCH_LIMIT: usize = 6;

/// Outcome of a check that either holds or fails with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A pure or impure simplicial complex given by its list of facets.
///
/// Each facet is kept sorted; facet order is preserved as given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex, rejecting empty facets, zero labels and facet pairs
    /// where one contains the other. Repeated labels inside a facet collapse.
    pub fn new(facets: Vec<Vec<u32>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::NoFacets);
        }
        let mut sorted = Vec::with_capacity(facets.len());
        for (i, mut facet) in facets.into_iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            if facet.contains(&0) {
                return Err(Error::ZeroLabel(i));
            }
            facet.sort_unstable();
            facet.dedup();
            sorted.push(facet);
        }
        for i in 0..sorted.len() {
            for j in 0..sorted.len() {
                if i != j && is_sorted_subset(&sorted[i], &sorted[j]) {
                    // equal facets report the later one as the subset
                    let (sub, sup) = if sorted[i] == sorted[j] {
                        (j.max(i), j.min(i))
                    } else {
                        (i, j)
                    };
                    return Err(Error::ComparableFacets { sub, sup });
                }
            }
        }
        Ok(Self { facets: sorted })
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &[u32] {
        &self.facets[i]
    }

    /// Number of facets, `q`.
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertex labels in first-appearance order (facets in listed order, each
    /// facet ascending). This is the column order of the incidence matrix.
    pub fn vertex_labels(&self) -> Vec<u32> {
        self.facets.iter().flatten().copied().unique().collect()
    }

    /// Number of vertices, `n`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels().len()
    }

    /// The common facet size when the complex is pure.
    pub fn purity(&self) -> Option<usize> {
        let p = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == p).then_some(p)
    }

    /// Relabels vertices `1..=n` in first-appearance order.
    pub fn normalized(&self) -> SimplicialComplex {
        let index = self.label_index();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|v| index[v] as u32 + 1).collect();
                g.sort_unstable();
                g
            })
            .collect();
        SimplicialComplex { facets }
    }

    /// Equality after vertex normalization, keeping facet order.
    pub fn same_up_to_vertex_labels(&self, other: &SimplicialComplex) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        face.is_empty() || self.facets.iter().any(|f| is_sorted_subset(&face, f))
    }

    /// Map from vertex label to its 0-based column.
    pub(crate) fn label_index(&self) -> HashMap<u32, usize> {
        self.vertex_labels()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .facets
            .iter()
            .map(|facet| format!("{{{}}}", facet.iter().join(",")));
        write!(f, "{{{}}}", parts.format(","))
    }
}

pub(crate) fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Why a 0/1 matrix is not a facet-incidence matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceDefect {
    ZeroRow(usize),
    /// Row `sub`'s support is contained in row `sup`'s.
    Comparable {
        sub: usize,
        sup: usize,
    },
}

impl fmt::Display for IncidenceDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceDefect::ZeroRow(r) => write!(f, "row {} is zero", r + 1),
            IncidenceDefect::Comparable { sub, sup } => {
                write!(f, "row {} is contained in row {}", sub + 1, sup + 1)
            }
        }
    }
}

/// A realizable `q × n` facet-incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    cols: usize,
    rows: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        match is_realizable_incidence(&rows)? {
            Verdict::Holds => Ok(Self {
                cols: rows[0].len(),
                rows,
            }),
            Verdict::Fails(defect) => Err(Error::NotRealizable(defect.to_string())),
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i][j]
    }

    /// Column `j` as a membership mask.
    pub fn column_pattern(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row[j] == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Columns as a multiset of membership masks, sorted; two matrices are
    /// column permutations of each other iff these agree.
    pub fn column_multiset(&self) -> Vec<u64> {
        let mut cols: Vec<u64> = (0..self.cols).map(|j| self.column_pattern(j)).collect();
        cols.sort_unstable();
        cols
    }
}

/// Checks the row conditions for a raw 0/1 matrix: every row nonzero and no
/// row's support contained in another's. Errors only on malformed input.
pub fn is_realizable_incidence(rows: &[Vec<u8>]) -> Result<Verdict<IncidenceDefect>> {
    check_rectangular_01(rows)?;
    if rows.len() > MAX_PATTERN_FACETS {
        return Err(Error::LimitExceeded {
            what: "row count",
            got: rows.len(),
            limit: MAX_PATTERN_FACETS,
        });
    }
    if let Some(r) = rows.iter().position(|row| row.iter().all(|&x| x == 0)) {
        return Ok(Verdict::Fails(IncidenceDefect::ZeroRow(r)));
    }
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i != j && rows[i].iter().zip(&rows[j]).all(|(&a, &b)| a <= b) {
                // for identical rows the later one is reported as the subset
                let (sub, sup) = if rows[i] == rows[j] {
                    (i.max(j), i.min(j))
                } else {
                    (i, j)
                };
                return Ok(Verdict::Fails(IncidenceDefect::Comparable { sub, sup }));
            }
        }
    }
    Ok(Verdict::Holds)
}

fn check_rectangular_01(rows: &[Vec<u8>]) -> Result<()> {
    let first = rows
        .first()
        .ok_or_else(|| Error::Malformed("matrix has no rows".into()))?;
    let width = first.len();
    if width == 0 {
        return Err(Error::Malformed("matrix has no columns".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Malformed(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                width
            )));
        }
        if row.iter().any(|&x| x > 1) {
            return Err(Error::Malformed(format!(
                "row {} has an entry other than 0/1",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn incidence_from_facets(complex: &SimplicialComplex) -> IncidenceMatrix {
    let index = complex.label_index();
    let n = index.len();
    let rows = complex
        .facets()
        .iter()
        .map(|f| {
            let mut row = vec![0u8; n];
            for v in f {
                row[index[v]] = 1;
            }
            row
        })
        .collect();
    IncidenceMatrix { cols: n, rows }
}

/// Facet list of a realizable incidence matrix, with column `j` as vertex `j + 1`.
pub fn facets_from_incidence(matrix: &IncidenceMatrix) -> SimplicialComplex {
    let facets = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .map(|(j, _)| j as u32 + 1)
                .collect()
        })
        .collect();
    // realizable rows are exactly the complex invariants
    SimplicialComplex { facets }
}

/// Number of vertices per exact facet-membership pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexData {
    q: usize,
    counts: BTreeMap<u64, u64>,
}

/// Why vertex data cannot come from a complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexDataDefect {
    /// Single-facet data with no vertex in the facet.
    EmptyFacet,
    /// No vertex lies in facet `inside` but outside facet `outside`, so
    /// facet `inside` would be contained in facet `outside`.
    Undistinguished { inside: usize, outside: usize },
}

impl fmt::Display for VertexDataDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexDataDefect::EmptyFacet => write!(f, "the only facet has no vertices"),
            VertexDataDefect::Undistinguished { inside, outside } => write!(
                f,
                "no vertex lies in facet {} but not in facet {}",
                inside + 1,
                outside + 1
            ),
        }
    }
}

impl VertexData {
    /// Builds vertex data over `q` facets. Zero counts are dropped; the empty
    /// pattern must not carry vertices.
    pub fn new(q: usize, counts: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        if q == 0 || q > MAX_PATTERN_FACETS {
            return Err(Error::Malformed(format!(
                "vertex data arity must be between 1 and {MAX_PATTERN_FACETS}, got {q}"
            )));
        }
        let mut map = BTreeMap::new();
        for (pattern, count) in counts {
            if pattern >> q != 0 {
                return Err(Error::Malformed(format!(
                    "pattern {pattern:#b} does not fit {q} facets"
                )));
            }
            if count == 0 {
                continue;
            }
            if pattern == 0 {
                return Err(Error::Malformed(
                    "the all-zero pattern must have count 0".into(),
                ));
            }
            *map.entry(pattern).or_insert(0) += count;
        }
        Ok(Self { q, counts: map })
    }

    /// Builds vertex data from binary words such as `"10"`, first character
    /// being facet 1.
    pub fn from_words<'a>(
        q: usize,
        counts: impl IntoIterator<Item = (&'a str, u64)>,
    ) -> Result<Self> {
        let parsed = counts
            .into_iter()
            .map(|(w, c)| parse_word(q, w).map(|p| (p, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, parsed)
    }

    /// Arity, i.e. the number of facets.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn count(&self, pattern: u64) -> u64 {
        self.counts.get(&pattern).copied().unwrap_or(0)
    }

    /// Nonzero entries in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&p, &c)| (p, c))
    }

    /// Total vertex count `n`.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn word(&self, pattern: u64) -> String {
        pattern_word(self.q, pattern)
    }
}

/// Binary word of a pattern, first character facet 1.
pub fn pattern_word(q: usize, pattern: u64) -> String {
    (0..q)
        .map(|i| if pattern >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`pattern_word`].
pub fn parse_word(q: usize, word: &str) -> Result<u64> {
    if word.len() != q {
        return Err(Error::Malformed(format!(
            "pattern {word:?} should have {q} digits"
        )));
    }
    word.chars()
        .enumerate()
        .try_fold(0u64, |acc, (i, ch)| match ch {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << i),
            _ => Err(Error::Malformed(format!(
                "pattern {word:?} is not a binary word"
            ))),
        })
}

/// Value of the pattern's word read as a binary number.
fn word_value(q: usize, pattern: u64) -> u64 {
    pattern.reverse_bits() >> (64 - q)
}

pub fn vertex_data_from_incidence(matrix: &IncidenceMatrix) -> VertexData {
    let mut counts = BTreeMap::new();
    for j in 0..matrix.col_count() {
        *counts.entry(matrix.column_pattern(j)).or_insert(0) += 1;
    }
    VertexData {
        q: matrix.row_count(),
        counts,
    }
}

pub fn vertex_data_from_complex(complex: &SimplicialComplex) -> VertexData {
    vertex_data_from_incidence(&incidence_from_facets(complex))
}

/// Realizability of vertex data: every facet must own a vertex outside each
/// other facet. A single facet only needs one vertex.
pub fn is_realizable_vertex_data(data: &VertexData) -> Verdict<VertexDataDefect> {
    if data.q == 1 {
        return if data.count(1) > 0 {
            Verdict::Holds
        } else {
            Verdict::Fails(VertexDataDefect::EmptyFacet)
        };
    }
    for inside in 0..data.q {
        for outside in 0..data.q {
            if inside == outside {
                continue;
            }
            let separated = data
                .counts
                .keys()
                .any(|&a| a >> inside & 1 == 1 && a >> outside & 1 == 0);
            if !separated {
                return Verdict::Fails(VertexDataDefect::Undistinguished { inside, outside });
            }
        }
    }
    Verdict::Holds
}

/// Incidence matrix with `c(a)` identical columns per pattern, patterns in
/// descending order of their binary words.
pub fn incidence_from_vertex_data(data: &VertexData) -> Result<IncidenceMatrix> {
    if let Verdict::Fails(defect) = is_realizable_vertex_data(data) {
        return Err(Error::NotRealizable(defect.to_string()));
    }
    let mut patterns: Vec<(u64, u64)> = data.iter().collect();
    patterns.sort_by_key(|&(p, _)| std::cmp::Reverse(word_value(data.q, p)));
    let n: u64 = data.total();
    let mut rows = vec![Vec::with_capacity(n as usize); data.q];
    for (pattern, count) in patterns {
        for _ in 0..count {
            for (i, row) in rows.iter_mut().enumerate() {
                row.push((pattern >> i & 1) as u8);
            }
        }
    }
    Ok(IncidenceMatrix {
        cols: n as usize,
        rows,
    })
}

/// Facet-adjacency matrix: symmetric, nonnegative, `q × q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    entries: Vec<Vec<u64>>,
}

impl AdjacencyMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Result<Self> {
        let q = entries.len();
        if q == 0 {
            return Err(Error::Malformed("matrix has no rows".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != q {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {q}",
                    i + 1,
                    row.len()
                )));
            }
        }
        if let Some((i, j)) = (0..q)
            .tuple_combinations()
            .find(|&(i, j)| entries[i][j] != entries[j][i])
        {
            return Err(Error::Malformed(format!(
                "matrix is not symmetric at ({}, {})",
                i + 1,
                j + 1
            )));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }
}

/// `Q = B Bᵀ`, computed as row-support intersection sizes.
pub fn adjacency_from_incidence(matrix: &IncidenceMatrix) -> AdjacencyMatrix {
    let q = matrix.row_count();
    let entries = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    matrix.rows[i]
                        .iter()
                        .zip(&matrix.rows[j])
                        .filter(|(&a, &b)| a == 1 && b == 1)
                        .count() as u64
                })
                .collect()
        })
        .collect();
    AdjacencyMatrix { entries }
}

pub fn adjacency_from_complex(complex: &SimplicialComplex) -> AdjacencyMatrix {
    adjacency_from_incidence(&incidence_from_facets(complex))
}

/// `Q = Σ c(a) a aᵀ` over all membership patterns.
pub fn adjacency_from_vertex_data(data: &VertexData) -> Result<AdjacencyMatrix> {
    if let Verdict::Fails(defect) = is_realizable_vertex_data(data) {
        return Err(Error::NotRealizable(defect.to_string()));
    }
    Ok(adjacency_sum(data))
}

fn adjacency_sum(data: &VertexData) -> AdjacencyMatrix {
    let q = data.q;
    let mut entries = vec![vec![0u64; q]; q];
    for (a, c) in data.iter() {
        let members: Vec<usize> = (0..q).filter(|&i| a >> i & 1 == 1).collect();
        for &i in &members {
            for &j in &members {
                entries[i][j] += c;
            }
        }
    }
    AdjacencyMatrix { entries }
}

/// Findings of the inequality test on a candidate adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InequalityReport {
    /// First `(S, i)` (by `|S|`, then lexicographically, then `i`) with
    /// `Q_ii < Σ_{k∈S∖i} Q_ik − Σ_{{a,b}⊆S∖i} Q_ab`.
    pub subset_violation: Option<(Vec<usize>, usize)>,
    /// First pair `i < j` with `Q_ij ≥ min(Q_ii, Q_jj)`; distinct facets
    /// cannot meet in a whole facet.
    pub strict_pair_violation: Option<(usize, usize)>,
}

impl InequalityReport {
    pub fn passes(&self) -> bool {
        self.subset_violation.is_none() && self.strict_pair_violation.is_none()
    }
}

/// Necessary conditions for `Q` to be a facet-adjacency matrix. Subsets are
/// checked up to `max_subset_size` elements (all subsets when `None`).
pub fn check_adjacency_inequalities(
    matrix: &AdjacencyMatrix,
    max_subset_size: Option<usize>,
) -> InequalityReport {
    let q = matrix.dim();
    let cap = max_subset_size.unwrap_or(q).min(q);
    let mut report = InequalityReport::default();

    'search: for size in 1..=cap {
        for subset in (0..q).combinations(size) {
            for &i in &subset {
                let others: Vec<usize> = subset.iter().copied().filter(|&k| k != i).collect();
                let single: i128 = others.iter().map(|&k| matrix.get(i, k) as i128).sum();
                let pairs: i128 = others
                    .iter()
                    .tuple_combinations()
                    .map(|(&a, &b)| matrix.get(a, b) as i128)
                    .sum();
                if (matrix.get(i, i) as i128) < single - pairs {
                    report.subset_violation = Some((subset.clone(), i));
                    break 'search;
                }
            }
        }
    }

    report.strict_pair_violation = (0..q)
        .tuple_combinations()
        .find(|&(i, j)| matrix.get(i, j) >= matrix.get(i, i).min(matrix.get(j, j)));
    report
}

/// Decides whether some complex has adjacency matrix `Q`, by depth-first
/// search over vertex-data counts. Returns the first witness found, patterns
/// taken by decreasing population count.
pub fn is_realizable_adjacency(
    matrix: &AdjacencyMatrix,
    limit: usize,
) -> Result<Option<VertexData>> {
    let q = matrix.dim();
    if q > limit {
        return Err(Error::LimitExceeded {
            what: "facet count",
            got: q,
            limit,
        });
    }
    if !check_adjacency_inequalities(matrix, None).passes() {
        return Ok(None);
    }
    // patterns with three or more facets are free choices; pairs and
    // singletons are then forced by the residual
    let mut free: Vec<u64> = (1u64..1 << q).filter(|p| p.count_ones() >= 3).collect();
    free.sort_by_key(|&p| {
        (
            std::cmp::Reverse(p.count_ones()),
            std::cmp::Reverse(word_value(q, p)),
        )
    });

    let mut search = AdjacencySearch {
        q,
        free,
        residual: matrix.entries.clone(),
        chosen: Vec::new(),
    };
    Ok(search.run(0))
}

struct AdjacencySearch {
    q: usize,
    free: Vec<u64>,
    residual: Vec<Vec<u64>>,
    chosen: Vec<(u64, u64)>,
}

impl AdjacencySearch {
    fn members(&self, pattern: u64) -> Vec<usize> {
        (0..self.q).filter(|&i| pattern >> i & 1 == 1).collect()
    }

    fn apply(&mut self, pattern: u64, count: u64, add: bool) {
        for i in self.members(pattern) {
            for j in self.members(pattern) {
                if add {
                    self.residual[i][j] += count;
                } else {
                    self.residual[i][j] -= count;
                }
            }
        }
    }

    fn run(&mut self, depth: usize) -> Option<VertexData> {
        if depth == self.free.len() {
            return self.complete();
        }
        let pattern = self.free[depth];
        let members = self.members(pattern);
        let max = members
            .iter()
            .flat_map(|&i| members.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.residual[i][j])
            .min()
            .unwrap_or(0);
        for count in 0..=max {
            self.apply(pattern, count, false);
            if count > 0 {
                self.chosen.push((pattern, count));
            }
            let found = self.run(depth + 1);
            if count > 0 {
                self.chosen.pop();
            }
            self.apply(pattern, count, true);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn complete(&self) -> Option<VertexData> {
        let q = self.q;
        let mut counts = self.chosen.clone();
        let mut diag: Vec<u64> = (0..q).map(|i| self.residual[i][i]).collect();
        for i in 0..q {
            for j in i + 1..q {
                let c = self.residual[i][j];
                if c > diag[i] || c > diag[j] {
                    return None;
                }
                diag[i] -= c;
                diag[j] -= c;
                counts.push((1 << i | 1 << j, c));
            }
        }
        for (i, &c) in diag.iter().enumerate() {
            counts.push((1 << i, c));
        }
        let data = VertexData::new(q, counts).ok()?;
        is_realizable_vertex_data(&data).holds().then_some(data)
    }
}
