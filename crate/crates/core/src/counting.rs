//! Exact counts of pure complexes, alignments and Turán numbers.
//!
//! Everything here is integer arithmetic on [`BigUint`]/[`BigInt`]. The
//! binomial `C(a, b)` is zero whenever `b > a`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// An exact nonnegative count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CountValue(pub BigUint);

impl CountValue {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_big(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for CountValue {
    fn from(v: u64) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl From<BigUint> for CountValue {
    fn from(v: BigUint) -> Self {
        CountValue(v)
    }
}

impl PartialEq<u64> for CountValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

fn into_count(v: BigInt) -> CountValue {
    match v.sign() {
        Sign::Minus => panic!("alternating sum came out negative: {v}"),
        _ => CountValue(v.magnitude().clone()),
    }
}

/// `C(n, k)` for machine-size `n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    binomial_big(&BigUint::from(n), k)
}

/// `C(n, k)` for big `n` and small `k`.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    let k_big = BigUint::from(k);
    if k_big > *n {
        return BigUint::zero();
    }
    let k = k.min((n - &k_big).to_u64().unwrap_or(k));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// `C(C(k, p), q)`: ways to pick `q` distinct `p`-subsets of a `k`-set.
fn facet_choices(k: u64, p: u64, q: u64) -> BigUint {
    binomial_big(&binomial(k, p), q)
}

fn signed(n: u64, k: u64) -> bool {
    (n + k) % 2 == 1
}

/// Number of `p`-pure complexes with `q` facets covering exactly `n`
/// labeled vertices: `Σ_k (−1)^{k+n} C(n,k) C(C(k,p), q)`.
pub fn s_pure(p: u64, q: u64, n: u64) -> CountValue {
    let mut total = BigInt::zero();
    for k in 0..=n {
        let term = BigInt::from(binomial(n, k) * facet_choices(k, p, q));
        if signed(n, k) {
            total -= term;
        } else {
            total += term;
        }
    }
    into_count(total)
}

/// Smallest `n` with `C(n, p) ≥ q`.
pub fn min_vertices(p: u64, q: u64) -> u64 {
    let target = BigUint::from(q);
    (p..)
        .find(|&n| binomial(n, p) >= target)
        .expect("C(n,p) grows without bound")
}

/// All `p`-pure complexes with `q` facets, summed over `n` from
/// [`min_vertices`] to `pq`.
pub fn s_pure_total(p: u64, q: u64) -> CountValue {
    let sum = (min_vertices(p, q)..=p * q)
        .map(|n| s_pure(p, q, n).0)
        .sum();
    CountValue(sum)
}

/// `p`-pure complexes covering exactly `n` vertices, any facet count:
/// `Σ_k (−1)^{n+k} C(n,k) 2^{C(k,p)}`.
pub fn s_pure_by_vertices(p: u64, n: u64) -> CountValue {
    let mut total = BigInt::zero();
    for k in 0..=n {
        let exp = binomial(k, p).to_u64().expect("exponent fits in u64");
        let term = BigInt::from(binomial(n, k) << exp);
        if signed(n, k) {
            total -= term;
        } else {
            total += term;
        }
    }
    into_count(total)
}

/// Result of the series evaluation, with how many terms were summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesValue {
    pub value: CountValue,
    pub terms: u64,
}

/// Evaluates `Σ_{m≥0} 2^{−(m+1)} C(C(m,p), q)` exactly up to a certified
/// cutoff `M` and rounds.
///
/// Terms are bounded by `u_m = m^{pq} / (p!^q q! 2^{m+1})`. Once
/// `2 (M+1)^{pq} ≤ 3 M^{pq}` the ratio `u_{m+1}/u_m` stays at most `3/4`,
/// so the tail past `M` is below `4 u_M`; `M` is raised until that is
/// below `1/2`. The partial sum is kept as an integer over `2^M`.
pub fn s_pure_series(p: u64, q: u64) -> SeriesValue {
    assert!(p >= 1 && q >= 1, "purity and facet count must be positive");
    let d = (p * q) as u32;
    let scale = factorial(p).pow(q as u32) * factorial(q);
    let pow = |m: u64| BigUint::from(m).pow(d);
    let mut cutoff: u64 = 1;
    loop {
        let ratio_ok = BigUint::from(2u32) * pow(cutoff + 1) <= BigUint::from(3u32) * pow(cutoff);
        // 4 u_M < 1/2  ⇔  8 M^d < scale · 2^{M+1}
        let tail_ok = BigUint::from(8u32) * pow(cutoff) < &scale << (cutoff + 1);
        if ratio_ok && tail_ok {
            break;
        }
        cutoff += 1;
    }
    // Σ_{m<M} C(C(m,p),q) 2^{M−m−1}, over the denominator 2^M
    let numerator: BigUint = (0..cutoff)
        .map(|m| facet_choices(m, p, q) << (cutoff - m - 1))
        .sum();
    let denominator = BigUint::one() << cutoff;
    let (quotient, remainder) = numerator.div_rem(&denominator);
    let rounded = if remainder << 1u32 >= denominator {
        quotient + 1u32
    } else {
        quotient
    };
    SeriesValue {
        value: CountValue(rounded),
        terms: cutoff,
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Which Stirling numbers a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    /// Signed, `(x)_n = Σ_k s(n,k) x^k`.
    First,
    /// Set partitions of `n` into `k` blocks.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    pub kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Entry `(n, k)`; zero outside `0 ≤ k ≤ n ≤ n_max`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Triangular table up to `n_max` from the row recurrences
/// `s(n+1,k) = s(n,k−1) − n s(n,k)` and `S(n+1,k) = S(n,k−1) + k S(n,k)`.
pub fn stirling(kind: StirlingKind, n_max: usize) -> StirlingTable {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let row = (0..=n + 1)
            .map(|k| {
                let carry = if k == 0 { BigInt::zero() } else { at(k - 1) };
                match kind {
                    StirlingKind::First => carry - BigInt::from(n) * at(k),
                    StirlingKind::Second => carry + BigInt::from(k) * at(k),
                }
            })
            .collect();
        rows.push(row);
    }
    StirlingTable { kind, rows }
}

/// Alignments of `k` strips of length `p`: `k × m` 0/1 matrices with `p`
/// ones per row and no zero column,
/// `Σ_{N=p}^{pk} Σ_i (−1)^i C(N,i) C(N−i,p)^k`.
pub fn alignments(p: u64, k: u64) -> CountValue {
    let mut total = BigInt::zero();
    for big_n in p..=p * k {
        for i in 0..=big_n {
            let term = BigInt::from(binomial(big_n, i) * binomial(big_n - i, p).pow(k as u32));
            if i % 2 == 1 {
                total -= term;
            } else {
                total += term;
            }
        }
    }
    into_count(total)
}

/// `t(p,q) = q! · s_v(p,q)`, with `t(p,0) = 0`.
fn labeled_facet_count(p: u64, q: u64) -> BigInt {
    if q == 0 {
        return BigInt::zero();
    }
    BigInt::from(factorial(q) * s_pure_total(p, q).0)
}

/// Checks, for every `q ≤ q_max`,
/// `q! s_v(p,q) = Σ_k s(q,k) f(p,k)` and `f(p,q) = Σ_j S(q,j) t(p,j)`.
pub fn alignment_identity_check(p: u64, q_max: u64) -> bool {
    let first = stirling(StirlingKind::First, q_max as usize);
    let second = stirling(StirlingKind::Second, q_max as usize);
    let f: Vec<BigInt> = (0..=q_max)
        .map(|k| {
            if k == 0 {
                BigInt::zero()
            } else {
                BigInt::from(alignments(p, k).0)
            }
        })
        .collect();
    let t: Vec<BigInt> = (0..=q_max).map(|j| labeled_facet_count(p, j)).collect();
    (1..=q_max).all(|q| {
        let qu = q as usize;
        let via_first: BigInt = (0..=qu).map(|k| first.get(qu, k) * &f[k]).sum();
        let via_second: BigInt = (0..=qu).map(|j| second.get(qu, j) * &t[j]).sum();
        via_first == t[qu] && via_second == f[qu]
    })
}

/// Fewest vertices of a balanced complete `p`-partite graph with at least
/// `q` maximal cliques: min `n` with `Π_{i=1}^{p} ⌊(n+i−1)/p⌋ ≥ q`.
pub fn turan_number(p: u64, q: u64) -> u64 {
    assert!(p >= 1, "purity must be positive");
    let target = BigUint::from(q);
    (p..)
        .find(|&n| {
            let cliques: BigUint = (1..=p).map(|i| BigUint::from((n + i - 1) / p)).product();
            cliques >= target
        })
        .expect("clique count grows without bound")
}

/// Upper bound on pure clique complexes: `Σ_{n=r(p,q)}^{pq} s_v(p,q,n)`.
pub fn clique_upper_bound(p: u64, q: u64) -> CountValue {
    let sum = (turan_number(p, q)..=p * q)
        .map(|n| s_pure(p, q, n).0)
        .sum();
    CountValue(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(
            binomial(70, 35),
            "112186277816662845432".parse::<BigUint>().unwrap()
        );
        assert_eq!(
            binomial_big(&BigUint::from(10626u32), 6).to_string(),
            "1996517877135185404000"
        );
    }

    #[test]
    fn s_pure_examples() {
        assert_eq!(s_pure(2, 2, 3), 3);
        assert_eq!(s_pure(2, 3, 3), 1);
        for (p, q) in [(2, 2), (3, 2), (2, 4)] {
            assert_eq!(s_pure(p, q, p * q + 1), 0);
            assert_eq!(s_pure(p, q, p * q + 3), 0);
        }
        // disjoint facets: (pq)! / (p!^q q!)
        assert_eq!(s_pure(2, 2, 4), 3);
    }

    #[test]
    fn totals_from_table() {
        assert_eq!(s_pure_total(2, 3), 62);
        assert_eq!(s_pure_total(3, 2), 31);
        assert_eq!(s_pure_total(4, 6), 7_500_396_185_804_060);
    }

    #[test]
    fn min_vertices_examples() {
        assert_eq!(min_vertices(2, 3), 3);
        assert_eq!(min_vertices(2, 4), 4);
        assert_eq!(min_vertices(3, 1), 3);
    }

    #[test]
    fn sum_from_zero_matches_sum_from_n0() {
        for p in 1..=4 {
            for q in 1..=4 {
                let from_zero: BigUint = (0..=p * q).map(|n| s_pure(p, q, n).0).sum();
                assert_eq!(from_zero, s_pure_total(p, q).0, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn s_pure_by_vertices_examples() {
        assert_eq!(s_pure_by_vertices(2, 3), 4);
        assert_eq!(s_pure_by_vertices(3, 2), 0);
        assert_eq!(s_pure_by_vertices(2, 2), 1);
        assert_eq!(s_pure_by_vertices(2, 0), 1);
    }

    #[test]
    fn series_examples() {
        assert_eq!(s_pure_series(2, 3).value, 62);
        assert_eq!(s_pure_series(3, 3).value, 2649);
        assert_eq!(s_pure_series(2, 1).value, 1);
    }

    #[test]
    fn stirling_examples() {
        let first = stirling(StirlingKind::First, 6);
        let second = stirling(StirlingKind::Second, 6);
        assert_eq!(first.get(4, 2), BigInt::from(11));
        assert_eq!(first.get(4, 3), BigInt::from(-6));
        assert_eq!(second.get(4, 2), BigInt::from(7));
        for n in 0..=6 {
            assert_eq!(first.get(n, n), BigInt::one());
            assert_eq!(second.get(n, n), BigInt::one());
            if n > 0 {
                assert_eq!(first.get(n, 0), BigInt::zero());
                assert_eq!(second.get(n, 0), BigInt::zero());
            }
        }
        assert_eq!(first.get(3, 5), BigInt::zero());
        assert_eq!(first.n_max(), 6);
    }

    #[test]
    fn first_kind_expands_falling_factorial() {
        let table = stirling(StirlingKind::First, 7);
        for n in 0..=7usize {
            for x in -3i64..=9 {
                let falling: BigInt = (0..n as i64).map(|i| BigInt::from(x - i)).product();
                let poly: BigInt = (0..=n)
                    .map(|k| table.get(n, k) * BigInt::from(x).pow(k as u32))
                    .sum();
                assert_eq!(falling, poly, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn second_kind_counts_set_partitions() {
        // restricted growth strings of length n with k distinct values
        fn partitions(n: usize, k: usize) -> u64 {
            fn go(pos: usize, n: usize, used: usize, k: usize) -> u64 {
                if pos == n {
                    return (used == k) as u64;
                }
                (0..=used.min(k - 1))
                    .map(|b| go(pos + 1, n, used.max(b + 1), k))
                    .sum()
            }
            if k == 0 {
                return (n == 0) as u64;
            }
            go(0, n, 0, k)
        }
        let table = stirling(StirlingKind::Second, 7);
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(
                    table.get(n, k),
                    BigInt::from(partitions(n, k)),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn alignment_examples() {
        for p in 1..=5 {
            assert_eq!(alignments(p, 1), 1);
        }
        assert_eq!(alignments(2, 2), 13);
        assert_eq!(alignments(1, 2), 3);
    }

    #[test]
    fn alignment_identities() {
        assert!(alignment_identity_check(2, 4));
        assert!(alignment_identity_check(3, 3));
        assert!(alignment_identity_check(1, 1));
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_number(2, 3), 4);
        assert_eq!(turan_number(3, 9), 7);
        assert_eq!(turan_number(5, 1), 5);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(clique_upper_bound(2, 3), 61);
        assert_eq!(clique_upper_bound(2, 1), 1);
        assert_eq!(clique_upper_bound(3, 2), 31);
    }
}
