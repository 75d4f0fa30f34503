//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use purecomplex::clique::{
    canonical_form, counterexample_base, generate_counterexample, is_clique_complex_by_skeleton,
    is_clique_complex_by_theorem, reconstruct_from_adjacency, FacetLabels, DEFAULT_CANONICAL_LIMIT,
};
use purecomplex::complex::{adjacency_from_complex, incidence_from_facets};
use purecomplex::counting::{
    alignment_identity_check, alignments, binomial, binomial_big, clique_upper_bound, s_pure,
    s_pure_by_vertices, turan_number,
};
use purecomplex::enumeration::{
    count, enumerate_alignments, random_pure_clique_tif, stream, EnumerationTask, Filter,
};
use purecomplex::SimplicialComplex;

const PURE_TOTALS: [(u64, [u64; 6]); 3] = [
    (2, [1, 6, 62, 900, 16824, 384668]),
    (3, [1, 31, 2649, 441061, 121105865, 49615422851]),
    (
        4,
        [1, 160, 116360, 231173330, 974787170226, 7500396185804060],
    ),
];

const CLIQUE_TOTALS: [(u64, [u64; 6]); 3] = [
    (2, [1, 6, 61, 878, 16323, 371782]),
    (3, [1, 31, 2495, 394920, 104268613, 41419848444]),
    (
        4,
        [1, 160, 101875, 178682745, 679213720913, 4793115687225971],
    ),
];

const TURAN: [(u64, [u64; 10]); 4] = [
    (2, [2, 3, 4, 4, 5, 5, 6, 6, 6, 7]),
    (3, [3, 4, 5, 5, 6, 6, 6, 6, 7, 7]),
    (4, [4, 5, 6, 6, 7, 7, 7, 7, 8, 8]),
    (5, [5, 6, 7, 7, 8, 8, 8, 8, 9, 9]),
];

const ORACLE_CELLS: [(u64, u64); 9] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 1),
    (4, 2),
];

/// Unpadded incidence rows for `k = 3`, as published.
const BASE_K3: [&str; 4] = ["11101000", "11010100", "10110010", "01110001"];
const BASE_PRIME_K3: [&str; 4] = ["1110001", "1001101", "0101011", "0010111"];

fn table_value<const N: usize>(table: &[(u64, [u64; N])], p: u64, q: u64) -> u64 {
    table.iter().find(|r| r.0 == p).unwrap().1[q as usize - 1]
}

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn purecomplex(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_purecomplex"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

/// `(p, q) → value` from `p,q,value` CSV.
fn parse_csv(text: &str) -> BTreeMap<(u64, u64), String> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                (f[0].parse().unwrap(), f[1].parse().unwrap()),
                f[2].to_string(),
            )
        })
        .collect()
}

fn table_cells_match(csv: &BTreeMap<(u64, u64), String>) -> usize {
    PURE_TOTALS
        .iter()
        .flat_map(|&(p, row)| (1..=6).map(move |q| (p, q, row[q as usize - 1])))
        .filter(|&(p, q, v)| csv.get(&(p, q)) == Some(&v.to_string()))
        .count()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (code, out) = purecomplex(&["count", "--p", "2-4", "--q", "1-6", "--method", "formula"]);
    let elapsed = start.elapsed();
    let matched = table_cells_match(&parse_csv(&out));
    verdict(
        code == 0 && matched == 18 && within(elapsed, 5.0),
        format!(
            "{matched}/18 cells exact in {:.3} s (limit 5 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let (code, out) = purecomplex(&["count", "--p", "2-4", "--q", "1-6", "--method", "series"]);
    let elapsed = start.elapsed();
    let (_, formula) = purecomplex(&["count", "--p", "2-4", "--q", "1-6", "--method", "formula"]);
    let series = parse_csv(&out);
    let matched = table_cells_match(&series);
    let same = series == parse_csv(&formula);
    verdict(
        code == 0 && matched == 18 && same && within(elapsed, 30.0),
        format!(
            "{matched}/18 cells exact, identical to formula path: {same}, {:.3} s (limit 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let (code, out) = purecomplex(&["verify-tables", "--method", "oracle", "--threads", "8"]);
    let elapsed = start.elapsed();
    let rows: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    let passed = rows
        .iter()
        .filter(|r| {
            let (p, q): (u64, u64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
            let expected = match r[0].as_str() {
                "pure" => table_value(&PURE_TOTALS, p, q),
                _ => table_value(&CLIQUE_TOTALS, p, q),
            };
            r[4] == expected.to_string() && r[5] == "pass"
        })
        .count();
    verdict(
        code == 0 && rows.len() == 18 && passed == 18 && within(elapsed, 600.0),
        format!(
            "{passed}/18 oracle cells (s_v and w_v on 9 cells) exact in {:.3} s (limit 600 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let matched = TURAN
        .iter()
        .flat_map(|&(p, row)| (1..=10).map(move |q| (p, q, row[q as usize - 1])))
        .filter(|&(p, q, r)| turan_number(p, q) == r)
        .count();
    let elapsed = start.elapsed();
    verdict(
        matched == 40 && within(elapsed, 1.0),
        format!(
            "{matched}/40 entries exact in {:.6} s (limit 1 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut sound = 0;
    let mut details = Vec::new();
    for (p, q) in ORACLE_CELLS {
        let task = EnumerationTask::new(p as usize, q as usize)
            .unwrap()
            .with_filter(Filter::Clique);
        let oracle = count(&task).unwrap().total;
        let bound = clique_upper_bound(p, q);
        if bound.0 >= BigUint::from(oracle) {
            sound += 1;
        }
        if (p, q) == (2, 3) || (p, q) == (3, 2) {
            details.push(format!("bound({p},{q})={bound} oracle={oracle}"));
        }
    }
    let tight = clique_upper_bound(2, 3) == 61 && clique_upper_bound(3, 2) == 31;
    verdict(
        sound == 9 && tight,
        format!("bound >= oracle on {sound}/9 cells; {}", details.join(", ")),
    )
}

/// Every `q`-set of `p`-subsets of `{1..9}`, covering or not.
fn complexes_within_nine(p: u32, q: usize) -> Vec<SimplicialComplex> {
    let facets: Vec<Vec<u32>> = (0u32..1 << 9)
        .filter(|m| m.count_ones() == p)
        .map(|m| (0..9).filter(|v| m >> v & 1 == 1).map(|v| v + 1).collect())
        .collect();
    fn extend(
        facets: &[Vec<u32>],
        from: usize,
        q: usize,
        chosen: &mut Vec<Vec<u32>>,
        out: &mut Vec<SimplicialComplex>,
    ) {
        if chosen.len() == q {
            out.push(SimplicialComplex::new(chosen.clone()).unwrap());
            return;
        }
        for i in from..facets.len() {
            chosen.push(facets[i].clone());
            extend(facets, i + 1, q, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    extend(&facets, 0, q, &mut Vec::new(), &mut out);
    out
}

fn criterion_6() -> Verdict {
    let agree = |k: &SimplicialComplex| {
        is_clique_complex_by_theorem(k).holds() == is_clique_complex_by_skeleton(k)
    };
    let (mut covering, mut covering_ok) = (0usize, 0usize);
    let (mut all, mut all_ok) = (0usize, 0usize);
    for p in 1..=3 {
        for q in 1..=3 {
            for k in stream(&EnumerationTask::new(p, q).unwrap()).unwrap() {
                covering += 1;
                covering_ok += agree(&k) as usize;
            }
            for k in complexes_within_nine(p as u32, q) {
                all += 1;
                all_ok += agree(&k) as usize;
            }
        }
    }
    verdict(
        covering_ok == covering && all_ok == all && covering > 0,
        format!(
            "p <= 3, q <= 3: {covering_ok}/{covering} complexes on exactly [n] agree, {all_ok}/{all} complexes within [9] agree"
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut ok = 0;
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let p = 2 + (seed % 3) as usize;
        let q = 1 + ((seed / 3) % 4) as usize;
        let k = random_pure_clique_tif(p, q, seed, 100_000).unwrap();
        let rebuilt = reconstruct_from_adjacency(&adjacency_from_complex(&k)).unwrap();
        let same = canonical_form(
            &rebuilt.complex,
            FacetLabels::Fixed,
            DEFAULT_CANONICAL_LIMIT,
        )
        .unwrap()
            == canonical_form(&k, FacetLabels::Fixed, DEFAULT_CANONICAL_LIMIT).unwrap();
        if same && rebuilt.verified() {
            ok += 1;
        } else {
            failures.push(seed);
        }
    }
    verdict(
        ok == 100,
        format!("{ok}/100 seeded instances reconstructed and verified; failing seeds {failures:?}"),
    )
}

fn column_multiset(rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut cols: Vec<Vec<u8>> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    cols.sort();
    cols
}

fn published(rows: &[&str]) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect()
}

fn sets(k: &SimplicialComplex) -> Vec<BTreeSet<u32>> {
    k.facets()
        .iter()
        .map(|f| f.iter().copied().collect())
        .collect()
}

fn common(facets: &[BTreeSet<u32>], indices: &[usize]) -> usize {
    let mut acc = facets[indices[0]].clone();
    for &i in &indices[1..] {
        acc = acc.intersection(&facets[i]).copied().collect();
    }
    acc.len()
}

/// Pair invariants checked directly on vertex sets.
fn pair_holds(k: usize) -> bool {
    let pair = generate_counterexample(k).unwrap();
    let (a, b) = (sets(&pair.complex), sets(&pair.prime));
    let q = a.len();
    let pure = pair.complex.purity().is_some() && pair.complex.purity() == pair.prime.purity();
    let clique =
        is_clique_complex_by_skeleton(&pair.complex) && is_clique_complex_by_skeleton(&pair.prime);
    let agree = (1u64..1 << q)
        .filter(|m| m.count_ones() as usize <= k)
        .all(|m| {
            let idx: Vec<usize> = (0..q).filter(|i| m >> i & 1 == 1).collect();
            common(&a, &idx) == common(&b, &idx)
        });
    let top: Vec<usize> = (0..=k).collect();
    let differ = common(&a, &top) != common(&b, &top);
    let keys_differ = canonical_form(&pair.complex, FacetLabels::Free, DEFAULT_CANONICAL_LIMIT)
        .unwrap()
        != canonical_form(&pair.prime, FacetLabels::Free, DEFAULT_CANONICAL_LIMIT).unwrap();
    pair.verified && pure && clique && agree && differ && keys_differ
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let (base, base_prime) = counterexample_base(3).unwrap();
    let matrices = column_multiset(incidence_from_facets(&base).rows())
        == column_multiset(&published(&BASE_K3))
        && column_multiset(incidence_from_facets(&base_prime).rows())
            == column_multiset(&published(&BASE_PRIME_K3));
    let pair = generate_counterexample(3).unwrap();
    let top = (
        common(&sets(&pair.complex), &[0, 1, 2, 3]),
        common(&sets(&pair.prime), &[0, 1, 2, 3]),
    );
    let invariants: Vec<bool> = (3..=5).map(pair_holds).collect();
    let elapsed = start.elapsed();
    verdict(
        matrices && top == (0, 1) && invariants.iter().all(|&b| b) && within(elapsed, 5.0),
        format!(
            "k=3 matrices match up to column order: {matrices}; |F1∩…∩F4| = {} vs {}; invariants for k=3,4,5: {invariants:?}; {:.3} s (limit 5 s)",
            top.0,
            top.1,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_9() -> Verdict {
    let identities = (1..=3).all(|p| alignment_identity_check(p, 4));
    let mut agree = 0;
    for p in 1..=3u64 {
        for k in 1..=3u64 {
            if alignments(p, k)
                == enumerate_alignments(p as usize, k as usize, 100_000_000).unwrap()
            {
                agree += 1;
            }
        }
    }
    let f22 = alignments(2, 2) == 13;
    verdict(
        identities && agree == 9 && f22,
        format!("Stirling identities p<=3, q<=4: {identities}; formula = enumeration on {agree}/9 cells; f(2,2)=13: {f22}"),
    )
}

fn criterion_10() -> Verdict {
    let mut checked = 0;
    let mut failed = 0;
    for p in 1..=4u64 {
        for n in 0..=10u64 {
            for q in 1..=4u64 {
                let lhs: BigUint = (0..=n).map(|k| binomial(n, k) * s_pure(p, q, k).0).sum();
                checked += 1;
                failed += (lhs != binomial_big(&binomial(n, p), q)) as usize;
            }
            let lhs: BigUint = (0..=n)
                .map(|k| binomial(n, k) * s_pure_by_vertices(p, k).0)
                .sum();
            let exponent = u32::try_from(&binomial(n, p)).unwrap();
            checked += 1;
            failed += (lhs != BigUint::from(2u32).pow(exponent)) as usize;
        }
    }
    verdict(
        failed == 0,
        format!(
            "{} of {checked} identities exact (p <= 4, q <= 4, n <= 10)",
            checked - failed
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("published pure counts, formula path", criterion_1),
        ("published pure counts, series path", criterion_2),
        ("published counts, enumeration oracle", criterion_3),
        ("Turán numbers", criterion_4),
        ("clique upper bound soundness", criterion_5),
        ("clique test by triples vs maximal cliques", criterion_6),
        ("reconstruction from facet adjacency", criterion_7),
        (
            "non-isomorphic pairs with equal intersection data",
            criterion_8,
        ),
        ("alignment identities", criterion_9),
        ("binomial inversion identities", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!(
            "criterion {:>2} {}: {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failures += (!v.pass) as usize;
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
