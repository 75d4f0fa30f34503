//! Published tables and their cell-by-cell recomputation.

use purecomplex::counting::{s_pure_series, s_pure_total, turan_number};
use purecomplex::enumeration::{count, EnumerationTask, Filter};

use crate::failure::Failure;
use crate::{Method, Outcome};

/// `s_v(p,q)` for `q = 1..=6`.
pub const PURE_TOTALS: [(u64, [u64; 6]); 3] = [
    (2, [1, 6, 62, 900, 16824, 384668]),
    (3, [1, 31, 2649, 441061, 121105865, 49615422851]),
    (
        4,
        [1, 160, 116360, 231173330, 974787170226, 7500396185804060],
    ),
];

/// `w_v(p,q)` for `q = 1..=6`.
pub const CLIQUE_TOTALS: [(u64, [u64; 6]); 3] = [
    (2, [1, 6, 61, 878, 16323, 371782]),
    (3, [1, 31, 2495, 394920, 104268613, 41419848444]),
    (
        4,
        [1, 160, 101875, 178682745, 679213720913, 4793115687225971],
    ),
];

/// `r(p,q)` for `q = 1..=10`.
pub const TURAN: [(u64, [u64; 10]); 4] = [
    (2, [2, 3, 4, 4, 5, 5, 6, 6, 6, 7]),
    (3, [3, 4, 5, 5, 6, 6, 6, 6, 7, 7]),
    (4, [4, 5, 6, 6, 7, 7, 7, 7, 8, 8]),
    (5, [5, 6, 7, 7, 8, 8, 8, 8, 9, 9]),
];

/// Cells of the clique-count table reachable by exhaustive enumeration.
pub const ORACLE_CELLS: [(u64, u64); 9] = [
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

struct Cell {
    table: &'static str,
    p: u64,
    q: u64,
    expected: u64,
    computed: String,
}

fn lookup<const N: usize>(table: &[(u64, [u64; N])], p: u64, q: u64) -> u64 {
    table.iter().find(|r| r.0 == p).expect("tabulated purity").1[q as usize - 1]
}

fn oracle(p: u64, q: u64, filter: Filter, budget: u128) -> Result<String, Failure> {
    let task = EnumerationTask::new(p as usize, q as usize)?
        .with_filter(filter)
        .with_budget(budget);
    Ok(count(&task)?.total.to_string())
}

/// Formula and series recompute every pure-count cell and the Turán table;
/// the oracle recomputes both count tables on the enumerable cells.
pub fn verify(method: Method, budget: u128) -> Result<Outcome, Failure> {
    let mut cells = Vec::new();
    match method {
        Method::Formula | Method::Series => {
            for &(p, row) in &PURE_TOTALS {
                for (q, &expected) in (1..).zip(&row) {
                    let computed = match method {
                        Method::Series => s_pure_series(p, q).value.to_string(),
                        _ => s_pure_total(p, q).to_string(),
                    };
                    cells.push(Cell {
                        table: "pure",
                        p,
                        q,
                        expected,
                        computed,
                    });
                }
            }
            for &(p, row) in &TURAN {
                for (q, &expected) in (1..).zip(&row) {
                    let computed = turan_number(p, q).to_string();
                    cells.push(Cell {
                        table: "turan",
                        p,
                        q,
                        expected,
                        computed,
                    });
                }
            }
        }
        Method::Oracle => {
            for (p, q) in ORACLE_CELLS {
                cells.push(Cell {
                    table: "pure",
                    p,
                    q,
                    expected: lookup(&PURE_TOTALS, p, q),
                    computed: oracle(p, q, Filter::None, budget)?,
                });
                cells.push(Cell {
                    table: "clique",
                    p,
                    q,
                    expected: lookup(&CLIQUE_TOTALS, p, q),
                    computed: oracle(p, q, Filter::Clique, budget)?,
                });
            }
        }
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["table", "p", "q", "expected", "computed", "status"])?;
    let mut all_pass = true;
    for cell in &cells {
        let pass = cell.computed == cell.expected.to_string();
        all_pass &= pass;
        writer.write_record([
            cell.table.to_string(),
            cell.p.to_string(),
            cell.q.to_string(),
            cell.expected.to_string(),
            cell.computed.clone(),
            if pass { "pass" } else { "FAIL" }.to_string(),
        ])?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Outcome {
        payload: String::from_utf8(bytes).expect("CSV of decimal integers is UTF-8"),
        positive: all_pass,
    })
}
