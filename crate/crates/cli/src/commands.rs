use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use purecomplex::clique::{
    generate_counterexample, has_triangle_intersection, is_clique_complex_by_theorem,
    pairwise_union_face, reconstruct_from_adjacency,
};
use purecomplex::complex::{
    adjacency_from_complex, check_adjacency_inequalities, incidence_from_facets,
    is_realizable_adjacency, is_realizable_incidence, vertex_data_from_complex,
    DEFAULT_ADJACENCY_SEARCH_LIMIT,
};
use purecomplex::counting::{
    alignments, clique_upper_bound, s_pure, s_pure_by_vertices, s_pure_series, s_pure_total,
    turan_number,
};
use purecomplex::enumeration::{
    self, enumerate_alignments, random_pure_clique_tif, EnumerationTask, Filter,
};
use purecomplex::json::MatrixJson;
use purecomplex::{SimplicialComplex, Verdict};
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::{Emit, FilterArg, MatrixKind, Method, Outcome, Quantity};

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => Ok(fs::read_to_string(p)?),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn line(value: &Value) -> String {
    format!("{value}\n")
}

/// 1-based facet indices for output.
fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

pub fn analyze(input: Option<&Path>) -> Result<Outcome, Failure> {
    let complex: SimplicialComplex = serde_json::from_str(&read_input(input)?)?;
    let clique = match is_clique_complex_by_theorem(&complex) {
        Verdict::Holds => json!({"holds": true, "witness": null, "missing_face": null}),
        Verdict::Fails([i, j, k]) => json!({
            "holds": false,
            "witness": one_based(&[i, j, k]),
            "missing_face": pairwise_union_face(&complex, i, j, k)?,
        }),
    };
    let triangle = has_triangle_intersection(&complex);
    let payload = json!({
        "facets": complex.facets(),
        "vertex_labels": complex.vertex_labels(),
        "incidence": incidence_from_facets(&complex),
        "adjacency": adjacency_from_complex(&complex),
        "vertex_data": vertex_data_from_complex(&complex),
        "purity": complex.purity(),
        "clique": clique,
        "triangle_intersection_free": {
            "holds": triangle.is_none(),
            "witness": triangle.map(|t| one_based(&t)),
        },
    });
    Ok(Outcome::ok(line(&payload)))
}

pub fn check_matrix(
    input: Option<&Path>,
    kind: MatrixKind,
    max_subset_size: Option<usize>,
) -> Result<Outcome, Failure> {
    let matrix: MatrixJson = serde_json::from_str(&read_input(input)?)?;
    match kind {
        MatrixKind::Incidence => {
            if max_subset_size.is_some() {
                return Err(Failure::usage(
                    "--max-subset-size applies to adjacency matrices only",
                ));
            }
            let rows = matrix.binary_rows()?;
            let (positive, payload) = match is_realizable_incidence(&rows)? {
                Verdict::Holds => {
                    let complex =
                        purecomplex::complex::facets_from_incidence(&matrix.to_incidence()?);
                    (
                        true,
                        json!({"kind": "incidence", "realizable": true, "defect": null, "complex": complex}),
                    )
                }
                Verdict::Fails(defect) => (
                    false,
                    json!({"kind": "incidence", "realizable": false, "defect": defect.to_string(), "complex": null}),
                ),
            };
            Ok(Outcome {
                payload: line(&payload),
                positive,
            })
        }
        MatrixKind::Adjacency => {
            let q = matrix.to_adjacency()?;
            let report = check_adjacency_inequalities(&q, max_subset_size);
            let witness = if report.passes() {
                is_realizable_adjacency(&q, DEFAULT_ADJACENCY_SEARCH_LIMIT)?
            } else {
                None
            };
            let payload = json!({
                "kind": "adjacency",
                "inequalities": {
                    "passes": report.passes(),
                    "subset_violation": report.subset_violation.as_ref().map(|(s, i)| json!({
                        "subset": one_based(s),
                        "index": i + 1,
                    })),
                    "strict_pair_violation": report.strict_pair_violation.map(|(i, j)| [i + 1, j + 1]),
                },
                "realizable": witness.is_some(),
                "vertex_data": witness,
            });
            Ok(Outcome {
                payload: line(&payload),
                positive: witness.is_some(),
            })
        }
    }
}

pub fn reconstruct(input: Option<&Path>) -> Result<Outcome, Failure> {
    let matrix: MatrixJson = serde_json::from_str(&read_input(input)?)?;
    let rebuilt = reconstruct_from_adjacency(&matrix.to_adjacency()?)?;
    let payload = json!({
        "facets": rebuilt.complex.facets(),
        "vertex_data": rebuilt.vertex_data,
        "verified": rebuilt.verified(),
        "checks": {
            "adjacency_matches": rebuilt.check.adjacency_matches,
            "pure": rebuilt.check.pure,
            "clique": rebuilt.check.clique,
            "triangle_intersection_free": rebuilt.check.triangle_free,
        },
    });
    Ok(Outcome {
        payload: line(&payload),
        positive: rebuilt.verified(),
    })
}

pub fn counterexample(k: usize) -> Result<Outcome, Failure> {
    let pair = generate_counterexample(k)?;
    Ok(Outcome {
        payload: line(&serde_json::to_value(&pair)?),
        positive: pair.verified,
    })
}

/// Parses "3", "1-6" or "2,4,6-8" into ascending values.
fn parse_list(flag: &str, text: Option<&str>) -> Result<Vec<u64>, Failure> {
    let text = text.ok_or_else(|| Failure::usage(format!("--{flag} is required")))?;
    let bad = || {
        Failure::usage(format!(
            "--{flag}: expected numbers like 3, 1-6 or 2,4, got {text:?}"
        ))
    };
    let mut values = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                values.extend(lo..=hi);
            }
            None => values.push(part.parse().map_err(|_| bad())?),
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn positive(flag: &str, values: &[u64]) -> Result<(), Failure> {
    if values.contains(&0) {
        return Err(Failure::usage(format!("--{flag} must be positive")));
    }
    Ok(())
}

fn contiguous(flag: &str, values: &[u64]) -> Result<RangeInclusive<usize>, Failure> {
    let (lo, hi) = (values[0], values[values.len() - 1]);
    if hi - lo + 1 != values.len() as u64 {
        return Err(Failure::usage(format!(
            "--{flag} must be a single value or a range"
        )));
    }
    Ok(lo as usize..=hi as usize)
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of decimal integers is UTF-8"))
}

fn library_filter(filter: FilterArg) -> Filter {
    match filter {
        FilterArg::None => Filter::None,
        FilterArg::Clique => Filter::Clique,
        FilterArg::CliqueTif => Filter::CliqueTriangleFree,
    }
}

pub struct CountArgs {
    pub quantity: Quantity,
    pub p: Option<String>,
    pub q: Option<String>,
    pub n: Option<String>,
    pub k: Option<String>,
    pub method: Method,
    pub filter: FilterArg,
    pub budget: u128,
}

pub fn count(args: CountArgs) -> Result<Outcome, Failure> {
    let unsupported = || {
        Failure::usage(match (args.quantity, args.method) {
            (Quantity::Pure, Method::Series) => {
                "the series gives totals only; drop --n".to_string()
            }
            (_, Method::Series) => {
                "--method series applies to pure-complex totals only".to_string()
            }
            (_, Method::Oracle) => {
                "--method oracle applies to pure complexes and alignments only".to_string()
            }
            (_, Method::Formula) => unreachable!("every quantity has a formula"),
        })
    };
    if args.filter != FilterArg::None
        && !(args.quantity == Quantity::Pure && args.method == Method::Oracle)
    {
        return Err(Failure::usage(
            "--filter needs --method oracle; use the bound quantity for a closed-form estimate",
        ));
    }
    let ps = parse_list("p", args.p.as_deref())?;
    positive("p", &ps)?;
    let cell = |a: u64, b: u64, v: String| vec![a.to_string(), b.to_string(), v];
    let payload = match args.quantity {
        Quantity::Pure => {
            let qs = parse_list("q", args.q.as_deref())?;
            positive("q", &qs)?;
            let ns = args
                .n
                .as_deref()
                .map(|n| parse_list("n", Some(n)))
                .transpose()?;
            let mut rows = Vec::new();
            for &p in &ps {
                for &q in &qs {
                    match (&ns, args.method) {
                        (Some(ns), Method::Formula) => {
                            rows.extend(ns.iter().map(|&n| {
                                vec![
                                    p.to_string(),
                                    q.to_string(),
                                    n.to_string(),
                                    s_pure(p, q, n).to_string(),
                                ]
                            }));
                        }
                        (Some(ns), Method::Oracle) => {
                            let task = EnumerationTask::new(p as usize, q as usize)?
                                .with_filter(library_filter(args.filter))
                                .with_budget(args.budget);
                            let full = task.full_range();
                            for &n in ns {
                                let n = n as usize;
                                let value = if full.contains(&n) {
                                    enumeration::count(&task.clone().with_range(n..=n)?)?.total
                                } else {
                                    0
                                };
                                rows.push(vec![
                                    p.to_string(),
                                    q.to_string(),
                                    n.to_string(),
                                    value.to_string(),
                                ]);
                            }
                        }
                        (Some(_), Method::Series) => return Err(unsupported()),
                        (None, Method::Formula) => {
                            rows.push(cell(p, q, s_pure_total(p, q).to_string()))
                        }
                        (None, Method::Series) => {
                            rows.push(cell(p, q, s_pure_series(p, q).value.to_string()))
                        }
                        (None, Method::Oracle) => {
                            let task = EnumerationTask::new(p as usize, q as usize)?
                                .with_filter(library_filter(args.filter))
                                .with_budget(args.budget);
                            rows.push(cell(p, q, enumeration::count(&task)?.total.to_string()));
                        }
                    }
                }
            }
            if ns.is_some() {
                csv_table(&["p", "q", "n", "value"], rows)?
            } else {
                csv_table(&["p", "q", "value"], rows)?
            }
        }
        Quantity::ByVertices => {
            if args.method != Method::Formula {
                return Err(unsupported());
            }
            let ns = parse_list("n", args.n.as_deref())?;
            let rows = ps
                .iter()
                .flat_map(|&p| {
                    ns.iter()
                        .map(move |&n| cell(p, n, s_pure_by_vertices(p, n).to_string()))
                })
                .collect();
            csv_table(&["p", "n", "value"], rows)?
        }
        Quantity::Alignments => {
            let ks = parse_list("k", args.k.as_deref())?;
            positive("k", &ks)?;
            let mut rows = Vec::new();
            for &p in &ps {
                for &k in &ks {
                    let value = match args.method {
                        Method::Formula => alignments(p, k).to_string(),
                        Method::Oracle => {
                            enumerate_alignments(p as usize, k as usize, args.budget)?.to_string()
                        }
                        Method::Series => return Err(unsupported()),
                    };
                    rows.push(cell(p, k, value));
                }
            }
            csv_table(&["p", "k", "value"], rows)?
        }
        Quantity::Turan | Quantity::Bound => {
            if args.method != Method::Formula {
                return Err(unsupported());
            }
            let qs = parse_list("q", args.q.as_deref())?;
            positive("q", &qs)?;
            let rows = ps
                .iter()
                .flat_map(|&p| {
                    qs.iter().map(move |&q| {
                        let value = if args.quantity == Quantity::Turan {
                            turan_number(p, q).to_string()
                        } else {
                            clique_upper_bound(p, q).to_string()
                        };
                        cell(p, q, value)
                    })
                })
                .collect();
            csv_table(&["p", "q", "value"], rows)?
        }
    };
    Ok(Outcome::ok(payload))
}

pub fn enumerate(
    p: usize,
    q: usize,
    n: Option<&str>,
    filter: FilterArg,
    emit: Emit,
    budget: u128,
) -> Result<Outcome, Failure> {
    let mut task = EnumerationTask::new(p, q)?
        .with_filter(library_filter(filter))
        .with_budget(budget);
    if let Some(n) = n {
        let ns = parse_list("n", Some(n))?;
        task = task.with_range(contiguous("n", &ns)?)?;
    }
    match emit {
        Emit::Count => {
            let counts = enumeration::count(&task)?;
            let mut rows: Vec<Vec<String>> = counts
                .per_n
                .iter()
                .map(|(n, c)| vec![p.to_string(), q.to_string(), n.to_string(), c.to_string()])
                .collect();
            rows.push(vec![
                p.to_string(),
                q.to_string(),
                "total".into(),
                counts.total.to_string(),
            ]);
            Ok(Outcome::ok(csv_table(&["p", "q", "n", "value"], rows)?))
        }
        Emit::Jsonl => {
            // the budget is checked before the first line is written
            let complexes = enumeration::stream(&task)?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for complex in complexes {
                serde_json::to_writer(&mut out, &complex)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

pub fn sample(p: usize, q: usize, seed: u64, max_attempts: u64) -> Result<Outcome, Failure> {
    if p == 0 || q == 0 {
        return Err(Failure::usage("--p and --q must be positive"));
    }
    let complex = random_pure_clique_tif(p, q, seed, max_attempts)?;
    Ok(Outcome::ok(line(&serde_json::to_value(&complex)?)))
}
