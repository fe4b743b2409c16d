use std::fs;
use std::path::{Path, PathBuf};

use quadlat::enumerate::{
    classify_rows, discrepancy_report, load_sweep, render, resume_sweep, scan_rows, sweep, ClassificationRow,
    Discrepancy, Format, SweepFiles, TableKind,
};
use quadlat::fixtures;
use quadlat::groupoid::{
    check_identity, direct_product, dual, find_isomorphism, is_quadratical, CayleyTable, IdentityId, Verdict,
};
use quadlat::linear::{
    linear_table, solve_quadratic_congruence, translatability_k_linear, translatability_k_quadratical, LinearSpec,
};
use quadlat::qn::{
    canonical_labels, detect_form, h_chain, render_trace, search_qn, CaseOutcome, Refutation, RefutationEnd,
    QnRefutationReport, refute_q6, Q6_SPLIT_DEPTH,
};
use quadlat::translatable::{find_translatable_ordering, translatability_report, DEFAULT_ORDER_SEARCH_CAP};
use serde_json::{json, Value};

use crate::args::{Command, OutputFormat, Source, SweepArgs};
use crate::{CliError, Output};

pub const CAP_VAR: &str = "QUADLAT_MAX_ORDER_SEARCH";

type Res<T> = Result<T, CliError>;

pub fn run(command: Command, format: OutputFormat) -> Res<Output> {
    match command {
        Command::Solve { m } => solve(m),
        Command::Table { source, .. } => Ok(table_output(&load(&source)?)),
        Command::Check { source, all, identity } => check(&load(&source)?, all, &identity),
        Command::K { m, a, b, c } => k(m, a, b, c),
        Command::OrderSearch { source, ordering } => order_search(&load(&source)?, ordering),
        Command::Hchain { source, base, n } => hchain(&load(&source)?, &base, n),
        Command::DetectForm { source, canonical } => detect(&load(&source)?, canonical.as_deref()),
        Command::CompleteQn {
            n,
            choice,
            split_depth,
            seed_labels,
            trace,
            ..
        } => complete(n, &choice, split_depth, seed_labels, trace.as_deref()),
        Command::RefuteQ6 { trace_dir, seed_labels } => refute(trace_dir.as_deref(), seed_labels),
        Command::Dual { source, .. } => Ok(table_output(&dual(&load(&source)?))),
        Command::Product { left, right, .. } => {
            Ok(table_output(&direct_product(&load_ref(&left)?, &load_ref(&right)?)))
        }
        Command::Iso { left, right } => iso(&load_ref(&left)?, &load_ref(&right)?),
        Command::Scan { max_m, max_k, sweep } => enumerate(TableKind::Scan, max_m, max_k, &sweep, format),
        Command::Classify { max_m, sweep } => enumerate(TableKind::Classify, max_m, u64::MAX, &sweep, format),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn fixture(name: &str) -> Option<CayleyTable> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|i| i.parse::<usize>().ok());
    match name {
        "q1" | "q2" | "q3" | "q4" => fixtures::qn(numbered("q")?),
        "q1-dual" | "q3-dual" | "q4-dual" => fixtures::qn_dual(name[1..2].parse().ok()?),
        _ if name.starts_with("z3-") => fixtures::z3_square(numbered("z3-")?),
        _ if name.starts_with("t5-") => {
            let i = numbered("t5-")?;
            (1..=3).contains(&i).then(|| fixtures::translatable_order5()[i - 1].clone())
        }
        _ => None,
    }
}

fn load_ref(reference: &str) -> Res<CayleyTable> {
    if let Some(name) = reference.strip_prefix('@') {
        return fixture(name).ok_or_else(|| usage(format!("unknown fixture @{name}")));
    }
    let text = fs::read_to_string(reference).map_err(|e| quadlat::Error::Io {
        path: PathBuf::from(reference),
        source: e,
    })?;
    Ok(text.parse()?)
}

fn load(source: &Source) -> Res<CayleyTable> {
    match (&source.input, source.m, source.a) {
        (Some(r), ..) => load_ref(r),
        (None, Some(m), Some(a)) => {
            let b = source.b.unwrap_or(1 - a);
            let spec = LinearSpec::new(m, a, b, source.c.unwrap_or(0))?;
            Ok(linear_table(&spec))
        }
        _ => Err(usage("give a table with -i FILE or -m M -a A")),
    }
}

fn element(t: &CayleyTable, name: &str) -> Res<usize> {
    t.element(name)
        .ok_or_else(|| usage(format!("no element {name:?} in a table of order {}", t.order())))
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn table_json(t: &CayleyTable) -> Value {
    json!({
        "order": t.order(),
        "rows": t.rows(),
        "labels": t.labels(),
    })
}

fn table_csv(t: &CayleyTable) -> String {
    t.rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

fn table_output(t: &CayleyTable) -> Output {
    Output {
        text: t.to_text(),
        json: table_json(t),
        csv: Some(table_csv(t)),
    }
}

fn solve(m: u64) -> Res<Output> {
    if m == 0 {
        return Err(usage("m must be positive"));
    }
    let sols = solve_quadratic_congruence(m);
    let csv = std::iter::once("m,a\n".to_owned())
        .chain(sols.iter().map(|a| format!("{m},{a}\n")))
        .collect();
    Ok(Output {
        text: joined(&sols) + "\n",
        json: json!({ "m": m, "solutions": sols }),
        csv: Some(csv),
    })
}

fn check(t: &CayleyTable, all: bool, names: &[String]) -> Res<Output> {
    let ids: Vec<IdentityId> = if all {
        IdentityId::ALL.to_vec()
    } else if names.is_empty() {
        IdentityId::QUADRATICAL_LAWS.to_vec()
    } else {
        names
            .iter()
            .map(|s| s.parse::<IdentityId>().map_err(|e| usage(e.to_string())))
            .collect::<Res<_>>()?
    };
    let quadratical = is_quadratical(t).0;
    let mut text = String::new();
    let mut csv = String::from("identity,holds,counterexample\n");
    let mut verdicts = Vec::new();
    for id in ids {
        let v = check_identity(t, id);
        let tuple = match &v {
            Verdict::Holds => None,
            Verdict::Counterexample(c) => Some(c.clone()),
        };
        let shown = tuple.as_ref().map(|c| joined(c.iter().map(|&x| t.label(x))));
        match &shown {
            None => text.push_str(&format!("{:<22}holds\n", id.name())),
            Some(c) => text.push_str(&format!("{:<22}fails at ({})\n", id.name(), c.replace(' ', ", "))),
        }
        csv.push_str(&format!("{},{},{}\n", id.name(), tuple.is_none(), shown.unwrap_or_default()));
        verdicts.push(json!({
            "identity": id.name(),
            "equation": id.equation(),
            "holds": tuple.is_none(),
            "counterexample": tuple,
        }));
    }
    text.push_str(&format!("quadratical: {}\n", if quadratical { "yes" } else { "no" }));
    Ok(Output {
        text,
        json: json!({ "order": t.order(), "quadratical": quadratical, "verdicts": verdicts }),
        csv: Some(csv),
    })
}

fn k(m: u64, a: i64, b: Option<i64>, c: Option<i64>) -> Res<Output> {
    match b {
        None => {
            let a = a.rem_euclid(m.max(1) as i64) as u64;
            let k = translatability_k_quadratical(m, a)?;
            let b = (m + 1 - a) % m;
            Ok(Output {
                text: format!("{k}\n"),
                json: json!({ "m": m, "a": a, "b": b, "k": k }),
                csv: Some(format!("m,a,b,k\n{m},{a},{b},{k}\n")),
            })
        }
        Some(b) => {
            let spec = LinearSpec::new(m, a, b, c.unwrap_or(0))?;
            let ks = translatability_k_linear(&spec);
            Ok(Output {
                text: if ks.is_empty() { "none\n".into() } else { joined(&ks) + "\n" },
                json: json!({ "m": m, "a": spec.a(), "b": spec.b(), "c": spec.c(), "ks": ks }),
                csv: Some(
                    std::iter::once("k\n".to_owned())
                        .chain(ks.iter().map(|k| format!("{k}\n")))
                        .collect(),
                ),
            })
        }
    }
}

fn search_cap() -> Res<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CAP_VAR} must be a non-negative integer, got {v:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ORDER_SEARCH_CAP),
        Err(e) => Err(usage(format!("{CAP_VAR}: {e}"))),
    }
}

fn order_search(t: &CayleyTable, ordering: Option<Vec<String>>) -> Res<Output> {
    let labels = |xs: &[usize]| joined(xs.iter().map(|&x| t.label(x)));
    if let Some(names) = ordering {
        let ordering = names.iter().map(|s| element(t, s)).collect::<Res<Vec<_>>>()?;
        let report = translatability_report(t, &ordering)?;
        let ks: Vec<usize> = report.valid_ks.iter().copied().collect();
        return Ok(Output {
            text: format!(
                "ordering: {}\nfirst row: {}\nvalid k: {}\n",
                labels(&report.ordering),
                labels(&report.first_row),
                if ks.is_empty() { "none".into() } else { joined(&ks) }
            ),
            json: json!({
                "ordering": report.ordering,
                "first_row": report.first_row,
                "valid_ks": ks,
            }),
            csv: None,
        });
    }
    let found = find_translatable_ordering(t, search_cap()?)?;
    Ok(match found {
        Some((ordering, k)) => {
            let report = translatability_report(t, &ordering)?;
            Output {
                text: format!(
                    "ordering: {}\nfirst row: {}\nk: {k}\n",
                    labels(&ordering),
                    labels(&report.first_row)
                ),
                json: json!({
                    "ordering": ordering,
                    "k": k,
                    "first_row": report.first_row,
                    "valid_ks": report.valid_ks,
                }),
                csv: None,
            }
        }
        None => Output {
            text: "no translatable ordering\n".into(),
            json: json!({ "ordering": null, "k": null, "first_row": null, "valid_ks": [] }),
            csv: None,
        },
    })
}

fn hchain(t: &CayleyTable, base: &[String], n: Option<usize>) -> Res<Output> {
    let (a, b) = (element(t, &base[0])?, element(t, &base[1])?);
    let n = n.unwrap_or((t.order().saturating_sub(1)) / 4);
    let d = h_chain(t, a, b, n)?;
    let mut text = format!("center: {}\n", t.label(d.center));
    for (i, blk) in d.blocks.iter().enumerate() {
        text.push_str(&format!("H{}: {}\n", i + 1, joined(blk.iter().map(|&x| t.label(x)))));
    }
    text.push_str(&format!("covers: {}\n", if d.covers() { "yes" } else { "no" }));
    Ok(Output {
        text,
        json: json!({
            "n": d.n,
            "base": [a, b],
            "center": d.center,
            "blocks": d.blocks,
            "covers": d.covers(),
        }),
        csv: None,
    })
}

fn detect(t: &CayleyTable, canonical: Option<&Path>) -> Res<Output> {
    let form = detect_form(t)?;
    if let (Some((n, a, b)), Some(path)) = (form, canonical) {
        let canon = h_chain(t, a, b, n)?.canonical_table(t)?;
        fs::write(path, canon.to_text()).map_err(|e| quadlat::Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
    }
    Ok(match form {
        Some((n, a, b)) => Output {
            text: format!("Q{n} with a = {}, b = {}\n", t.label(a), t.label(b)),
            json: json!({ "n": n, "a": a, "b": b }),
            csv: None,
        },
        None => Output {
            text: "no base pair exhausts the table\n".into(),
            json: json!({ "n": null, "a": null, "b": null }),
            csv: None,
        },
    })
}

fn parse_choice(n: usize, raw: &str) -> Res<usize> {
    let bad = || usage(format!("choice {raw:?} must be 1..4 or {n}1..{n}4"));
    let value: usize = raw.trim().parse().map_err(|_| bad())?;
    if (1..=4).contains(&value) {
        return Ok(value);
    }
    raw.trim()
        .strip_prefix(&n.to_string())
        .and_then(|c| c.parse::<usize>().ok())
        .filter(|c| (1..=4).contains(c))
        .ok_or_else(bad)
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| {
        quadlat::Error::Io {
            path: path.to_path_buf(),
            source: e,
        }
        .into()
    })
}

fn refutation_json(r: &Refutation) -> Value {
    let conflict = match &r.end {
        RefutationEnd::Conflict(c) => serde_json::to_value(c).unwrap_or(Value::Null),
        RefutationEnd::Split { .. } => Value::Null,
    };
    json!({
        "depth": r.depth(),
        "leaves": r.leaves(),
        "steps": r.total_steps(),
        "conflict": conflict,
    })
}

fn complete(n: usize, raw: &str, depth: usize, seed_labels: bool, trace: Option<&Path>) -> Res<Output> {
    let choice = parse_choice(n, raw)?;
    let labels = canonical_labels(n, seed_labels);
    let label = |v: usize| labels[v].clone();
    let case = format!("{}{}", n, choice);
    Ok(match search_qn(n, choice, depth)? {
        CaseOutcome::Completed { table, trace: steps } => {
            if let Some(path) = trace {
                write_file(path, &render_trace(&steps, &labels))?;
            }
            let table = table.with_labels(labels.clone())?;
            eprintln!("completed aba·a = {case} after {} steps", steps.len());
            Output {
                text: table.to_text(),
                json: json!({
                    "n": n,
                    "choice": choice,
                    "outcome": "completed",
                    "steps": steps.len(),
                    "table": table_json(&table),
                }),
                csv: Some(table_csv(&table)),
            }
        }
        CaseOutcome::Refuted(r) => {
            if let Some(path) = trace {
                write_file(path, &r.render(&label))?;
            }
            let end = match &r.end {
                RefutationEnd::Conflict(c) => c.render(&label),
                RefutationEnd::Split { .. } => format!("all {} branches refuted", r.leaves()),
            };
            Output {
                text: format!(
                    "contradiction for aba·a = {case} after {} steps (split depth {}): {end}\n",
                    r.total_steps(),
                    r.depth()
                ),
                json: json!({
                    "n": n,
                    "choice": choice,
                    "outcome": "contradiction",
                    "refutation": refutation_json(&r),
                }),
                csv: None,
            }
        }
        CaseOutcome::Exhausted(p) => {
            if let Some(path) = trace {
                write_file(path, &render_trace(p.trace(), &labels))?;
            }
            let cells = p.order() * p.order();
            Output {
                text: format!("stuck: {} of {cells} cells known\n{}", p.known_count(), p.render(&label)),
                json: json!({
                    "n": n,
                    "choice": choice,
                    "outcome": "stuck",
                    "known": p.known_count(),
                    "cells": cells,
                }),
                csv: None,
            }
        }
    })
}

fn refute(trace_dir: Option<&Path>, seed_labels: bool) -> Res<Output> {
    let report: QnRefutationReport = refute_q6()?;
    let labels = canonical_labels(report.n, seed_labels);
    let label = |v: usize| labels[v].clone();
    if let Some(dir) = trace_dir {
        fs::create_dir_all(dir).map_err(|e| quadlat::Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
    }
    let mut text = String::new();
    let mut cases = Vec::new();
    for (c, outcome) in &report.cases {
        let case = format!("{}{c}", report.n);
        match outcome {
            CaseOutcome::Refuted(r) => {
                text.push_str(&format!(
                    "aba·a = {case}: contradiction, split depth {}, {} leaves, {} steps\n",
                    r.depth(),
                    r.leaves(),
                    r.total_steps()
                ));
                if let Some(dir) = trace_dir {
                    write_file(&dir.join(format!("q6_case{case}.trace")), &r.render(&label))?;
                }
                cases.push(json!({ "choice": c, "outcome": "contradiction", "refutation": refutation_json(r) }));
            }
            CaseOutcome::Completed { .. } => {
                text.push_str(&format!("aba·a = {case}: COMPLETED, the refutation fails\n"));
                cases.push(json!({ "choice": c, "outcome": "completed" }));
            }
            CaseOutcome::Exhausted(p) => {
                text.push_str(&format!(
                    "aba·a = {case}: split budget {} exhausted with {} cells known\n",
                    Q6_SPLIT_DEPTH,
                    p.known_count()
                ));
                cases.push(json!({ "choice": c, "outcome": "stuck", "known": p.known_count() }));
            }
        }
    }
    let output = Output {
        text,
        json: json!({
            "n": report.n,
            "max_depth": report.max_depth,
            "all_refuted": report.all_refuted(),
            "cases": cases,
        }),
        csv: None,
    };
    if report.all_refuted() {
        Ok(output)
    } else {
        Err(CliError::Failed(output, "not every case was refuted".into()))
    }
}

fn iso(left: &CayleyTable, right: &CayleyTable) -> Res<Output> {
    if left.order() != right.order() {
        return Ok(Output {
            text: format!("not isomorphic: orders {} and {} differ\n", left.order(), right.order()),
            json: json!({ "isomorphism": null }),
            csv: None,
        });
    }
    let phi = find_isomorphism(left, right);
    Ok(match phi {
        Some(phi) => Output {
            text: format!(
                "isomorphic: {}\n",
                (0..left.order())
                    .map(|x| format!("{}->{}", left.label(x), right.label(phi[x])))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            json: json!({ "isomorphism": phi }),
            csv: None,
        },
        None => Output {
            text: "not isomorphic\n".into(),
            json: json!({ "isomorphism": null }),
            csv: None,
        },
    })
}

fn enumerate(kind: TableKind, max_m: u64, max_k: u64, args: &SweepArgs, format: OutputFormat) -> Res<Output> {
    if max_m == 0 || max_k == 0 {
        return Err(usage("bounds must be positive"));
    }
    let swept = match &args.checkpoint {
        None => sweep(2, max_m)?,
        Some(checkpoint) => {
            let files = SweepFiles {
                checkpoint: checkpoint.clone(),
                rows: args.rows.clone().unwrap_or_else(|| {
                    let mut p = checkpoint.clone().into_os_string();
                    p.push(".rows.csv");
                    p.into()
                }),
            };
            let fresh = resume_sweep(&files, max_m, args.stop_after)?;
            let reached = quadlat::enumerate::read_checkpoint(&files.checkpoint)?.unwrap_or(0);
            if reached < max_m && args.stop_after.is_some() {
                eprintln!("checkpoint at m = {reached} of {max_m}; run again to resume");
            }
            if args.incremental {
                fresh
            } else {
                load_sweep(&files)?.into_iter().filter(|r| r.m <= max_m.min(reached)).collect()
            }
        }
    };
    let rows: Vec<ClassificationRow> = match kind {
        TableKind::Scan => scan_rows(swept, max_k),
        TableKind::Classify => classify_rows(swept),
    };
    if let Some(path) = &args.discrepancies {
        let report = discrepancies(kind, &rows, max_m, max_k);
        let text = match format {
            OutputFormat::Json => {
                serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))? + "\n"
            }
            _ => report.iter().map(|d| format!("{:?}: {d}\n", d.kind)).collect(),
        };
        write_file(path, &text)?;
    }
    let csv = render(&rows, kind, Format::Csv)?;
    let json_text = render(&rows, kind, Format::Json)?;
    let header = kind.header().join(" ");
    let text = std::iter::once(header + "\n")
        .chain(rows.iter().map(|r| {
            let f = match kind {
                TableKind::Scan => [r.k, r.m, r.a, r.b],
                TableKind::Classify => [r.m, r.a, r.b, r.k],
            };
            joined(f) + "\n"
        }))
        .collect();
    Ok(Output {
        text,
        json: serde_json::from_str(&json_text).map_err(|e| CliError::Internal(e.to_string()))?,
        csv: Some(csv),
    })
}

fn discrepancies(kind: TableKind, rows: &[ClassificationRow], max_m: u64, max_k: u64) -> Vec<Discrepancy> {
    match kind {
        TableKind::Scan => {
            discrepancy_report(rows, &fixtures::transcribed_k_table(), |r| r.m <= max_m && r.k < max_k)
        }
        TableKind::Classify => {
            discrepancy_report(rows, &fixtures::transcribed_classification(), |r| r.m <= max_m)
        }
    }
}
