//! H-chains, detection of the Qn form, and a deduction engine that completes
//! or refutes Qn Cayley tables from the value of `aba·a`.
//!
//! Canonical labelling: `aba` is index 0 and block element `tk` is index
//! `4(t−1)+k`, so `a = 11 = 1`, `ab = 12`, `ba = 13`, `b = 14`.

mod chain;
mod engine;
mod seeds;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

pub use chain::{
    block_index, canonical_labels, detect_form, dual_coordinate, dual_element_map, h_chain, ChainDefect,
    QnDecomposition,
};
pub use engine::{Cell, Conflict, Law, Line, PartialTable, Rule, SeedKind, Step};
pub use seeds::{qn_seeds, Seed};

use crate::error::{Error, Result};
use crate::groupoid::CayleyTable;
use engine::{apply_checked, confirm_conflict, justify};

/// Split depth used by [`refute_q6`].
pub const Q6_SPLIT_DEPTH: usize = 3;

/// A replayable proof that no completion exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    /// Steps taken at this node; a branch starts with its assumption.
    pub steps: Vec<Step>,
    pub end: RefutationEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationEnd {
    Conflict(Conflict),
    /// Every candidate of `cell` leads to a refutation.
    Split {
        cell: Cell,
        branches: Vec<(usize, Refutation)>,
    },
}

impl Refutation {
    pub fn leaves(&self) -> usize {
        match &self.end {
            RefutationEnd::Conflict(_) => 1,
            RefutationEnd::Split { branches, .. } => branches.iter().map(|(_, b)| b.leaves()).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.end {
            RefutationEnd::Conflict(_) => 0,
            RefutationEnd::Split { branches, .. } => 1 + branches.iter().map(|(_, b)| b.depth()).max().unwrap_or(0),
        }
    }

    pub fn total_steps(&self) -> usize {
        self.steps.len()
            + match &self.end {
                RefutationEnd::Conflict(_) => 0,
                RefutationEnd::Split { branches, .. } => branches.iter().map(|(_, b)| b.total_steps()).sum(),
            }
    }

    /// Line-oriented export; branches are indented.
    pub fn render(&self, label: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        self.render_into(label, 0, &mut out);
        out
    }

    fn render_into(&self, label: &dyn Fn(usize) -> String, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        for step in &self.steps {
            out.push_str(&pad);
            out.push_str(&step.render(label));
            out.push('\n');
        }
        match &self.end {
            RefutationEnd::Conflict(c) => {
                out.push_str(&pad);
                out.push_str(&c.render(label));
                out.push('\n');
            }
            RefutationEnd::Split { cell, branches } => {
                out.push_str(&format!(
                    "{pad}split on cell({},{}) over {} candidates\n",
                    label(cell.0),
                    label(cell.1),
                    branches.len()
                ));
                for (v, b) in branches {
                    out.push_str(&format!("{pad}case cell({},{}) = {}\n", label(cell.0), label(cell.1), label(*v)));
                    b.render_into(label, indent + 1, out);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum DeductionOutcome {
    Completed { table: CayleyTable, trace: Vec<Step> },
    Contradiction(Refutation),
    Stuck(PartialTable),
}

/// Result of a search that may split on cells.
#[derive(Clone, Debug)]
pub enum CaseOutcome {
    Refuted(Refutation),
    /// A full table was reached; for a refutation run this is a
    /// counterexample.
    Completed { table: CayleyTable, trace: Vec<Step> },
    /// Saturation stalled at the split budget.
    Exhausted(PartialTable),
}

fn check_choice(n: usize, choice: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Qn form needs n >= 1".into()));
    }
    if !(1..=4).contains(&choice) {
        return Err(Error::InvalidArgument(format!(
            "choice {choice} must name one of n1, n2, n3, n4 (1..=4)"
        )));
    }
    Ok(())
}

/// Seeds a partial table of order `4n+1` for `aba·a = n<choice>` and
/// saturates it, without any case split.
pub fn complete_qn(n: usize, choice: usize) -> Result<DeductionOutcome> {
    Ok(match search_qn(n, choice, 0)? {
        CaseOutcome::Refuted(r) => DeductionOutcome::Contradiction(r),
        CaseOutcome::Completed { table, trace } => DeductionOutcome::Completed { table, trace },
        CaseOutcome::Exhausted(p) => DeductionOutcome::Stuck(p),
    })
}

/// As [`complete_qn`], branching on the unknown cell with the fewest
/// candidates (ties broken row-major) whenever saturation stalls, up to
/// `max_depth` nested splits.
pub fn search_qn(n: usize, choice: usize, max_depth: usize) -> Result<CaseOutcome> {
    check_choice(n, choice)?;
    let mut state = PartialTable::new(4 * n + 1);
    for seed in qn_seeds(n, choice)? {
        if let Err(c) = state.assign(seed.cell, seed.value, Rule::Seed(seed.kind), Vec::new()) {
            return Ok(CaseOutcome::Refuted(Refutation {
                steps: state.trace().to_vec(),
                end: RefutationEnd::Conflict(c),
            }));
        }
    }
    Ok(search(state, 0, max_depth, n))
}

fn search(mut state: PartialTable, mark: usize, depth: usize, n: usize) -> CaseOutcome {
    let saturated = state.saturate();
    let steps = state.trace()[mark..].to_vec();
    if let Err(c) = saturated {
        return CaseOutcome::Refuted(Refutation {
            steps,
            end: RefutationEnd::Conflict(c),
        });
    }
    if let Some(table) = state.to_table() {
        let table = table.with_labels(canonical_labels(n, false)).expect("canonical labels");
        return CaseOutcome::Completed {
            table,
            trace: state.trace().to_vec(),
        };
    }
    if depth == 0 {
        return CaseOutcome::Exhausted(state);
    }
    let (cell, candidates) = state.branching_cell().expect("incomplete table has an unknown cell");
    let after = state.trace().len();
    let mut branches = Vec::with_capacity(candidates.len());
    for v in candidates {
        let mut child = state.clone();
        child
            .assign(cell, v, Rule::Assumption, Vec::new())
            .expect("a candidate fits its cell");
        match search(child, after, depth - 1, n) {
            CaseOutcome::Refuted(r) => branches.push((v, r)),
            other => return other,
        }
    }
    CaseOutcome::Refuted(Refutation {
        steps,
        end: RefutationEnd::Split { cell, branches },
    })
}

#[derive(Clone, Debug)]
pub struct QnRefutationReport {
    pub n: usize,
    pub max_depth: usize,
    /// One entry per choice `1..=4`, in order.
    pub cases: Vec<(usize, CaseOutcome)>,
}

impl QnRefutationReport {
    pub fn all_refuted(&self) -> bool {
        self.cases.iter().all(|(_, c)| matches!(c, CaseOutcome::Refuted(_)))
    }
}

/// Runs [`search_qn`] for all four choices in parallel.
pub fn refute_qn(n: usize, max_depth: usize) -> Result<QnRefutationReport> {
    let cases = (1..=4usize)
        .into_par_iter()
        .map(|c| search_qn(n, c, max_depth).map(|o| (c, o)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QnRefutationReport { n, max_depth, cases })
}

/// The four cases of the Q6 form, each expected to be refuted.
pub fn refute_q6() -> Result<QnRefutationReport> {
    refute_qn(6, Q6_SPLIT_DEPTH)
}

fn seed_set(n: usize, choice: usize) -> Result<HashSet<(Cell, usize, SeedKind)>> {
    Ok(qn_seeds(n, choice)?.into_iter().map(|s| (s.cell, s.value, s.kind)).collect())
}

/// Re-checks every step of `r` from an empty table and confirms that each
/// leaf conflict genuinely holds and that every split covers all candidates.
pub fn replay_refutation(n: usize, choice: usize, r: &Refutation) -> Result<()> {
    check_choice(n, choice)?;
    let seeds = seed_set(n, choice)?;
    replay_node(PartialTable::new(4 * n + 1), r, &seeds, None).map_err(Error::Invariant)
}

/// Re-checks a completion trace: every step is justified, no assumptions
/// are made, and the result equals `table`.
pub fn replay_completion(n: usize, choice: usize, trace: &[Step], table: &CayleyTable) -> Result<()> {
    check_choice(n, choice)?;
    let seeds = seed_set(n, choice)?;
    let mut state = PartialTable::new(4 * n + 1);
    for (i, step) in trace.iter().enumerate() {
        check_step(step, &seeds, i, None).map_err(Error::Invariant)?;
        justify(&state, step).map_err(|e| Error::Invariant(format!("step {i}: {e}")))?;
        apply_checked(&mut state, step);
    }
    match state.to_table() {
        Some(t) if t.entries() == table.entries() => Ok(()),
        Some(_) => Err(Error::Invariant("replayed table differs".into())),
        None => Err(Error::Invariant("trace leaves cells unknown".into())),
    }
}

fn check_step(
    step: &Step,
    seeds: &HashSet<(Cell, usize, SeedKind)>,
    index: usize,
    assumption: Option<(Cell, usize)>,
) -> std::result::Result<(), String> {
    match step.rule {
        Rule::Seed(kind) if !seeds.contains(&(step.cell, step.value, kind)) => {
            Err(format!("step {index}: not a seed of this case"))
        }
        Rule::Assumption if index != 0 || assumption != Some((step.cell, step.value)) => {
            Err(format!("step {index}: unexpected assumption"))
        }
        _ => Ok(()),
    }
}

fn replay_node(
    mut state: PartialTable,
    r: &Refutation,
    seeds: &HashSet<(Cell, usize, SeedKind)>,
    assumption: Option<(Cell, usize)>,
) -> std::result::Result<(), String> {
    if assumption.is_some() && r.steps.first().map(|s| &s.rule) != Some(&Rule::Assumption) {
        return Err("branch does not start with its assumption".into());
    }
    for (i, step) in r.steps.iter().enumerate() {
        check_step(step, seeds, i, assumption)?;
        justify(&state, step).map_err(|e| format!("step {i}: {e}"))?;
        apply_checked(&mut state, step);
    }
    match &r.end {
        RefutationEnd::Conflict(c) => {
            let seed_ok = |cell: Cell, v: usize| seeds.iter().any(|&(c2, v2, _)| c2 == cell && v2 == v);
            confirm_conflict(&state, c, &seed_ok)
        }
        RefutationEnd::Split { cell, branches } => {
            if cell.0 >= state.order() || cell.1 >= state.order() || state.get(cell.0, cell.1).is_some() {
                return Err("split on a known cell".into());
            }
            let values: Vec<usize> = branches.iter().map(|(v, _)| *v).collect();
            if values != state.candidates(cell.0, cell.1) {
                return Err("split branches do not cover the candidates".into());
            }
            for (v, b) in branches {
                replay_node(state.clone(), b, seeds, Some((*cell, *v)))?;
            }
            Ok(())
        }
    }
}

/// Renders steps one per line with canonical labels.
pub fn render_trace(steps: &[Step], labels: &[String]) -> String {
    let label = |v: usize| labels[v].clone();
    steps.iter().map(|s| s.render(&label) + "\n").collect()
}
