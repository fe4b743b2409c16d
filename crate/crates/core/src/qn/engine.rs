//! Forward-chaining deduction over partially known Cayley tables.
//!
//! Every cell assignment is recorded as a [`Step`] carrying the rule that
//! produced it and the known cells it read, so that traces can be replayed
//! and checked independently of the search that produced them.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::groupoid::{CayleyTable, IdentityId};

pub type Cell = (usize, usize);

const NONE: usize = usize::MAX;

/// Identities used as rewrite rules. Strong elasticity contributes two
/// equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Bookend,
    ElasticLeft,
    ElasticRight,
    LeftDistributive,
    RightDistributive,
    Medial,
    Alterable,
}

impl Law {
    /// Fixed application order, cheapest first.
    pub const ORDER: [Law; 7] = [
        Law::Bookend,
        Law::ElasticLeft,
        Law::ElasticRight,
        Law::Alterable,
        Law::LeftDistributive,
        Law::RightDistributive,
        Law::Medial,
    ];

    pub fn identity(self) -> IdentityId {
        match self {
            Law::Bookend => IdentityId::Bookend,
            Law::ElasticLeft | Law::ElasticRight => IdentityId::StrongElasticity,
            Law::LeftDistributive => IdentityId::LeftDistributivity,
            Law::RightDistributive => IdentityId::RightDistributivity,
            Law::Medial => IdentityId::Mediality,
            Law::Alterable => IdentityId::Alterability,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Law::Bookend | Law::ElasticLeft | Law::ElasticRight => 2,
            Law::LeftDistributive | Law::RightDistributive => 3,
            Law::Medial | Law::Alterable => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::Bookend => "bookend",
            Law::ElasticLeft => "elasticity",
            Law::ElasticRight => "strong-elasticity",
            Law::LeftDistributive => "left-distributivity",
            Law::RightDistributive => "right-distributivity",
            Law::Medial => "mediality",
            Law::Alterable => "alterability",
        }
    }

    fn equation(self) -> Option<&'static Equation> {
        static EQUATIONS: OnceLock<Vec<Equation>> = OnceLock::new();
        let all = EQUATIONS.get_or_init(|| {
            [
                ("(y*x)*(x*y)", "x"),
                ("x*(y*x)", "(x*y)*x"),
                ("(x*y)*x", "(y*x)*y"),
                ("x*(y*z)", "(x*y)*(x*z)"),
                ("(x*y)*z", "(x*z)*(y*z)"),
                ("(x*y)*(z*w)", "(x*z)*(y*w)"),
            ]
            .iter()
            .map(|(l, r)| Equation {
                lhs: Term::parse(l),
                rhs: Term::parse(r),
            })
            .collect()
        });
        let i = match self {
            Law::Bookend => 0,
            Law::ElasticLeft => 1,
            Law::ElasticRight => 2,
            Law::LeftDistributive => 3,
            Law::RightDistributive => 4,
            Law::Medial => 5,
            Law::Alterable => return None,
        };
        Some(&all[i])
    }
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Var(usize),
    Mul(usize, usize),
}

/// A term stored bottom-up; the root is the last node.
#[derive(Clone, Debug)]
struct Term {
    nodes: Vec<Node>,
}

impl Term {
    fn parse(s: &str) -> Term {
        fn atom(chars: &[u8], pos: &mut usize, nodes: &mut Vec<Node>) -> usize {
            let c = chars[*pos];
            *pos += 1;
            if c == b'(' {
                let i = product(chars, pos, nodes);
                *pos += 1;
                i
            } else {
                nodes.push(Node::Var(b"xyzw".iter().position(|&v| v == c).expect("variable")));
                nodes.len() - 1
            }
        }
        fn product(chars: &[u8], pos: &mut usize, nodes: &mut Vec<Node>) -> usize {
            let mut left = atom(chars, pos, nodes);
            while *pos < chars.len() && chars[*pos] == b'*' {
                *pos += 1;
                let right = atom(chars, pos, nodes);
                nodes.push(Node::Mul(left, right));
                left = nodes.len() - 1;
            }
            left
        }
        let mut nodes = Vec::new();
        let mut pos = 0;
        product(s.as_bytes(), &mut pos, &mut nodes);
        Term { nodes }
    }
}

#[derive(Debug)]
struct Equation {
    lhs: Term,
    rhs: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedKind {
    Idempotency,
    BasePair,
    Recurrence,
    CycleLaw,
    CenterProducts,
    CenterLeft,
    CenterRight,
    ChoiceRow,
    ChoiceCross,
}

impl SeedKind {
    pub fn name(self) -> &'static str {
        match self {
            SeedKind::Idempotency => "idempotency",
            SeedKind::BasePair => "base-pair",
            SeedKind::Recurrence => "chain-recurrence",
            SeedKind::CycleLaw => "cycle-law",
            SeedKind::CenterProducts => "center-products",
            SeedKind::CenterLeft => "center-left",
            SeedKind::CenterRight => "center-right",
            SeedKind::ChoiceRow => "choice-row",
            SeedKind::ChoiceCross => "choice-cross",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Seed(SeedKind),
    Assumption,
    NakedSingle,
    HiddenSingleRow,
    HiddenSingleColumn,
    Law { law: Law, vars: Vec<usize> },
}

impl Rule {
    pub fn render(&self, label: &dyn Fn(usize) -> String) -> String {
        match self {
            Rule::Seed(kind) => format!("seed:{}", kind.name()),
            Rule::Assumption => "assumption".into(),
            Rule::NakedSingle => "naked-single".into(),
            Rule::HiddenSingleRow => "hidden-single-row".into(),
            Rule::HiddenSingleColumn => "hidden-single-column".into(),
            Rule::Law { law, vars } => {
                let names: Vec<String> = vars.iter().map(|&v| label(v)).collect();
                format!("{}[{}]", law.name(), names.join(","))
            }
        }
    }
}

/// One deduction: `cell := value` by `rule`, reading `premises`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub cell: Cell,
    pub value: usize,
    pub rule: Rule,
    pub premises: Vec<(Cell, usize)>,
}

impl Step {
    /// `cell(x,y) := v  by RULE from [premises]`.
    pub fn render(&self, label: &dyn Fn(usize) -> String) -> String {
        let premises: Vec<String> = self
            .premises
            .iter()
            .map(|&((x, y), v)| format!("({},{})={}", label(x), label(y), label(v)))
            .collect();
        format!(
            "cell({},{}) := {}  by {} from [{}]",
            label(self.cell.0),
            label(self.cell.1),
            label(self.value),
            self.rule.render(label),
            premises.join(", ")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Line {
    Row(usize),
    Column(usize),
}

/// A state no completion can extend.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conflict {
    /// `rule` forces `value` into `cell`, but the cell or its row or column
    /// already rules that out.
    Clash {
        cell: Cell,
        value: usize,
        rule: Rule,
        premises: Vec<(Cell, usize)>,
    },
    /// Both sides of an identity are known and differ.
    Violated {
        law: Law,
        vars: Vec<usize>,
        premises: Vec<(Cell, usize)>,
    },
    /// Every value already occurs in the cell's row or column.
    EmptyCell { cell: Cell },
    /// A value missing from a line fits none of its unknown cells.
    NoPlace { line: Line, value: usize },
}

impl Conflict {
    pub fn render(&self, label: &dyn Fn(usize) -> String) -> String {
        let cells = |ps: &[(Cell, usize)]| {
            ps.iter()
                .map(|&((x, y), v)| format!("({},{})={}", label(x), label(y), label(v)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Conflict::Clash {
                cell,
                value,
                rule,
                premises,
            } => format!(
                "conflict: {} forces cell({},{}) := {} which the table already excludes, from [{}]",
                rule.render(label),
                label(cell.0),
                label(cell.1),
                label(*value),
                cells(premises)
            ),
            Conflict::Violated { law, vars, premises } => format!(
                "conflict: {} fails, from [{}]",
                Rule::Law {
                    law: *law,
                    vars: vars.clone()
                }
                .render(label),
                cells(premises)
            ),
            Conflict::EmptyCell { cell } => {
                format!("conflict: no value fits cell({},{})", label(cell.0), label(cell.1))
            }
            Conflict::NoPlace { line, value } => match line {
                Line::Row(x) => format!("conflict: {} has no place in row {}", label(*value), label(*x)),
                Line::Column(y) => {
                    format!("conflict: {} has no place in column {}", label(*value), label(*y))
                }
            },
        }
    }
}

/// What a law yields for one variable assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Deduction {
    Nothing,
    Assign(Cell, usize),
    Violation,
}

/// A Cayley table with unknown cells and an append-only deduction log.
///
/// Known cells never change, and no value repeats within a row or column.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialTable {
    n: usize,
    cells: Vec<usize>,
    /// `row_pos[x·n + v]` is the column holding `v` in row `x`.
    row_pos: Vec<usize>,
    /// `col_pos[y·n + v]` is the row holding `v` in column `y`.
    col_pos: Vec<usize>,
    known: usize,
    trace: Vec<Step>,
}

impl PartialTable {
    pub fn new(n: usize) -> Self {
        PartialTable {
            n,
            cells: vec![NONE; n * n],
            row_pos: vec![NONE; n * n],
            col_pos: vec![NONE; n * n],
            known: 0,
            trace: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.cells[x * self.n + y];
        (v != NONE).then_some(v)
    }

    pub fn known_count(&self) -> usize {
        self.known
    }

    pub fn is_complete(&self) -> bool {
        self.known == self.n * self.n
    }

    pub fn trace(&self) -> &[Step] {
        &self.trace
    }

    /// Values not yet present in the cell's row or column; empty for a known
    /// cell.
    pub fn candidates(&self, x: usize, y: usize) -> Vec<usize> {
        if self.get(x, y).is_some() {
            return Vec::new();
        }
        (0..self.n).filter(|&v| self.fits(x, y, v)).collect()
    }

    pub fn to_table(&self) -> Option<CayleyTable> {
        self.is_complete()
            .then(|| CayleyTable::from_flat(self.n, self.cells.clone()).expect("complete partial table"))
    }

    /// Rows of labels with `.` for unknown cells.
    pub fn render(&self, label: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        for x in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|y| self.get(x, y).map_or_else(|| ".".to_owned(), label))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    fn cell(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    fn fits(&self, x: usize, y: usize, v: usize) -> bool {
        self.row_pos[x * self.n + v] == NONE && self.col_pos[y * self.n + v] == NONE
    }

    /// Records `cell := value`. Returns `Ok(false)` if the cell already holds
    /// `value`.
    pub(crate) fn assign(
        &mut self,
        (x, y): Cell,
        value: usize,
        rule: Rule,
        premises: Vec<(Cell, usize)>,
    ) -> Result<bool, Conflict> {
        let n = self.n;
        let current = self.cell(x, y);
        if current == value {
            return Ok(false);
        }
        if current != NONE || !self.fits(x, y, value) {
            let mut premises = premises;
            if current != NONE {
                premises.push(((x, y), current));
            }
            let c = self.row_pos[x * n + value];
            if c != NONE {
                premises.push(((x, c), value));
            }
            let r = self.col_pos[y * n + value];
            if r != NONE {
                premises.push(((r, y), value));
            }
            return Err(Conflict::Clash {
                cell: (x, y),
                value,
                rule,
                premises,
            });
        }
        self.cells[x * n + y] = value;
        self.row_pos[x * n + value] = y;
        self.col_pos[y * n + value] = x;
        self.known += 1;
        self.trace.push(Step {
            cell: (x, y),
            value,
            rule,
            premises,
        });
        Ok(true)
    }

    /// Applies latin-square elimination, then the laws in [`Law::ORDER`],
    /// returning to the cheapest rule after every productive pass, until
    /// nothing changes.
    pub fn saturate(&mut self) -> Result<(), Conflict> {
        loop {
            self.latin()?;
            let mut progressed = false;
            for law in Law::ORDER {
                if self.apply_law(law)? {
                    progressed = true;
                    break;
                }
            }
            if !progressed {
                return Ok(());
            }
        }
    }

    /// Naked and hidden singles to a fixpoint.
    pub(crate) fn latin(&mut self) -> Result<bool, Conflict> {
        let n = self.n;
        let mut any = false;
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if self.cell(x, y) != NONE {
                        continue;
                    }
                    let cands = self.candidates(x, y);
                    match cands.len() {
                        0 => return Err(Conflict::EmptyCell { cell: (x, y) }),
                        1 => {
                            let premises = self.naked_premises(x, y, cands[0]);
                            changed |= self.assign((x, y), cands[0], Rule::NakedSingle, premises)?;
                        }
                        _ => {}
                    }
                }
            }
            for line in 0..2 {
                for i in 0..n {
                    for v in 0..n {
                        let present = if line == 0 {
                            self.row_pos[i * n + v]
                        } else {
                            self.col_pos[i * n + v]
                        };
                        if present != NONE {
                            continue;
                        }
                        let spots = self.spots(line == 0, i, v);
                        match spots.len() {
                            0 => {
                                let line = if line == 0 { Line::Row(i) } else { Line::Column(i) };
                                return Err(Conflict::NoPlace { line, value: v });
                            }
                            1 => {
                                let cell = spots[0];
                                let (rule, premises) = if line == 0 {
                                    (Rule::HiddenSingleRow, self.hidden_premises(true, i, v))
                                } else {
                                    (Rule::HiddenSingleColumn, self.hidden_premises(false, i, v))
                                };
                                changed |= self.assign(cell, v, rule, premises)?;
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return Ok(any);
            }
            any = true;
        }
    }

    /// Unknown cells of a line where `v` still fits.
    fn spots(&self, row: bool, i: usize, v: usize) -> Vec<Cell> {
        (0..self.n)
            .map(|j| if row { (i, j) } else { (j, i) })
            .filter(|&(x, y)| self.cell(x, y) == NONE && self.fits(x, y, v))
            .collect()
    }

    /// For every value other than `v`, one known cell in the row or column
    /// of `(x, y)` holding it.
    fn naked_premises(&self, x: usize, y: usize, v: usize) -> Vec<(Cell, usize)> {
        let n = self.n;
        (0..n)
            .filter(|&u| u != v)
            .map(|u| {
                let c = self.row_pos[x * n + u];
                if c != NONE {
                    ((x, c), u)
                } else {
                    ((self.col_pos[y * n + u], y), u)
                }
            })
            .collect()
    }

    /// For every other unknown cell of the line, the known cell that blocks
    /// `v` there.
    fn hidden_premises(&self, row: bool, i: usize, v: usize) -> Vec<(Cell, usize)> {
        let n = self.n;
        (0..n)
            .map(|j| if row { (i, j) } else { (j, i) })
            .filter(|&(x, y)| self.cell(x, y) == NONE && !self.fits(x, y, v))
            .map(|(x, y)| {
                if row {
                    ((self.col_pos[y * n + v], y), v)
                } else {
                    ((x, self.row_pos[x * n + v]), v)
                }
            })
            .collect()
    }

    /// One pass of `law` over all variable assignments in lexicographic
    /// order.
    fn apply_law(&mut self, law: Law) -> Result<bool, Conflict> {
        let n = self.n;
        let mut changed = false;
        let mut scratch = Vec::new();
        let mut vars = [0usize; 4];
        if law == Law::Alterable {
            for x in 0..n {
                for y in 0..n {
                    let v = self.cell(x, y);
                    if v == NONE {
                        continue;
                    }
                    for z in 0..n {
                        let w = self.row_pos[z * n + v];
                        if w == NONE {
                            continue;
                        }
                        vars = [x, y, z, w];
                        changed |= self.act(law, &vars, &mut scratch)?;
                    }
                }
            }
            return Ok(changed);
        }
        let arity = law.arity();
        let total = n.pow(arity as u32);
        for code in 0..total {
            let mut c = code;
            for i in (0..arity).rev() {
                vars[i] = c % n;
                c /= n;
            }
            changed |= self.act(law, &vars[..arity], &mut scratch)?;
        }
        Ok(changed)
    }

    fn act(&mut self, law: Law, vars: &[usize], scratch: &mut Vec<Cell>) -> Result<bool, Conflict> {
        match self.derive(law, vars, scratch) {
            Deduction::Nothing => Ok(false),
            Deduction::Assign(cell, value) => {
                let premises = self.law_premises(law, vars, scratch);
                self.assign(
                    cell,
                    value,
                    Rule::Law {
                        law,
                        vars: vars.to_vec(),
                    },
                    premises,
                )
            }
            Deduction::Violation => Err(Conflict::Violated {
                law,
                vars: vars.to_vec(),
                premises: self.law_premises(law, vars, scratch),
            }),
        }
    }

    /// Evaluates `law` at `vars`. If one side is known and the other is a
    /// product with exactly one unknown cell reachable through divisions by
    /// known entries, that cell is forced. `scratch` receives the division
    /// cells used.
    pub(crate) fn derive(&self, law: Law, vars: &[usize], scratch: &mut Vec<Cell>) -> Deduction {
        scratch.clear();
        if law == Law::Alterable {
            let (x, y, z, w) = (vars[0], vars[1], vars[2], vars[3]);
            let (p, q) = (self.cell(x, y), self.cell(z, w));
            if p == NONE || p != q {
                return Deduction::Nothing;
            }
            let (l, r) = (self.cell(y, z), self.cell(w, x));
            return match (l == NONE, r == NONE) {
                (false, false) if l != r => Deduction::Violation,
                (false, true) => Deduction::Assign((w, x), l),
                (true, false) => Deduction::Assign((y, z), r),
                _ => Deduction::Nothing,
            };
        }
        let eq = law.equation().expect("equational law");
        let mut lv = [NONE; 8];
        let mut rv = [NONE; 8];
        let l = self.eval(&eq.lhs, vars, &mut lv);
        let r = self.eval(&eq.rhs, vars, &mut rv);
        match (l == NONE, r == NONE) {
            (false, false) if l != r => Deduction::Violation,
            (false, true) => self
                .solve(&eq.rhs, &rv, eq.rhs.nodes.len() - 1, l, scratch)
                .map_or(Deduction::Nothing, |(c, v)| Deduction::Assign(c, v)),
            (true, false) => self
                .solve(&eq.lhs, &lv, eq.lhs.nodes.len() - 1, r, scratch)
                .map_or(Deduction::Nothing, |(c, v)| Deduction::Assign(c, v)),
            _ => Deduction::Nothing,
        }
    }

    fn eval(&self, term: &Term, vars: &[usize], out: &mut [usize; 8]) -> usize {
        for (i, node) in term.nodes.iter().enumerate() {
            out[i] = match *node {
                Node::Var(k) => vars[k],
                Node::Mul(a, b) => {
                    if out[a] == NONE || out[b] == NONE {
                        NONE
                    } else {
                        self.cell(out[a], out[b])
                    }
                }
            };
        }
        out[term.nodes.len() - 1]
    }

    fn solve(&self, term: &Term, vals: &[usize; 8], node: usize, target: usize, scratch: &mut Vec<Cell>) -> Option<(Cell, usize)> {
        let n = self.n;
        let Node::Mul(l, r) = term.nodes[node] else {
            return None;
        };
        let (a, b) = (vals[l], vals[r]);
        match (a == NONE, b == NONE) {
            (false, false) => Some(((a, b), target)),
            (false, true) => {
                let c = self.row_pos[a * n + target];
                if c == NONE {
                    return None;
                }
                scratch.push((a, c));
                self.solve(term, vals, r, c, scratch)
            }
            (true, false) => {
                let c = self.col_pos[b * n + target];
                if c == NONE {
                    return None;
                }
                scratch.push((c, b));
                self.solve(term, vals, l, c, scratch)
            }
            (true, true) => None,
        }
    }

    /// Known cells read while evaluating `law` at `vars`, plus the division
    /// cells in `scratch`.
    fn law_premises(&self, law: Law, vars: &[usize], scratch: &[Cell]) -> Vec<(Cell, usize)> {
        let mut cells: Vec<Cell> = Vec::new();
        if law == Law::Alterable {
            let (x, y, z, w) = (vars[0], vars[1], vars[2], vars[3]);
            cells.extend([(x, y), (z, w), (y, z), (w, x)]);
        } else {
            let eq = law.equation().expect("equational law");
            for term in [&eq.lhs, &eq.rhs] {
                let mut vals = [NONE; 8];
                self.eval(term, vars, &mut vals);
                for node in &term.nodes {
                    if let Node::Mul(a, b) = *node {
                        if vals[a] != NONE && vals[b] != NONE {
                            cells.push((vals[a], vals[b]));
                        }
                    }
                }
            }
        }
        cells.extend_from_slice(scratch);
        let mut out: Vec<(Cell, usize)> = Vec::new();
        for c in cells {
            let v = self.cell(c.0, c.1);
            if v != NONE && !out.iter().any(|&(d, _)| d == c) {
                out.push((c, v));
            }
        }
        out
    }

    /// The unknown cell with the fewest candidates, ties broken row-major.
    pub(crate) fn branching_cell(&self) -> Option<(Cell, Vec<usize>)> {
        let mut best: Option<(Cell, Vec<usize>)> = None;
        for x in 0..self.n {
            for y in 0..self.n {
                if self.cell(x, y) != NONE {
                    continue;
                }
                let c = self.candidates(x, y);
                if best.as_ref().map_or(true, |(_, b)| c.len() < b.len()) {
                    best = Some(((x, y), c));
                }
            }
        }
        best
    }
}

impl fmt::Debug for PartialTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialTable(order {}, {} known)\n{}",
            self.n,
            self.known,
            self.render(&|v| v.to_string())
        )
    }
}

/// Checks one recorded step against `state` without applying it.
pub(crate) fn justify(state: &PartialTable, step: &Step) -> Result<(), String> {
    let (x, y) = step.cell;
    let n = state.n;
    if x >= n || y >= n || step.value >= n {
        return Err("cell or value out of range".into());
    }
    if state.cell(x, y) != NONE {
        return Err(format!("cell ({x},{y}) is already known"));
    }
    if !state.fits(x, y, step.value) {
        return Err(format!("value {} already occurs in row {x} or column {y}", step.value));
    }
    for &((px, py), v) in &step.premises {
        if px >= n || py >= n || state.cell(px, py) != v {
            return Err(format!("premise ({px},{py})={v} does not hold"));
        }
    }
    match &step.rule {
        Rule::Seed(_) | Rule::Assumption => Ok(()),
        Rule::NakedSingle => {
            if state.candidates(x, y) == [step.value] {
                Ok(())
            } else {
                Err("cell has more than one candidate".into())
            }
        }
        Rule::HiddenSingleRow | Rule::HiddenSingleColumn => {
            let row = step.rule == Rule::HiddenSingleRow;
            let i = if row { x } else { y };
            if state.spots(row, i, step.value) == [step.cell] {
                Ok(())
            } else {
                Err("value has more than one place in its line".into())
            }
        }
        Rule::Law { law, vars } => {
            if vars.len() != law.arity() || vars.iter().any(|&v| v >= n) {
                return Err("malformed law instance".into());
            }
            let mut scratch = Vec::new();
            match state.derive(*law, vars, &mut scratch) {
                Deduction::Assign(c, v) if c == step.cell && v == step.value => Ok(()),
                other => Err(format!("law instance yields {other:?}")),
            }
        }
    }
}

/// Applies a step already checked by [`justify`].
pub(crate) fn apply_checked(state: &mut PartialTable, step: &Step) {
    state
        .assign(step.cell, step.value, step.rule.clone(), step.premises.clone())
        .expect("justified step applies");
}

/// Whether `conflict` genuinely holds in `state`.
pub(crate) fn confirm_conflict(state: &PartialTable, conflict: &Conflict, seed_ok: &dyn Fn(Cell, usize) -> bool) -> Result<(), String> {
    let n = state.n;
    match conflict {
        Conflict::Clash { cell, value, rule, .. } => {
            let (x, y) = *cell;
            if x >= n || y >= n || *value >= n {
                return Err("clash out of range".into());
            }
            let derived = match rule {
                Rule::Seed(_) => seed_ok(*cell, *value),
                Rule::Law { law, vars } => {
                    let mut scratch = Vec::new();
                    vars.len() == law.arity()
                        && state.derive(*law, vars, &mut scratch) == Deduction::Assign(*cell, *value)
                }
                _ => false,
            };
            if !derived {
                return Err("clashing rule does not derive the value".into());
            }
            if state.cell(x, y) == *value || (state.cell(x, y) == NONE && state.fits(x, y, *value)) {
                return Err("clashing value would fit".into());
            }
            Ok(())
        }
        Conflict::Violated { law, vars, .. } => {
            let mut scratch = Vec::new();
            if vars.len() == law.arity()
                && vars.iter().all(|&v| v < n)
                && state.derive(*law, vars, &mut scratch) == Deduction::Violation
            {
                Ok(())
            } else {
                Err("identity instance is not violated".into())
            }
        }
        Conflict::EmptyCell { cell: (x, y) } => {
            if *x < n && *y < n && state.cell(*x, *y) == NONE && state.candidates(*x, *y).is_empty() {
                Ok(())
            } else {
                Err("cell still has a candidate".into())
            }
        }
        Conflict::NoPlace { line, value } => {
            let (row, i) = match *line {
                Line::Row(i) => (true, i),
                Line::Column(i) => (false, i),
            };
            if i >= n || *value >= n {
                return Err("line out of range".into());
            }
            let present = if row {
                state.row_pos[i * n + value]
            } else {
                state.col_pos[i * n + value]
            };
            if present == NONE && state.spots(row, i, *value).is_empty() {
                Ok(())
            } else {
                Err("value still has a place".into())
            }
        }
    }
}
