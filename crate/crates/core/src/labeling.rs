//! Labelings, list assignments and the verification predicates over them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};

/// Which label values a labeling may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelMode {
    /// Any nonnegative integer.
    Any,
    /// Labels must be at least 1 (the η, η_ℓ and σ problems).
    Positive,
    /// Labels must be 0 or 1.
    Binary,
}

impl LabelMode {
    pub fn admits(self, label: u64) -> bool {
        match self {
            LabelMode::Any => true,
            LabelMode::Positive => label >= 1,
            LabelMode::Binary => label <= 1,
        }
    }
}

/// Vertex id → nonnegative integer label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    values: BTreeMap<Vertex, u64>,
}

impl Labeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vec(values: &[u64]) -> Self {
        Labeling { values: values.iter().copied().enumerate().collect() }
    }

    pub fn constant(n: usize, label: u64) -> Self {
        Labeling::from_vec(&vec![label; n])
    }

    pub fn set(&mut self, v: Vertex, label: u64) {
        self.values.insert(v, label);
    }

    pub fn get(&self, v: Vertex) -> Option<u64> {
        self.values.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.values.iter().map(|(&v, &l)| (v, l))
    }

    pub fn max_label(&self) -> Option<u64> {
        self.values.values().copied().max()
    }

    pub fn distinct_labels(&self) -> usize {
        self.values.values().collect::<BTreeSet<_>>().len()
    }

    /// Dense label vector for `g`; errors on the first unlabeled vertex.
    pub fn dense(&self, g: &Graph) -> Result<Vec<u64>> {
        (0..g.n()).map(|v| self.get(v).ok_or(Error::MissingLabel(v))).collect()
    }

    pub fn check_mode(&self, mode: LabelMode) -> Result<()> {
        match self.values.iter().find(|(_, &l)| !mode.admits(l)) {
            Some((&v, &l)) => Err(Error::Precondition(format!("label {l} on vertex {v} not allowed in {mode:?} mode"))),
            None => Ok(()),
        }
    }

    /// Writes `v <id> <label>` lines with 1-based ids.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, l) in self.iter() {
            writeln!(s, "v {} {}", v + 1, l).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = Labeling::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let mut parts = line.split_whitespace();
            match parts.next() {
                None | Some("c") => continue,
                Some("v") => {
                    let id = parse_vertex(parts.next(), line_no)?;
                    let label = parse_u64(parts.next(), line_no, "label")?;
                    if parts.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after label"));
                    }
                    if out.values.insert(id, label).is_some() {
                        return Err(parse_err(line_no, format!("vertex {} labeled twice", id + 1)));
                    }
                }
                Some(tok) => return Err(parse_err(line_no, format!("expected `v`, found `{tok}`"))),
            }
        }
        Ok(out)
    }
}

/// Vertex id → nonempty finite set of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: BTreeMap<Vertex, BTreeSet<u64>>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lists(lists: Vec<Vec<u64>>) -> Self {
        ListAssignment { lists: lists.into_iter().enumerate().map(|(v, l)| (v, l.into_iter().collect())).collect() }
    }

    pub fn uniform(n: usize, list: &[u64]) -> Self {
        ListAssignment::from_lists(vec![list.to_vec(); n])
    }

    pub fn insert(&mut self, v: Vertex, list: impl IntoIterator<Item = u64>) {
        self.lists.insert(v, list.into_iter().collect());
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeSet<u64>> {
        self.lists.get(&v)
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &BTreeSet<u64>)> + '_ {
        self.lists.iter().map(|(&v, l)| (v, l))
    }

    /// Union of all lists.
    pub fn palette(&self) -> BTreeSet<u64> {
        self.lists.values().flatten().copied().collect()
    }

    pub fn max_list_size(&self) -> usize {
        self.lists.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Checks that every vertex of `g` has a nonempty list of positive values
    /// and that no list names a vertex outside `g`.
    pub fn validate_total(&self, g: &Graph) -> Result<()> {
        for (&v, list) in &self.lists {
            if v >= g.n() {
                return Err(Error::UnknownVertex { vertex: v, n: g.n() });
            }
            if list.is_empty() {
                return Err(Error::EmptyList(v));
            }
            if list.contains(&0) {
                return Err(Error::Precondition(format!("list of vertex {v} contains 0")));
            }
        }
        match (0..g.n()).find(|v| !self.lists.contains_key(v)) {
            Some(v) => Err(Error::Precondition(format!("vertex {v} has no list"))),
            None => Ok(()),
        }
    }

    /// Writes `l <id> <a> <b> ...` lines with 1-based ids.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, list) in self.iter() {
            write!(s, "l {}", v + 1).unwrap();
            for x in list {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = ListAssignment::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let mut parts = line.split_whitespace();
            match parts.next() {
                None | Some("c") => continue,
                Some("l") => {
                    let id = parse_vertex(parts.next(), line_no)?;
                    let mut list = BTreeSet::new();
                    for tok in parts {
                        let x = parse_u64(Some(tok), line_no, "list entry")?;
                        if x == 0 {
                            return Err(parse_err(line_no, "list entries must be positive"));
                        }
                        list.insert(x);
                    }
                    if list.is_empty() {
                        return Err(parse_err(line_no, format!("empty list for vertex {}", id + 1)));
                    }
                    if out.lists.insert(id, list).is_some() {
                        return Err(parse_err(line_no, format!("vertex {} listed twice", id + 1)));
                    }
                }
                Some(tok) => return Err(parse_err(line_no, format!("expected `l`, found `{tok}`"))),
            }
        }
        Ok(out)
    }
}

fn parse_u64(tok: Option<&str>, line: usize, what: &str) -> Result<u64> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<Vertex> {
    match parse_u64(tok, line, "vertex id")? {
        0 => Err(parse_err(line, "vertex ids are 1-based")),
        id => Ok(id as usize - 1),
    }
}

/// An edge whose endpoints have equal neighbor sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub edge: (Vertex, Vertex),
    pub sum_u: u64,
    pub sum_v: u64,
}

/// Sum of the labels over `N(v)`.
pub fn neighbor_sum(g: &Graph, labeling: &Labeling, v: Vertex) -> Result<u64> {
    g.neighbors(v).iter().map(|&w| labeling.get(w).ok_or(Error::MissingLabel(w))).sum()
}

pub(crate) fn dense_sums(g: &Graph, labels: &[u64]) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().map(|&w| labels[w]).sum()).collect()
}

/// Every edge whose endpoints share a neighbor sum, each reported once.
pub fn verify_additive(g: &Graph, labeling: &Labeling) -> Result<Vec<Violation>> {
    let labels = labeling.dense(g)?;
    let sums = dense_sums(g, &labels);
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| sums[u] == sums[v])
        .map(|&(u, v)| Violation { edge: (u, v), sum_u: sums[u], sum_v: sums[v] })
        .collect())
}

/// As [`verify_additive`], additionally rejecting labels outside `mode`.
pub fn verify_additive_in(g: &Graph, labeling: &Labeling, mode: LabelMode) -> Result<Vec<Violation>> {
    labeling.check_mode(mode)?;
    verify_additive(g, labeling)
}

pub fn is_additive(g: &Graph, labeling: &Labeling) -> bool {
    matches!(verify_additive(g, labeling), Ok(v) if v.is_empty())
}

/// True iff every vertex of `lists` is labeled from its own list.
pub fn verify_from_lists(labeling: &Labeling, lists: &ListAssignment) -> bool {
    lists.iter().all(|(v, list)| labeling.get(v).is_some_and(|l| list.contains(&l)))
}

pub fn weight(labeling: &Labeling) -> u64 {
    labeling.iter().map(|(_, l)| l).sum()
}

/// `v ↦ Σ_{N(v)} ℓ`, which is a proper coloring whenever `ℓ` is additive.
pub fn induced_coloring(g: &Graph, labeling: &Labeling) -> Result<Vec<u64>> {
    let violations = verify_additive(g, labeling)?;
    if !violations.is_empty() {
        return Err(Error::NotAdditive(violations.len()));
    }
    Ok(dense_sums(g, &labeling.dense(g)?))
}

/// Proper total dominating set check: every vertex has a neighbor in `set`
/// and adjacent vertices see different numbers of neighbors in `set`.
pub fn verify_ptds(g: &Graph, set: &[Vertex]) -> bool {
    let mut member = vec![0u64; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        member[v] = 1;
    }
    let counts = dense_sums(g, &member);
    counts.iter().all(|&c| c >= 1) && g.edges().iter().all(|&(u, v)| counts[u] != counts[v])
}
