//! Fractal triples `(V0, V1, Ψ)` as index tables.
//!
//! Vertices of `V1` are `0..n_total`. The boundary `V0 = {P_1, …, P_N}` occupies
//! indices `0..N` with `P_j` stored at `j - 1`, so the fixed-point condition
//! reads as a diagonal check on the cell table. Row `i` of the table lists
//! `ψ_{i+1}(P_1), …, ψ_{i+1}(P_N)`.

mod builtin;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin, BUILTIN_NAMES};

/// On-disk representation of a triple. Field order is the canonical key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub n_boundary: usize,
    pub n_total: usize,
    pub cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A validated fractal triple. Immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalTriple {
    n_boundary: usize,
    n_total: usize,
    cells: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// One violated condition together with a witness.
///
/// Indices are stored zero-based; `Display` prints the one-based indices
/// `i`, `h`, `j` of `ψ_i(P_h) = P_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum Violation {
    /// ψ_i maps two boundary points to the same vertex.
    #[serde(rename = "injectivity")]
    Injectivity {
        cell: usize,
        columns: (usize, usize),
        vertex: usize,
    },
    /// Condition a): ψ_j(P_j) = P_j fails (or there is no cell `j`).
    #[serde(rename = "a")]
    FixedPoint { j: usize, found: Option<usize> },
    /// Condition b): ψ_i(P_h) = P_j with not `i = j = h`.
    #[serde(rename = "b")]
    Separation { i: usize, h: usize, j: usize },
    /// Some vertex of V1 lies in no cell.
    #[serde(rename = "coverage")]
    Coverage { vertex: usize },
    /// Condition c): the cell graph is disconnected; `component` is the one
    /// containing vertex 0.
    #[serde(rename = "c")]
    Connectivity { component: Vec<usize> },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::Injectivity { .. } => "injectivity",
            Violation::FixedPoint { .. } => "a",
            Violation::Separation { .. } => "b",
            Violation::Coverage { .. } => "coverage",
            Violation::Connectivity { .. } => "c",
        }
    }

    pub fn witness(&self) -> String {
        match self {
            Violation::Injectivity {
                cell,
                columns,
                vertex,
            } => {
                format!(
                    "(i={},h={},h'={},vertex={})",
                    cell + 1,
                    columns.0 + 1,
                    columns.1 + 1,
                    vertex
                )
            }
            Violation::FixedPoint { j, found } => match found {
                Some(v) => format!("(j={},psi_j(P_j)={})", j + 1, v),
                None => format!("(j={},missing cell)", j + 1),
            },
            Violation::Separation { i, h, j } => format!("(i={},h={},j={})", i + 1, h + 1, j + 1),
            Violation::Coverage { vertex } => format!("(vertex={vertex})"),
            Violation::Connectivity { component } => format!("{component:?}"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self {
            Violation::Injectivity { .. } => "cell map is not one-to-one",
            Violation::FixedPoint { .. } => "condition a) psi_j(P_j) = P_j fails",
            Violation::Separation { .. } => "condition b) boundary vertex in a foreign cell",
            Violation::Coverage { .. } => "vertex not covered by any cell",
            Violation::Connectivity { .. } => "condition c) cell graph is disconnected",
        };
        write!(f, "{what} {}", self.witness())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationEntry {
    pub condition: &'static str,
    pub witness: String,
    pub message: String,
}

impl ValidationReport {
    fn from_violations(violations: &[Violation]) -> Self {
        Self {
            pass: violations.is_empty(),
            violations: violations
                .iter()
                .map(|v| ViolationEntry {
                    condition: v.condition(),
                    witness: v.witness(),
                    message: v.to_string(),
                })
                .collect(),
        }
    }
}

fn check_structure(raw: &TripleFile) -> Result<()> {
    let n = raw.n_boundary;
    if n < 2 {
        return Err(Error::MalformedTriple(format!(
            "n_boundary must be at least 2, got {n}"
        )));
    }
    if raw.n_total < n {
        return Err(Error::MalformedTriple(format!(
            "n_total {} is smaller than n_boundary {n}",
            raw.n_total
        )));
    }
    if raw.cells.is_empty() {
        return Err(Error::MalformedTriple("no cells".into()));
    }
    for (i, row) in raw.cells.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTriple(format!(
                "cell {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= raw.n_total) {
            return Err(Error::MalformedTriple(format!(
                "cell {} refers to vertex {v} >= n_total {}",
                i + 1,
                raw.n_total
            )));
        }
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != raw.n_total {
            return Err(Error::MalformedTriple(format!(
                "{} labels for {} vertices",
                labels.len(),
                raw.n_total
            )));
        }
    }
    Ok(())
}

fn collect_violations(raw: &TripleFile) -> Vec<Violation> {
    let n = raw.n_boundary;
    let m = raw.n_total;
    let mut out = Vec::new();

    for (i, row) in raw.cells.iter().enumerate() {
        for a in 0..n {
            for b in a + 1..n {
                if row[a] == row[b] {
                    out.push(Violation::Injectivity {
                        cell: i,
                        columns: (a, b),
                        vertex: row[a],
                    });
                }
            }
        }
    }

    for j in 0..n {
        let found = raw.cells.get(j).map(|row| row[j]);
        if found != Some(j) {
            out.push(Violation::FixedPoint { j, found });
        }
    }

    for (i, row) in raw.cells.iter().enumerate() {
        for (h, &v) in row.iter().enumerate() {
            if v < n && !(i == v && h == v) {
                out.push(Violation::Separation { i, h, j: v });
            }
        }
    }

    let mut covered = vec![false; m];
    for &v in raw.cells.iter().flatten() {
        covered[v] = true;
    }
    out.extend(
        covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(vertex, _)| Violation::Coverage { vertex }),
    );

    let component = cell_graph_component(m, &raw.cells, 0);
    if component.len() < m {
        out.push(Violation::Connectivity { component });
    }
    out
}

/// Breadth-first search over the union of the per-cell complete graphs.
fn cell_graph_component(m: usize, cells: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, row) in cells.iter().enumerate() {
        for &v in row {
            incident[v].push(i);
        }
    }
    let mut seen = vec![false; m];
    let mut used_cell = vec![false; cells.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &i in &incident[v] {
            if std::mem::replace(&mut used_cell[i], true) {
                continue;
            }
            for &w in &cells[i] {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..m).filter(|&v| seen[v]).collect()
}

/// Checks conditions a), b), c) plus injectivity and coverage.
///
/// Inconsistent table dimensions are reported as an `Err`, distinct from
/// condition failures, which come back in the report.
pub fn validate_triple(raw: &TripleFile) -> Result<ValidationReport> {
    check_structure(raw)?;
    Ok(ValidationReport::from_violations(&collect_violations(raw)))
}

impl FractalTriple {
    pub fn new(n_boundary: usize, n_total: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_file(TripleFile {
            n_boundary,
            n_total,
            cells,
            labels: None,
        })
    }

    pub fn from_file(raw: TripleFile) -> Result<Self> {
        check_structure(&raw)?;
        let violations = collect_violations(&raw);
        if !violations.is_empty() {
            return Err(Error::InvalidTriple(violations));
        }
        Ok(Self {
            n_boundary: raw.n_boundary,
            n_total: raw.n_total,
            cells: raw.cells,
            labels: raw.labels,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_total {
            return Err(Error::Dimension {
                what: "labels",
                expected: self.n_total,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn to_file(&self) -> TripleFile {
        TripleFile {
            n_boundary: self.n_boundary,
            n_total: self.n_total,
            cells: self.cells.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("triple serialization cannot fail")
    }

    /// `N = #V0`.
    pub fn n_boundary(&self) -> usize {
        self.n_boundary
    }

    /// `M = #V1`.
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// `k`, the number of cells.
    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn pair_index(&self) -> PairIndex {
        PairIndex::new(self.n_boundary)
    }
}

/// For each cell `i`, the vertex pairs `(ψ_i(P_a), ψ_i(P_b))`, `a < b`, in
/// lexicographic pair order.
pub fn cell_edge_set(triple: &FractalTriple) -> Vec<Vec<(usize, usize)>> {
    let pairs = triple.pair_index();
    triple
        .cells()
        .iter()
        .map(|row| {
            pairs
                .iter()
                .map(|p| (row[p.first], row[p.second]))
                .collect()
        })
        .collect()
}

/// An unordered pair of boundary vertices, stored zero-based with `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub first: usize,
    pub second: usize,
}

/// Lexicographic enumeration of the pair set `J` for a boundary of size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n_boundary(&self) -> usize {
        self.n
    }

    /// `#J = N(N-1)/2`.
    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index of `{a, b}`; order of the arguments does not matter.
    pub fn index(&self, a: usize, b: usize) -> usize {
        assert!(
            a != b && a < self.n && b < self.n,
            "invalid pair ({a}, {b}) for N = {}",
            self.n
        );
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * self.n - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn pair(&self, index: usize) -> Pair {
        assert!(index < self.len(), "pair index {index} out of range");
        let mut rest = index;
        let mut a = 0;
        while rest >= self.n - a - 1 {
            rest -= self.n - a - 1;
            a += 1;
        }
        Pair {
            first: a,
            second: a + 1 + rest,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |a| {
            (a + 1..self.n).map(move |b| Pair {
                first: a,
                second: b,
            })
        })
    }

    /// `m̃ = 1/#J`, the lower bound for the largest coefficient of a normalized form.
    pub fn min_max_coefficient(&self) -> f64 {
        1.0 / self.len() as f64
    }
}
