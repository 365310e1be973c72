//! Orbit tracing: u-cycles, their crossing counts, and vertex-spacing checks.
//!
//! The cycle of a vertex under a word `u` is the orbit of that vertex under
//! the permutation the graph assigns to `u`; its length is the number of
//! `u`-applications needed to return.  Along the cycle we count, per amalgam
//! class `B(p)` and per factor `k`, how many factor-`k` edges end in `B(p)`
//! (`plus`) and how many start there (`minus`).  The difference is what layer
//! surgery sees: it is exactly the net number of layers the cycle climbs each
//! time it passes through `B(p)` on factor-`k` edges, which makes the counts
//! independent of the chosen representative vertex.

use crate::graph::{b_classes, bounded_distances, word_labels, ActionGraph, Label};
use crate::words::{is_cyclically_reduced, FactorSystem, Word, WordError};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("graph does not carry label {label}")]
    MissingLabel { label: Label },
    #[error("start vertex {0} is out of range")]
    StartOutOfRange(u32),
    #[error("orbit did not close after {0} applications; the graph is not a valid action graph")]
    RunawayOrbit(usize),
}

/// Crossing tallies of one cycle at one `(amalgam class, factor)` pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Crossing {
    /// Factor edges of the cycle whose target lies in the class.
    pub plus: u64,
    /// Factor edges of the cycle whose source lies in the class.
    pub minus: u64,
}

impl Crossing {
    /// Net layer displacement magnitude `|plus - minus|`.
    pub fn l(&self) -> u64 {
        self.plus.abs_diff(self.minus)
    }
}

/// One traced cycle: the orbit of `base_vertex` under the word.
#[derive(Debug, Clone)]
pub struct UCycleReport {
    pub base_vertex: u32,
    /// Number of word applications until the orbit closes.
    pub length: u64,
    /// Source vertices of the successive edges; `length * labels.len()`
    /// entries, starting at `base_vertex`.
    pub path: Vec<u32>,
    /// Label sequence of one word period.
    pub labels: Vec<Label>,
    /// Crossing tallies keyed by `(amalgam class id, factor)`.
    pub crossings: BTreeMap<(u32, usize), Crossing>,
    class_of: Arc<Vec<u32>>,
}

impl UCycleReport {
    /// Crossing counts `(plus, minus, |plus - minus|)` of this cycle at the
    /// class of vertex `p` and factor `k`; zeroes when the cycle never
    /// crosses there.
    pub fn crossing_counts(&self, p: u32, k: usize) -> (u64, u64, u64) {
        let class = self.class_of[p as usize];
        let c = self.crossings.get(&(class, k)).copied().unwrap_or_default();
        (c.plus, c.minus, c.l())
    }

    /// A site is proper for this cycle when the net displacement there is
    /// nonzero.
    pub fn is_proper(&self, p: u32, k: usize) -> bool {
        self.crossing_counts(p, k).2 != 0
    }

    /// Vertices of the orbit itself (every `labels.len()`-th path entry).
    pub fn orbit_vertices(&self) -> Vec<u32> {
        self.path.iter().step_by(self.labels.len()).copied().collect()
    }
}

/// Prepared tracer for one `(system, graph, word)` triple; resolves labels
/// and amalgam classes once so whole-graph sweeps stay linear.
pub struct Tracer<'a> {
    graph: &'a ActionGraph,
    labels: Vec<Label>,
    label_idx: Vec<usize>,
    /// Factor of each tagged label position; amalgam labels carry `None`.
    step_factor: Vec<Option<usize>>,
    class_of: Arc<Vec<u32>>,
}

impl<'a> Tracer<'a> {
    /// Requires a cyclically reduced, nonempty word: its cycles then spell
    /// powers of the word with no cancellation, so edge counts are honest.
    pub fn new(fs: &FactorSystem, graph: &'a ActionGraph, u: &Word) -> Result<Self, TraceError> {
        if u.is_empty() {
            return Err(TraceError::Word(WordError::Trivial));
        }
        if !is_cyclically_reduced(fs, u)? {
            return Err(TraceError::Word(WordError::NotCyclicallyReduced));
        }
        let labels = word_labels(fs, u)?;
        let label_idx = labels
            .iter()
            .map(|l| graph.label_index(l).ok_or(TraceError::MissingLabel { label: *l }))
            .collect::<Result<Vec<_>, _>>()?;
        let step_factor = labels
            .iter()
            .map(|l| match l {
                Label::Tagged { factor, .. } => Some(*factor),
                _ => None,
            })
            .collect();
        let class_of = Arc::new(b_classes(fs, graph).class_of);
        Ok(Tracer { graph, labels, label_idx, step_factor, class_of })
    }

    pub fn trace(&self, start: u32) -> Result<UCycleReport, TraceError> {
        let n = self.graph.vertex_count();
        if start as usize >= n {
            return Err(TraceError::StartOutOfRange(start));
        }
        let mut path = Vec::new();
        let mut crossings: BTreeMap<(u32, usize), Crossing> = BTreeMap::new();
        let mut v = start;
        let mut length = 0u64;
        loop {
            for (step, &li) in self.label_idx.iter().enumerate() {
                path.push(v);
                let w = self.graph.out_by_index(li)[v as usize];
                if let Some(k) = self.step_factor[step] {
                    let src = self.class_of[v as usize];
                    let dst = self.class_of[w as usize];
                    crossings.entry((dst, k)).or_default().plus += 1;
                    crossings.entry((src, k)).or_default().minus += 1;
                }
                v = w;
            }
            length += 1;
            if v == start {
                break;
            }
            if length as usize > n {
                return Err(TraceError::RunawayOrbit(n));
            }
        }
        Ok(UCycleReport {
            base_vertex: start,
            length,
            path,
            labels: self.labels.clone(),
            crossings,
            class_of: Arc::clone(&self.class_of),
        })
    }

    /// One report per orbit, bases chosen as the least vertex of each orbit,
    /// in increasing order.
    pub fn all_reports(&self) -> Result<Vec<UCycleReport>, TraceError> {
        let n = self.graph.vertex_count();
        let mut visited = vec![false; n];
        let mut reports = Vec::new();
        for start in 0..n as u32 {
            if visited[start as usize] {
                continue;
            }
            let report = self.trace(start)?;
            for v in report.orbit_vertices() {
                visited[v as usize] = true;
            }
            reports.push(report);
        }
        Ok(reports)
    }
}

pub fn trace_u_cycle(
    fs: &FactorSystem,
    graph: &ActionGraph,
    u: &Word,
    start: u32,
) -> Result<UCycleReport, TraceError> {
    Tracer::new(fs, graph, u)?.trace(start)
}

pub fn all_u_cycle_reports(
    fs: &FactorSystem,
    graph: &ActionGraph,
    u: &Word,
) -> Result<Vec<UCycleReport>, TraceError> {
    Tracer::new(fs, graph, u)?.all_reports()
}

/// One step of a label word: a graph label, possibly traversed backwards.
/// Words over free labels need this, since free letters have no inverse
/// element inside a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelStep {
    pub label: Label,
    pub inverse: bool,
}

impl LabelStep {
    pub fn forward(label: Label) -> Self {
        LabelStep { label, inverse: false }
    }

    pub fn backward(label: Label) -> Self {
        LabelStep { label, inverse: true }
    }
}

/// Orbit of `start` under a label-step word: `(length, path)` with the same
/// conventions as [`UCycleReport`] (path lists edge sources).
pub fn trace_label_cycle(
    graph: &ActionGraph,
    steps: &[LabelStep],
    start: u32,
) -> Result<(u64, Vec<u32>), TraceError> {
    if start as usize >= graph.vertex_count() {
        return Err(TraceError::StartOutOfRange(start));
    }
    let arrays: Vec<Vec<u32>> = steps
        .iter()
        .map(|s| {
            let idx = graph
                .label_index(&s.label)
                .ok_or(TraceError::MissingLabel { label: s.label })?;
            Ok(if s.inverse {
                graph.inverse_by_index(idx)
            } else {
                graph.out_by_index(idx).to_vec()
            })
        })
        .collect::<Result<Vec<_>, TraceError>>()?;
    let mut path = Vec::new();
    let mut v = start;
    let mut length = 0u64;
    loop {
        for arr in &arrays {
            path.push(v);
            v = arr[v as usize];
        }
        length += 1;
        if v == start {
            return Ok((length, path));
        }
        if length as usize > graph.vertex_count() {
            return Err(TraceError::RunawayOrbit(graph.vertex_count()));
        }
    }
}

/// Checks the spacing property a cut site needs: any two path positions `i`,
/// `j` must sit at graph distance at least `min(|i - j| cyclically, l + 1)`.
/// In particular the path revisits no vertex.  Distances are taken in the
/// undirected graph over all labels.
pub fn has_no_l_near_vertices(graph: &ActionGraph, path: &[u32], l: u64) -> bool {
    let n = path.len();
    if n == 0 {
        return true;
    }
    let adj = graph.undirected_adjacency();
    let bound = u32::try_from(l + 1).unwrap_or(u32::MAX);
    for i in 0..n {
        let dist = bounded_distances(&adj, path[i], bound);
        for j in (i + 1)..n {
            let around = (j - i).min(n - (j - i)) as u64;
            let required = around.min(l + 1);
            let d = dist[path[j] as usize];
            if d != u32::MAX && (d as u64) < required {
                return false;
            }
        }
    }
    true
}
