//! Graph surgery: layered covers and reconnection operations.
//!
//! All four operations here take a valid action graph and return a valid
//! action graph with more vertices, arranged so that a chosen word's cycles
//! get longer in a controlled way.  Each operation re-validates its output
//! before returning it; none of them ever hands back an unchecked graph.
//!
//! The layering trick is the same everywhere: vertices become `(v, layer)`
//! pairs, most edges stay inside their layer, and a selected family of edges
//! moves up or down one layer.  For factor labels the selected family is
//! "edges with an endpoint in a marked amalgam class", which shifts by the
//! difference of endpoint indicators.  Such a shift is a coboundary on every
//! factor orbit, so conjugating by `(v, i) -> (v, i - indicator(v))` turns
//! the layered action back into the unshifted one — which is why the cover
//! is automatically a valid action graph again.

use crate::arith::gcd;
use crate::graph::{
    b_classes, subgraph_of, validate_action_graph, word_labels, ActionGraph, GraphViolation,
    Label, OverlapViolation, SubgraphScope,
};
use crate::group::{cyclic, direct_product, FiniteGroup, GroupError};
use crate::trace::{
    all_u_cycle_reports, has_no_l_near_vertices, trace_label_cycle, LabelStep, TraceError,
    UCycleReport,
};
use crate::words::{FactorSystem, Word, WordError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Graph(#[from] GraphViolation),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Overlap(#[from] OverlapViolation),
    #[error("layer count must be at least 1")]
    NoLayers,
    #[error("mark vertex {0} is out of range")]
    MarkVertexOutOfRange(u32),
    #[error("mark factor {0} is out of range")]
    MarkFactorOutOfRange(usize),
    #[error("two marks name the same factor {factor} and the same factor orbit")]
    DuplicateMark { factor: usize },
    #[error("cycle lengths are not all equal: {lengths:?}")]
    UnequalCycleLengths { lengths: Vec<u64> },
    #[error("a proper site already exists at vertex {vertex}, factor {factor}")]
    SiteAlreadyProper { vertex: u32, factor: usize },
    #[error("site creation degenerated: {0}")]
    DegenerateSite(String),
    #[error("operation requires a trivial amalgam")]
    AmalgamPresent,
    #[error("operation requires exactly one finite factor")]
    SingleFactorRequired,
    #[error("the given vertex set is not an orbit of the finite factor")]
    NotAnOrbit,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(u32),
    #[error("degree {0} is unsupported: need an even degree between 4 and 10")]
    BadDegree(usize),
    #[error("search exhausted after {tried} candidates with no valid instance")]
    SearchExhausted { tried: u64 },
    #[error("element must not be the identity")]
    IdentityElement,
    #[error("generator orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("construction needs {needed} vertices, over the cap {cap}")]
    CapExceeded { needed: usize, cap: usize },
}

/// A surgery mark: the amalgam class of `vertex`, paired with the factor
/// whose edges the mark deflects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark {
    pub vertex: u32,
    pub factor: usize,
}

/// Recipe for a cyclic layered cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeringSpec {
    #[serde(rename = "t")]
    pub layers: usize,
    pub marks: Vec<Mark>,
}

fn layered_names(g: &ActionGraph, layers: usize) -> Option<Vec<String>> {
    // Layers are displayed 1-based: internal layer 0 is layer 1.
    g.names().map(|names| {
        let mut out = Vec::with_capacity(names.len() * layers);
        for i in 1..=layers {
            for name in names {
                out.push(format!("{name}@{i}"));
            }
        }
        out
    })
}

/// Cyclic cover with `t` layers.  Factor-`k` edges move up one layer when
/// their target lies in a `(class, k)`-marked amalgam class, down one layer
/// when their source does, and stay level when both or neither do; amalgam
/// and free edges stay level.  Cover vertex `(v, i)` has index `v + i * V`.
pub fn cyclic_cover(
    fs: &FactorSystem,
    g: &ActionGraph,
    spec: &LayeringSpec,
) -> Result<ActionGraph, SurgeryError> {
    let t = spec.layers;
    if t == 0 {
        return Err(SurgeryError::NoLayers);
    }
    let v_count = g.vertex_count();
    let b = b_classes(fs, g);
    // Invariant on the mark set: distinct marks must differ in factor or in
    // the factor orbit of their vertex, so no edge is rewired by two marks.
    let mut seen_marks: BTreeSet<(usize, u32)> = BTreeSet::new();
    let mut factor_orbits: Vec<Option<Vec<u32>>> = vec![None; fs.factors.len()];
    // Net displacement field per factor: h[k][v] counts the marks of factor k
    // whose class contains v.  An edge's layer shift is h[k][target] -
    // h[k][source].
    let mut h: Vec<Vec<i64>> = vec![Vec::new(); fs.factors.len()];
    for mark in &spec.marks {
        if mark.vertex as usize >= v_count {
            return Err(SurgeryError::MarkVertexOutOfRange(mark.vertex));
        }
        if mark.factor >= fs.factors.len() {
            return Err(SurgeryError::MarkFactorOutOfRange(mark.factor));
        }
        let orbits = match &factor_orbits[mark.factor] {
            Some(o) => o,
            None => {
                let o = crate::graph::factor_orbit_ids(fs, g, mark.factor)
                    .expect("factor index checked above");
                factor_orbits[mark.factor] = Some(o);
                factor_orbits[mark.factor].as_ref().unwrap()
            }
        };
        if !seen_marks.insert((mark.factor, orbits[mark.vertex as usize])) {
            return Err(SurgeryError::DuplicateMark { factor: mark.factor });
        }
        let class = b.class_of[mark.vertex as usize];
        let field = &mut h[mark.factor];
        if field.is_empty() {
            field.resize(v_count, 0);
        }
        for &v in &b.classes[class as usize] {
            field[v as usize] += 1;
        }
    }

    let parts = g
        .iter()
        .map(|(label, arr)| {
            let field = match label {
                Label::Tagged { factor, .. } if !h[*factor].is_empty() => Some(&h[*factor]),
                _ => None,
            };
            let mut cover_arr = vec![0u32; v_count * t];
            for (v, &w) in arr.iter().enumerate() {
                let d = field.map_or(0, |f| f[w as usize] - f[v]);
                for i in 0..t {
                    let layer = (i as i64 + d).rem_euclid(t as i64) as usize;
                    cover_arr[v + i * v_count] = w + (layer * v_count) as u32;
                }
            }
            (*label, cover_arr)
        })
        .collect();
    let cover = ActionGraph::from_parts(v_count * t, parts, layered_names(g, t))?;
    validate_action_graph(fs, &cover)?;
    Ok(cover)
}

/// Length of the lifts of a traced cycle in a `t`-layer cover marked at
/// `(p, k)` only: the cycle must repeat until its net layer displacement
/// cancels mod `t`, so the length multiplies by `t / gcd(t, l)` (with
/// `gcd(t, 0) = t`, i.e. unmarked-looking cycles keep their length).
pub fn predicted_cover_cycle_length(report: &UCycleReport, p: u32, k: usize, t: u64) -> u64 {
    let l = report.crossing_counts(p, k).2;
    let g = gcd(t, l);
    (t / g) * report.length
}

/// Output of proper-site creation: a double cover on which the word has a
/// site with nonzero net displacement, while every cycle kept its length.
#[derive(Debug, Clone)]
pub struct ProperSite {
    pub graph: ActionGraph,
    pub site_vertex: u32,
    pub site_factor: usize,
    pub marks: Vec<Mark>,
    pub base_cycle_length: u64,
    /// True when the designated site (the cycle's base vertex with its first
    /// edge's factor) turned out proper; false when a fallback scan chose it.
    pub designated: bool,
}

fn edge_factor(labels: &[Label], edge: usize) -> usize {
    match labels[edge % labels.len()] {
        Label::Tagged { factor, .. } => factor,
        // Reduced words of two or more syllables carry no amalgam letters.
        _ => unreachable!("cyclically reduced multi-syllable words have factor letters only"),
    }
}

/// Given a graph on which every cycle of `u` has the same length and every
/// crossing count vanishes, builds a double cover with two marks read off a
/// representative cycle so that the word gains a proper site without any
/// cycle changing length.  Fails with [`SurgeryError::DegenerateSite`] when
/// the marks collide or the verification of the produced cover fails.
pub fn create_proper_site(
    fs: &FactorSystem,
    g: &ActionGraph,
    u: &Word,
) -> Result<ProperSite, SurgeryError> {
    let labels = word_labels(fs, u)?;
    if labels.len() < 2 {
        return Err(SurgeryError::Word(WordError::InFreeFactor));
    }
    let reports = all_u_cycle_reports(fs, g, u)?;
    let m = reports[0].length;
    if reports.iter().any(|r| r.length != m) {
        return Err(SurgeryError::UnequalCycleLengths {
            lengths: reports.iter().map(|r| r.length).collect(),
        });
    }
    let b = b_classes(fs, g);
    for r in &reports {
        for (&(class, factor), c) in &r.crossings {
            if c.l() != 0 {
                return Err(SurgeryError::SiteAlreadyProper {
                    vertex: b.classes[class as usize][0],
                    factor,
                });
            }
        }
    }
    overlap_checked(fs, g)?;

    let rep = &reports[0];
    let path = &rep.path;
    let n_edges = path.len();
    // Marks: the source of the second edge with that edge's factor, and the
    // source of the last edge with the second-to-last edge's factor.
    let marks = vec![
        Mark { vertex: path[1], factor: edge_factor(&labels, 1) },
        Mark { vertex: path[n_edges - 1], factor: edge_factor(&labels, n_edges - 2) },
    ];
    if b.class_of[marks[0].vertex as usize] == b.class_of[marks[1].vertex as usize] {
        return Err(SurgeryError::DegenerateSite(
            "the cycle's second and last sources share an amalgam class".into(),
        ));
    }
    let cover = cyclic_cover(fs, g, &LayeringSpec { layers: 2, marks: marks.clone() })
        .map_err(|e| match e {
            SurgeryError::DuplicateMark { factor } => SurgeryError::DegenerateSite(format!(
                "the two marks collide on factor {factor} within one factor orbit"
            )),
            other => other,
        })?;
    let cover_reports = all_u_cycle_reports(fs, &cover, u)?;
    for r in &cover_reports {
        if r.length != m {
            return Err(SurgeryError::DegenerateSite(format!(
                "cycle at {} changed length from {m} to {}",
                r.base_vertex, r.length
            )));
        }
    }

    let site_factor = edge_factor(&labels, 0);
    let v_count = g.vertex_count() as u32;
    for layer in [0u32, 1] {
        let site_vertex = path[0] + layer * v_count;
        if cover_reports.iter().any(|r| r.is_proper(site_vertex, site_factor)) {
            return Ok(ProperSite {
                graph: cover,
                site_vertex,
                site_factor,
                marks,
                base_cycle_length: m,
                designated: true,
            });
        }
    }
    // Fallback: lexicographically least (class representative, factor) that
    // some cycle crosses unevenly.
    let cover_b = b_classes(fs, &cover);
    let mut best: Option<(u32, usize)> = None;
    for r in &cover_reports {
        for (&(class, factor), c) in &r.crossings {
            if c.l() != 0 {
                let key = (cover_b.classes[class as usize][0], factor);
                if best.is_none_or(|cur| key < cur) {
                    best = Some(key);
                }
            }
        }
    }
    match best {
        Some((site_vertex, site_factor)) => Ok(ProperSite {
            graph: cover,
            site_vertex,
            site_factor,
            marks,
            base_cycle_length: m,
            designated: false,
        }),
        None => Err(SurgeryError::DegenerateSite(
            "double cover has no proper site anywhere".into(),
        )),
    }
}

fn overlap_checked(fs: &FactorSystem, g: &ActionGraph) -> Result<(), SurgeryError> {
    crate::graph::overlap_condition(fs, g).map_err(SurgeryError::from)
}

/// Layered cut along a finite-factor orbit: free-label edges whose target
/// lies in the orbit `r` climb one layer, everything else stays level.  The
/// system must have a single finite factor and a trivial amalgam; `r` must
/// be exactly one orbit of that factor.
pub fn cut_and_shift(
    fs: &FactorSystem,
    g: &ActionGraph,
    r: &[u32],
    layers: usize,
) -> Result<ActionGraph, SurgeryError> {
    if fs.factors.len() != 1 {
        return Err(SurgeryError::SingleFactorRequired);
    }
    if fs.amalgam.is_some() {
        return Err(SurgeryError::AmalgamPresent);
    }
    if layers == 0 {
        return Err(SurgeryError::NoLayers);
    }
    let v_count = g.vertex_count();
    let Some(&first) = r.first() else { return Err(SurgeryError::NotAnOrbit) };
    for &v in r {
        if v as usize >= v_count {
            return Err(SurgeryError::VertexOutOfRange(v));
        }
    }
    let orbit = subgraph_of(fs, g, first, SubgraphScope::Factor(0))
        .map_err(|_| SurgeryError::VertexOutOfRange(first))?;
    let mut sorted = r.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted != orbit {
        return Err(SurgeryError::NotAnOrbit);
    }
    let mut in_r = vec![false; v_count];
    for &v in &orbit {
        in_r[v as usize] = true;
    }

    let parts = g
        .iter()
        .map(|(label, arr)| {
            let shifts = matches!(label, Label::Free { .. });
            let mut cover_arr = vec![0u32; v_count * layers];
            for (v, &w) in arr.iter().enumerate() {
                let d = usize::from(shifts && in_r[w as usize]);
                for i in 0..layers {
                    let layer = (i + d) % layers;
                    cover_arr[v + i * v_count] = w + (layer * v_count) as u32;
                }
            }
            (*label, cover_arr)
        })
        .collect();
    let cover = ActionGraph::from_parts(v_count * layers, parts, layered_names(g, layers))?;
    validate_action_graph(fs, &cover)?;
    Ok(cover)
}

/// A brute-force-found base for the cut: one finite involution factor, one
/// free label, all cycles of `a x` the same length, and the representative
/// cycle free of 1-near vertices.
#[derive(Debug, Clone)]
pub struct SpacedBase {
    pub system: FactorSystem,
    pub graph: ActionGraph,
    pub steps: Vec<LabelStep>,
    /// Representative cycle path (edge sources) through vertex 0.
    pub cycle_path: Vec<u32>,
    pub cycle_length: u64,
    /// The finite-factor orbit of the cycle's base vertex; the canonical cut
    /// locus.
    pub orbit: Vec<u32>,
    /// Lexicographic rank of the free permutation that succeeded.
    pub tried: u64,
}

fn next_permutation(arr: &mut [u32]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// Searches, in lexicographic order over the free label's permutation, for
/// the first graph on `d` vertices where the fixed-point-free involution `a`
/// and a free label `x` give the word `a x` cycles of one common length and
/// a representative cycle with no 1-near vertices.  Such bases exist for
/// every even `d >= 4` (the alternating `d`-cycle is one), so the search
/// always terminates with a hit.
pub fn find_spaced_base(d: usize) -> Result<SpacedBase, SurgeryError> {
    if !(4..=10).contains(&d) || !d.is_multiple_of(2) {
        return Err(SurgeryError::BadDegree(d));
    }
    let fs = FactorSystem::free_product(vec![cyclic(2)]);
    let a_label = Label::Tagged { factor: 0, elem: 1 };
    let x_label = Label::Free { index: 0 };
    let a_perm: Vec<u32> = (0..d as u32).map(|v| v ^ 1).collect();
    let steps = vec![LabelStep::forward(a_label), LabelStep::forward(x_label)];
    let mut x: Vec<u32> = (0..d as u32).collect();
    let mut tried = 0u64;
    loop {
        tried += 1;
        let g = ActionGraph::from_parts(
            d,
            vec![(a_label, a_perm.clone()), (x_label, x.clone())],
            None,
        )?;
        if let Some((length, path)) = spaced_candidate(&g, &steps) {
            let orbit = subgraph_of(&fs, &g, path[0], SubgraphScope::Factor(0))
                .expect("vertex 0 in range");
            return Ok(SpacedBase {
                system: fs,
                graph: g,
                steps,
                cycle_path: path,
                cycle_length: length,
                orbit,
                tried,
            });
        }
        if !next_permutation(&mut x) {
            return Err(SurgeryError::SearchExhausted { tried });
        }
    }
}

fn spaced_candidate(g: &ActionGraph, steps: &[LabelStep]) -> Option<(u64, Vec<u32>)> {
    let d = g.vertex_count();
    let mut visited = vec![false; d];
    let mut common: Option<u64> = None;
    let mut rep: Option<(u64, Vec<u32>)> = None;
    for start in 0..d as u32 {
        if visited[start as usize] {
            continue;
        }
        let (length, path) = trace_label_cycle(g, steps, start).ok()?;
        for v in path.iter().step_by(steps.len()) {
            visited[*v as usize] = true;
        }
        match common {
            None => common = Some(length),
            Some(c) if c != length => return None,
            _ => {}
        }
        if rep.is_none() {
            rep = Some((length, path));
        }
    }
    let (length, path) = rep?;
    if !has_no_l_near_vertices(g, &path, 1) {
        return None;
    }
    Some((length, path))
}

/// Result of gluing layered Cayley cycles of two groups along compatible
/// generators.
#[derive(Debug, Clone)]
pub struct GlueOutcome {
    pub system: FactorSystem,
    pub graph: ActionGraph,
    /// The word `(0, a)(1, b)` in the returned system's coordinates.
    pub word: Word,
    /// True when unequal group orders forced both factors into their direct
    /// product first.
    pub embedded: bool,
    /// Human-readable description of the matching that verified.
    pub pattern: String,
    pub cycle_lengths: Vec<u64>,
}

struct CosetData {
    /// `cycles[c][j]` is the vertex at position `j` of coset `c`.
    cycles: Vec<Vec<u32>>,
}

/// Left cosets of the cyclic subgroup generated by `elem`, each listed as
/// its generator cycle starting at the least uncovered element.
fn coset_cycles(g: &FiniteGroup, elem: usize) -> CosetData {
    let n = g.order;
    let mut covered = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if covered[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        loop {
            covered[v] = true;
            cycle.push(v as u32);
            v = g.mul(v, elem);
            if v == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    CosetData { cycles }
}

/// Builds an action graph of `A * B` on `n` layered copies of their Cayley
/// graphs, glued coset-cycle to coset-cycle so that the word `a b` has cycle
/// lengths in `{1, n}` with least common multiple exactly `n`.
///
/// Candidate matchings are enumerated deterministically — coset pairings in
/// lexicographic order, then position offsets, then layer-shift patterns —
/// and each candidate is checked by full validation plus retracing, so the
/// returned graph is verified, not trusted.  When `|A| != |B|` both groups
/// are first embedded into `A x B`, which equalizes the copy sizes without
/// changing either generator's order.
pub fn glue_cayley_cycles(
    a_group: &FiniteGroup,
    b_group: &FiniteGroup,
    a_elem: usize,
    b_elem: usize,
    n: usize,
    cap: usize,
) -> Result<GlueOutcome, SurgeryError> {
    if n == 0 {
        return Err(SurgeryError::NoLayers);
    }
    if a_elem == 0 || b_elem == 0 {
        return Err(SurgeryError::IdentityElement);
    }
    if a_elem >= a_group.order || b_elem >= b_group.order {
        return Err(SurgeryError::VertexOutOfRange(a_elem.max(b_elem) as u32));
    }
    let m_a = a_group.element_order(a_elem);
    let m_b = b_group.element_order(b_elem);
    if m_a != m_b {
        return Err(SurgeryError::OrderMismatch { left: m_a, right: m_b });
    }
    if a_group.order != b_group.order {
        let (product, embeddings) = direct_product(&[a_group, b_group], cap)?;
        let a_in = embeddings[0].apply(a_elem);
        let b_in = embeddings[1].apply(b_elem);
        let mut out = glue_inner(&product, &product, a_in, b_in, m_a as usize, n, cap)?;
        out.embedded = true;
        return Ok(out);
    }
    glue_inner(a_group, b_group, a_elem, b_elem, m_a as usize, n, cap)
}

fn glue_inner(
    a_group: &FiniteGroup,
    b_group: &FiniteGroup,
    a_elem: usize,
    b_elem: usize,
    m: usize,
    n: usize,
    cap: usize,
) -> Result<GlueOutcome, SurgeryError> {
    let size = a_group.order;
    let total = size.checked_mul(n).filter(|&x| x <= cap);
    let Some(total) = total else {
        return Err(SurgeryError::CapExceeded { needed: size.saturating_mul(n), cap });
    };
    let fs = FactorSystem::free_product(vec![a_group.clone(), b_group.clone()]);
    let word = Word::new(vec![(0, a_elem), (1, b_elem)]);
    let a_cosets = coset_cycles(a_group, a_elem);
    let b_cosets = coset_cycles(b_group, b_elem);
    let r = a_cosets.cycles.len();
    debug_assert_eq!(r, b_cosets.cycles.len(), "equal orders and equal cycle length");

    // Offsets: the known-good value 1 first, then the rest.
    let offsets: Vec<usize> = std::iter::once(1 % m).chain((0..m).filter(|&c| c != 1 % m)).collect();
    // Layer-shift patterns delta(j), applied mod n.
    let mut deltas: Vec<Vec<i64>> = Vec::new();
    let mut paper = vec![0i64; m];
    paper[0] = -1;
    deltas.push(paper);
    let mut rising = vec![1i64; m];
    rising[0] = 0;
    deltas.push(rising);
    let mut tail = vec![0i64; m];
    tail[m - 1] = 1;
    deltas.push(tail);
    deltas.push(vec![0i64; m]);
    deltas.dedup();

    let mut pairing: Vec<u32> = (0..r as u32).collect();
    let mut tried = 0u64;
    const CANDIDATE_CAP: u64 = 50_000;
    loop {
        for &offset in &offsets {
            for delta in &deltas {
                tried += 1;
                if tried > CANDIDATE_CAP {
                    return Err(SurgeryError::SearchExhausted { tried: tried - 1 });
                }
                if let Some(outcome) = try_glue(
                    &fs, a_group, b_group, &word, &a_cosets, &b_cosets, &pairing, offset, delta,
                    m, n, total,
                ) {
                    return Ok(outcome);
                }
            }
        }
        if !next_permutation(&mut pairing) {
            return Err(SurgeryError::SearchExhausted { tried });
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn try_glue(
    fs: &FactorSystem,
    a_group: &FiniteGroup,
    b_group: &FiniteGroup,
    word: &Word,
    a_cosets: &CosetData,
    b_cosets: &CosetData,
    pairing: &[u32],
    offset: usize,
    delta: &[i64],
    m: usize,
    n: usize,
    total: usize,
) -> Option<GlueOutcome> {
    let size = a_group.order;
    // Matching between layered copies: P-vertex (layer i, coset c, position j)
    // pairs with Q-vertex (layer i + delta(j), coset pairing[c], position
    // offset - j).  Positions shift in lockstep with the generator, which is
    // what confines the word's cycles to single positions.
    let mut mu = vec![0u32; total];
    let mut mu_inv = vec![0u32; total];
    for (c, cycle) in a_cosets.cycles.iter().enumerate() {
        let target = &b_cosets.cycles[pairing[c] as usize];
        for (j, &v) in cycle.iter().enumerate() {
            let phi = (offset + m - (j % m)) % m;
            let w = target[phi];
            for i in 0..n {
                let layer = (i as i64 + delta[j]).rem_euclid(n as i64) as usize;
                let p_idx = v as usize + i * size;
                let q_idx = w as usize + layer * size;
                mu[p_idx] = q_idx as u32;
                mu_inv[q_idx] = p_idx as u32;
            }
        }
    }

    let mut parts: Vec<(Label, Vec<u32>)> = Vec::new();
    for e in 1..size {
        let mut arr = vec![0u32; total];
        for v in 0..size {
            let w = a_group.mul(v, e);
            for i in 0..n {
                arr[v + i * size] = (w + i * size) as u32;
            }
        }
        parts.push((Label::Tagged { factor: 0, elem: e }, arr));
    }
    for e in 1..size {
        let mut arr = vec![0u32; total];
        for p in 0..total {
            let q = mu[p] as usize;
            let (h, layer) = (q % size, q / size);
            let h2 = b_group.mul(h, e);
            arr[p] = mu_inv[h2 + layer * size];
        }
        parts.push((Label::Tagged { factor: 1, elem: e }, arr));
    }
    let graph = ActionGraph::from_parts(total, parts, None).ok()?;
    validate_action_graph(fs, &graph).ok()?;
    let reports = all_u_cycle_reports(fs, &graph, word).ok()?;
    let mut lengths: Vec<u64> = reports.iter().map(|r| r.length).collect();
    if !lengths.iter().all(|&l| l == 1 || l == n as u64) {
        return None;
    }
    let lcm = lengths.iter().fold(1u64, |acc, &l| {
        acc / gcd(acc, l) * l
    });
    if lcm != n as u64 {
        return None;
    }
    lengths.sort_unstable();
    Some(GlueOutcome {
        system: fs.clone(),
        graph,
        word: word.clone(),
        embedded: false,
        pattern: format!("pairing={pairing:?}, offset={offset}, shifts={delta:?}"),
        cycle_lengths: lengths,
    })
}
