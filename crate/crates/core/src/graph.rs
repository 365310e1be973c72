//! Action graphs of free products.
//!
//! A free product of finite factors acts on a set exactly when every
//! generator label moves the points bijectively (property 1) and, for each
//! factor, the orbits of that factor's labels look like Cayley graphs of the
//! factor (property 2).  This module holds the graph representation, the
//! canonical constructions, and the validator that enforces both properties
//! together with the amalgam identifications.
//!
//! Vertices are `u32` indices.  Per label, the graph stores the dense
//! successor array of its positively oriented edges, so a graph is exactly a
//! family of permutations indexed by generator labels.

use crate::group::{direct_product, FiniteGroup, GroupError};
use crate::words::{FactorSystem, Word, WordError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A generator label: a non-amalgam element of one factor, an element of the
/// amalgamated subgroup (shared by all factors), or a free generator with no
/// imposed relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Label {
    Tagged { factor: usize, elem: usize },
    Amalgam { elem: usize },
    Free { index: usize },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tagged { factor, elem } => write!(f, "T({factor},{elem})"),
            Label::Amalgam { elem } => write!(f, "B({elem})"),
            Label::Free { index } => write!(f, "x{index}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphViolation {
    #[error("label {label} has successor array of length {len}, expected {vertices}")]
    WrongArrayLength { label: Label, len: usize, vertices: usize },
    #[error("label {label} maps vertex {vertex} to {value}, out of range")]
    TargetOutOfRange { label: Label, vertex: u32, value: u32 },
    #[error("label {label} appears twice")]
    DuplicateLabel { label: Label },
    #[error("expected label {label} is missing")]
    MissingLabel { label: Label },
    #[error("label {label} does not belong to the factor system")]
    UnknownLabel { label: Label },
    #[error("label {label} is not a bijection: vertex {vertex} has no preimage")]
    NotBijective { label: Label, vertex: u32 },
    #[error("label {label} fixes vertex {vertex}, so the factor action is not free")]
    FixedPoint { label: Label, vertex: u32 },
    #[error("factor {factor} composition fails at vertex {vertex}: acting by {x} then {y} gives {got}, but {x}*{y} gives {expected}")]
    Composition { factor: usize, x: usize, y: usize, vertex: u32, expected: u32, got: u32 },
    #[error("names list has length {len}, expected {vertices}")]
    BadNameCount { len: usize, vertices: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Violation(#[from] GraphViolation),
    #[error("operation requires a trivial amalgam")]
    AmalgamPresent,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(u32),
    #[error("factor index {0} is out of range")]
    FactorOutOfRange(usize),
}

/// Overlap failure: two distinct-factor subgraphs share vertices that do not
/// lie in a single amalgam class.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("factor-{factor_a} and factor-{factor_b} subgraphs share vertices {vertex_a} and {vertex_b}, which lie in different amalgam classes")]
pub struct OverlapViolation {
    pub factor_a: usize,
    pub factor_b: usize,
    pub vertex_a: u32,
    pub vertex_b: u32,
}

/// A labelled graph in which every label acts by a (purported) bijection.
/// Labels are kept sorted, so equal graphs compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionGraph {
    vertex_count: usize,
    labels: Vec<Label>,
    out: Vec<Vec<u32>>,
    names: Option<Vec<String>>,
}

impl ActionGraph {
    /// Builds a graph from `(label, successor array)` pairs, checking shape
    /// only; semantic validation is [`validate_action_graph`]'s job.
    pub fn from_parts(
        vertex_count: usize,
        parts: Vec<(Label, Vec<u32>)>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GraphViolation> {
        let mut parts = parts;
        parts.sort_by_key(|(l, _)| *l);
        for w in parts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GraphViolation::DuplicateLabel { label: w[0].0 });
            }
        }
        for (label, arr) in &parts {
            if arr.len() != vertex_count {
                return Err(GraphViolation::WrongArrayLength {
                    label: *label,
                    len: arr.len(),
                    vertices: vertex_count,
                });
            }
            for (v, &w) in arr.iter().enumerate() {
                if w as usize >= vertex_count {
                    return Err(GraphViolation::TargetOutOfRange {
                        label: *label,
                        vertex: v as u32,
                        value: w,
                    });
                }
            }
        }
        if let Some(ns) = &names {
            if ns.len() != vertex_count {
                return Err(GraphViolation::BadNameCount { len: ns.len(), vertices: vertex_count });
            }
        }
        let (labels, out) = parts.into_iter().unzip();
        Ok(ActionGraph { vertex_count, labels, out, names })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label_index(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn out_by_index(&self, idx: usize) -> &[u32] {
        &self.out[idx]
    }

    pub fn out_of(&self, label: &Label) -> Option<&[u32]> {
        self.label_index(label).map(|i| self.out[i].as_slice())
    }

    pub fn apply(&self, v: u32, label: &Label) -> Option<u32> {
        self.out_of(label).map(|arr| arr[v as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &[u32])> {
        self.labels.iter().zip(self.out.iter().map(|a| a.as_slice()))
    }

    /// Predecessor array of one label.  Meaningful only for bijective labels.
    pub fn inverse_by_index(&self, idx: usize) -> Vec<u32> {
        let mut inv = vec![0u32; self.vertex_count];
        for (v, &w) in self.out[idx].iter().enumerate() {
            inv[w as usize] = v as u32;
        }
        inv
    }

    /// Undirected adjacency over all labels, deduplicated and sorted.
    pub fn undirected_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for arr in &self.out {
            for (v, &w) in arr.iter().enumerate() {
                adj[v].push(w);
                adj[w as usize].push(v as u32);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        adj
    }
}

/// The full generator label set of a factor system, in sorted order: each
/// factor's non-amalgam elements, then the amalgam elements.
pub fn system_labels(fs: &FactorSystem) -> Vec<Label> {
    let mut labels = Vec::new();
    for (i, g) in fs.factors.iter().enumerate() {
        for e in 1..g.order {
            if fs.amalgam_index(i, e).is_none() {
                labels.push(Label::Tagged { factor: i, elem: e });
            }
        }
    }
    for b in 1..fs.amalgam_order() {
        labels.push(Label::Amalgam { elem: b });
    }
    labels.sort();
    labels
}

/// Label spelled by one word letter.
pub fn letter_label(fs: &FactorSystem, factor: usize, elem: usize) -> Option<Label> {
    if elem == 0 {
        return None;
    }
    match fs.amalgam_index(factor, elem) {
        Some(b) => Some(Label::Amalgam { elem: b }),
        None => Some(Label::Tagged { factor, elem }),
    }
}

/// Canonical label sequence spelling `w`.  Rejects identity letters, so pass
/// reduced words.
pub fn word_labels(fs: &FactorSystem, w: &Word) -> Result<Vec<Label>, WordError> {
    crate::words::validate_letters(fs, w)?;
    w.0.iter()
        .map(|l| letter_label(fs, l.factor, l.elem).ok_or(WordError::IdentityLetter))
        .collect()
}

/// Cayley graph of a single factor on its own elements, with labels tagged
/// as factor 0 and no amalgam.  Vertex `v` moves to `v * e` under label `e`.
pub fn cayley_of_factor(g: &FiniteGroup) -> ActionGraph {
    let parts = (1..g.order)
        .map(|e| {
            let arr = (0..g.order).map(|v| g.mul(v, e) as u32).collect();
            (Label::Tagged { factor: 0, elem: e }, arr)
        })
        .collect();
    ActionGraph::from_parts(g.order, parts, Some(g.names.clone()))
        .expect("cayley construction is well-shaped")
}

/// Cayley graph of the direct product of the factors, the canonical base
/// quotient for a trivial amalgam.  Vertex 0 is the identity tuple and every
/// word's cycles there all have length equal to its direct-product order.
pub fn base_graph_direct_product(fs: &FactorSystem, cap: usize) -> Result<ActionGraph, GraphError> {
    if fs.amalgam.is_some() {
        return Err(GraphError::AmalgamPresent);
    }
    let refs: Vec<&FiniteGroup> = fs.factors.iter().collect();
    let (product, embeddings) = direct_product(&refs, cap)?;
    let parts = system_labels(fs)
        .into_iter()
        .map(|label| {
            let Label::Tagged { factor, elem } = label else {
                unreachable!("trivial amalgam yields tagged labels only");
            };
            let img = embeddings[factor].apply(elem);
            let arr = (0..product.order).map(|v| product.mul(v, img) as u32).collect();
            (label, arr)
        })
        .collect();
    Ok(ActionGraph::from_parts(product.order, parts, Some(product.names.clone()))?)
}

/// Per-factor lookup from element index to graph label index (`None` for the
/// identity element).  Fails if the graph is missing a needed label.
fn factor_label_indices(
    fs: &FactorSystem,
    g: &ActionGraph,
    factor: usize,
) -> Result<Vec<Option<usize>>, GraphViolation> {
    (0..fs.factors[factor].order)
        .map(|e| match letter_label(fs, factor, e) {
            None => Ok(None),
            Some(label) => g
                .label_index(&label)
                .map(Some)
                .ok_or(GraphViolation::MissingLabel { label }),
        })
        .collect()
}

/// Checks that `g` is a free action graph of `fs`:
///
/// * every label of the system is present, and every tagged or amalgam label
///   of the graph belongs to the system (free labels are allowed extras);
/// * every label acts bijectively;
/// * for each factor, acting by `x` then `y` agrees with acting by `x*y`
///   (with amalgam elements routed through the shared labels), and no
///   non-identity element fixes a vertex.
///
/// The composition and fixed-point checks together force every factor orbit
/// to be a Cayley graph of the factor, and they pin the amalgam labels to
/// every factor's copy of the subgroup at once.
pub fn validate_action_graph(fs: &FactorSystem, g: &ActionGraph) -> Result<(), GraphViolation> {
    let expected = system_labels(fs);
    for label in g.labels() {
        match label {
            Label::Free { .. } => {}
            _ => {
                if expected.binary_search(label).is_err() {
                    return Err(GraphViolation::UnknownLabel { label: *label });
                }
            }
        }
    }
    for label in &expected {
        if g.label_index(label).is_none() {
            return Err(GraphViolation::MissingLabel { label: *label });
        }
    }

    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for (label, arr) in g.iter() {
        seen.iter_mut().for_each(|s| *s = false);
        for &w in arr {
            seen[w as usize] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(GraphViolation::NotBijective { label: *label, vertex: v as u32 });
        }
    }

    for (i, group) in fs.factors.iter().enumerate() {
        let lab = factor_label_indices(fs, g, i)?;
        let act = |v: u32, e: usize| -> u32 {
            match lab[e] {
                None => v,
                Some(idx) => g.out_by_index(idx)[v as usize],
            }
        };
        for v in 0..n as u32 {
            for x in 1..group.order {
                let vx = act(v, x);
                if vx == v {
                    let label = letter_label(fs, i, x).unwrap();
                    return Err(GraphViolation::FixedPoint { label, vertex: v });
                }
                for y in 1..group.order {
                    let got = act(vx, y);
                    let expected = act(v, group.mul(x, y));
                    if got != expected {
                        return Err(GraphViolation::Composition {
                            factor: i,
                            x,
                            y,
                            vertex: v,
                            expected,
                            got,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Partition of the vertices into amalgam classes (orbits of the amalgam
/// labels); singletons when the amalgam is trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BClasses {
    pub class_of: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
}

impl BClasses {
    pub fn same_class(&self, v: u32, w: u32) -> bool {
        self.class_of[v as usize] == self.class_of[w as usize]
    }
}

pub fn b_classes(fs: &FactorSystem, g: &ActionGraph) -> BClasses {
    let amalgam_idx: Vec<usize> = (1..fs.amalgam_order())
        .filter_map(|b| g.label_index(&Label::Amalgam { elem: b }))
        .collect();
    orbit_partition(g, &amalgam_idx)
}

/// Orbit partition of the vertices under a set of label indices, with class
/// ids assigned in order of least member.
fn orbit_partition(g: &ActionGraph, label_idx: &[usize]) -> BClasses {
    let n = g.vertex_count();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut stack = vec![start];
        let mut members = Vec::new();
        class_of[start as usize] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &li in label_idx {
                let w = g.out_by_index(li)[v as usize];
                if class_of[w as usize] == u32::MAX {
                    class_of[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    BClasses { class_of, classes }
}

/// Scope of a connected subgraph: one factor's labels (amalgam included) or
/// the amalgam labels alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgraphScope {
    Factor(usize),
    Amalgam,
}

fn scope_label_indices(
    fs: &FactorSystem,
    g: &ActionGraph,
    scope: SubgraphScope,
) -> Result<Vec<usize>, GraphError> {
    match scope {
        SubgraphScope::Factor(i) => {
            if i >= fs.factors.len() {
                return Err(GraphError::FactorOutOfRange(i));
            }
            Ok(factor_label_indices(fs, g, i)?.into_iter().flatten().collect())
        }
        SubgraphScope::Amalgam => Ok((1..fs.amalgam_order())
            .filter_map(|b| g.label_index(&Label::Amalgam { elem: b }))
            .collect()),
    }
}

/// Sorted vertex set of the maximal connected subgraph through `v` whose
/// edges carry labels from the given scope.  Factor label sets are closed
/// under inversion, so following positive edges suffices.
pub fn subgraph_of(
    fs: &FactorSystem,
    g: &ActionGraph,
    v: u32,
    scope: SubgraphScope,
) -> Result<Vec<u32>, GraphError> {
    if v as usize >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange(v));
    }
    let idx = scope_label_indices(fs, g, scope)?;
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    let mut members = Vec::new();
    seen[v as usize] = true;
    while let Some(u) = stack.pop() {
        members.push(u);
        for &li in &idx {
            let w = g.out_by_index(li)[u as usize];
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}

/// Orbit id per vertex under factor `i`'s labels.
pub fn factor_orbit_ids(
    fs: &FactorSystem,
    g: &ActionGraph,
    factor: usize,
) -> Result<Vec<u32>, GraphError> {
    let idx = scope_label_indices(fs, g, SubgraphScope::Factor(factor))?;
    Ok(orbit_partition(g, &idx).class_of)
}

/// Checks that any two vertices shared by subgraphs of two different factors
/// lie in one amalgam class.  Surgery marks rely on this to keep reconnected
/// edges unambiguous.
pub fn overlap_condition(fs: &FactorSystem, g: &ActionGraph) -> Result<(), OverlapViolation> {
    let k = fs.factors.len();
    if k < 2 {
        return Ok(());
    }
    let b = b_classes(fs, g);
    let orbit_ids: Vec<Vec<u32>> = (0..k)
        .map(|i| factor_orbit_ids(fs, g, i).expect("factor index in range"))
        .collect();
    for i in 0..k {
        for j in (i + 1)..k {
            let mut first: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for v in 0..g.vertex_count() as u32 {
                let key = (orbit_ids[i][v as usize], orbit_ids[j][v as usize]);
                match first.get(&key) {
                    None => {
                        first.insert(key, v);
                    }
                    Some(&u) => {
                        if !b.same_class(u, v) {
                            return Err(OverlapViolation {
                                factor_a: i,
                                factor_b: j,
                                vertex_a: u,
                                vertex_b: v,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Breadth-first distances from `start` in an undirected adjacency list,
/// cut off at `bound`; unreached vertices keep `u32::MAX`.
pub fn bounded_distances(adj: &[Vec<u32>], start: u32, bound: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[start as usize] = 0;
    let mut frontier = vec![start];
    let mut d = 0;
    while !frontier.is_empty() && d < bound {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, klein_four};
    use crate::words::FactorSystem;

    fn z2_z3() -> FactorSystem {
        FactorSystem::free_product(vec![cyclic(2), cyclic(3)])
    }

    #[test]
    fn cayley_of_z3_has_two_label_bijections() {
        let g = cayley_of_factor(&cyclic(3));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.labels().len(), 2);
        let fs = FactorSystem::free_product(vec![cyclic(3)]);
        validate_action_graph(&fs, &g).unwrap();
        // v * a from each vertex: 0->1, 1->2, 2->0.
        assert_eq!(g.out_of(&Label::Tagged { factor: 0, elem: 1 }).unwrap(), &[1, 2, 0]);
    }

    #[test]
    fn trivial_group_cayley_is_a_point() {
        let g = cayley_of_factor(&cyclic(1));
        assert_eq!(g.vertex_count(), 1);
        assert!(g.labels().is_empty());
    }

    #[test]
    fn base_graph_of_z2_z3_is_z6_cayley() {
        let fs = z2_z3();
        let g = base_graph_direct_product(&fs, 100).unwrap();
        assert_eq!(g.vertex_count(), 6);
        validate_action_graph(&fs, &g).unwrap();
        // Identity tuple is vertex 0; acting by a lands on the a-coordinate.
        assert_eq!(g.apply(0, &Label::Tagged { factor: 0, elem: 1 }), Some(1));
        assert_eq!(g.apply(0, &Label::Tagged { factor: 1, elem: 1 }), Some(2));
    }

    #[test]
    fn validator_rejects_broken_bijection() {
        let fs = z2_z3();
        let g = base_graph_direct_product(&fs, 100).unwrap();
        let mut parts: Vec<(Label, Vec<u32>)> =
            g.iter().map(|(l, a)| (*l, a.to_vec())).collect();
        parts[0].1[0] = parts[0].1[1]; // two vertices now share a target
        let broken = ActionGraph::from_parts(6, parts, None).unwrap();
        assert!(matches!(
            validate_action_graph(&fs, &broken),
            Err(GraphViolation::NotBijective { .. }) | Err(GraphViolation::Composition { .. })
        ));
    }

    #[test]
    fn validator_rejects_wrong_composition() {
        // Klein group factor, but the "ab" label acts like "a": bijective,
        // fixed-point free, wrong table.
        let fs = FactorSystem::free_product(vec![klein_four()]);
        let good = cayley_of_factor(&klein_four());
        let a = good.out_of(&Label::Tagged { factor: 0, elem: 1 }).unwrap().to_vec();
        let b = good.out_of(&Label::Tagged { factor: 0, elem: 2 }).unwrap().to_vec();
        let parts = vec![
            (Label::Tagged { factor: 0, elem: 1 }, a.clone()),
            (Label::Tagged { factor: 0, elem: 2 }, b),
            (Label::Tagged { factor: 0, elem: 3 }, a),
        ];
        let broken = ActionGraph::from_parts(4, parts, None).unwrap();
        assert!(matches!(
            validate_action_graph(&fs, &broken),
            Err(GraphViolation::Composition { .. })
        ));
    }

    #[test]
    fn validator_requires_all_labels() {
        let fs = z2_z3();
        let g = base_graph_direct_product(&fs, 100).unwrap();
        let parts: Vec<(Label, Vec<u32>)> =
            g.iter().skip(1).map(|(l, a)| (*l, a.to_vec())).collect();
        let broken = ActionGraph::from_parts(6, parts, None).unwrap();
        assert!(matches!(
            validate_action_graph(&fs, &broken),
            Err(GraphViolation::MissingLabel { .. })
        ));
    }

    #[test]
    fn free_labels_are_tolerated_and_checked_for_bijectivity() {
        let fs = FactorSystem::free_product(vec![cyclic(2)]);
        let parts = vec![
            (Label::Tagged { factor: 0, elem: 1 }, vec![1, 0, 3, 2]),
            (Label::Free { index: 0 }, vec![1, 2, 3, 0]),
        ];
        let g = ActionGraph::from_parts(4, parts, None).unwrap();
        validate_action_graph(&fs, &g).unwrap();

        let parts = vec![
            (Label::Tagged { factor: 0, elem: 1 }, vec![1, 0, 3, 2]),
            (Label::Free { index: 0 }, vec![1, 1, 3, 0]),
        ];
        let g = ActionGraph::from_parts(4, parts, None).unwrap();
        assert!(matches!(
            validate_action_graph(&fs, &g),
            Err(GraphViolation::NotBijective { label: Label::Free { index: 0 }, .. })
        ));
    }

    #[test]
    fn subgraphs_and_orbits() {
        let fs = z2_z3();
        let g = base_graph_direct_product(&fs, 100).unwrap();
        // Factor-0 subgraph through 0 is {0, 1} (the Z2 coset).
        assert_eq!(subgraph_of(&fs, &g, 0, SubgraphScope::Factor(0)).unwrap(), vec![0, 1]);
        // Factor-1 subgraph through 0 is the Z3 coset {0, 2, 4}.
        assert_eq!(subgraph_of(&fs, &g, 0, SubgraphScope::Factor(1)).unwrap(), vec![0, 2, 4]);
        // Trivial amalgam: each vertex is its own class.
        let b = b_classes(&fs, &g);
        assert_eq!(b.classes.len(), 6);
        assert_eq!(subgraph_of(&fs, &g, 3, SubgraphScope::Amalgam).unwrap(), vec![3]);
    }

    #[test]
    fn direct_product_base_satisfies_overlap() {
        let fs = z2_z3();
        let g = base_graph_direct_product(&fs, 100).unwrap();
        overlap_condition(&fs, &g).unwrap();
    }

    #[test]
    fn word_labels_reject_identity_letters() {
        let fs = z2_z3();
        let w = Word::new(vec![(0, 1), (1, 0)]);
        assert_eq!(word_labels(&fs, &w), Err(WordError::IdentityLetter));
        let w = Word::new(vec![(0, 1), (1, 2)]);
        assert_eq!(
            word_labels(&fs, &w).unwrap(),
            vec![Label::Tagged { factor: 0, elem: 1 }, Label::Tagged { factor: 1, elem: 2 }]
        );
    }

    #[test]
    fn bounded_bfs_distances() {
        let g = cayley_of_factor(&cyclic(6));
        let adj = g.undirected_adjacency();
        // Full adjacency: every vertex reaches every other in one step via
        // some power label, so distances are 0/1.
        let d = bounded_distances(&adj, 0, 3);
        assert_eq!(d[0], 0);
        assert!(d.iter().all(|&x| x <= 1));
    }
}
