//! JSON and DOT serialization.
//!
//! Graph documents mirror the internal per-label successor arrays, so a
//! round-trip is lossless.  Witness documents key each permutation by a
//! human-readable label string — `"i:name"` for factor i's element `name`,
//! `"B:name"` for an amalgam element (named by its factor-0 representative),
//! `"xj"` for the j-th free label.  All serialization is deterministic:
//! identical inputs give byte-identical output.

use crate::graph::{ActionGraph, GraphViolation, Label};
use crate::perm::{PermError, Permutation};
use crate::trace::UCycleReport;
use crate::witness::{PotencyWitness, TranscriptStep};
use crate::words::FactorSystem;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphViolation),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("unrecognized label key {key:?}")]
    UnknownLabelKey { key: String },
}

/// One label's successor column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledColumn {
    pub label: Label,
    pub out: Vec<u32>,
}

/// On-disk form of an action graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: usize,
    pub labels: Vec<LabeledColumn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

pub fn graph_to_doc(g: &ActionGraph) -> GraphDoc {
    GraphDoc {
        vertices: g.vertex_count(),
        labels: g
            .iter()
            .map(|(label, out)| LabeledColumn { label: *label, out: out.to_vec() })
            .collect(),
        names: g.names().map(<[String]>::to_vec),
    }
}

pub fn doc_to_graph(doc: &GraphDoc) -> Result<ActionGraph, GraphViolation> {
    ActionGraph::from_parts(
        doc.vertices,
        doc.labels.iter().map(|c| (c.label, c.out.clone())).collect(),
        doc.names.clone(),
    )
}

/// Stable string key for a label, used in witness documents and DOT output.
pub fn label_key(fs: &FactorSystem, label: &Label) -> String {
    match *label {
        Label::Tagged { factor, elem } => {
            format!("{factor}:{}", fs.factors[factor].names[elem])
        }
        Label::Amalgam { elem } => {
            let rep = fs
                .amalgam
                .as_ref()
                .map_or(elem, |a| a.subgroups[0][elem]);
            format!("B:{}", fs.factors[0].names[rep])
        }
        Label::Free { index } => format!("x{index}"),
    }
}

/// Inverse of [`label_key`].
pub fn parse_label_key(fs: &FactorSystem, key: &str) -> Result<Label, IoError> {
    let unknown = || IoError::UnknownLabelKey { key: key.to_owned() };
    if let Some(name) = key.strip_prefix("B:") {
        let amalgam = fs.amalgam.as_ref().ok_or_else(unknown)?;
        for elem in 1..amalgam.subgroups[0].len() {
            if fs.factors[0].names[amalgam.subgroups[0][elem]] == name {
                return Ok(Label::Amalgam { elem });
            }
        }
        return Err(unknown());
    }
    if let Some(digits) = key.strip_prefix('x') {
        if !key.contains(':') {
            let index = digits.parse().map_err(|_| unknown())?;
            return Ok(Label::Free { index });
        }
    }
    let (factor, name) = key.split_once(':').ok_or_else(unknown)?;
    let factor: usize = factor.parse().map_err(|_| unknown())?;
    let group = fs.factors.get(factor).ok_or_else(unknown)?;
    for elem in 1..group.order {
        if group.names[elem] == name {
            return Ok(Label::Tagged { factor, elem });
        }
    }
    Err(unknown())
}

/// On-disk form of a potency witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub k_u: u64,
    pub n: u64,
    pub certified_order: u64,
    pub vertices: usize,
    pub permutations: BTreeMap<String, Vec<u32>>,
    pub transcript: Vec<TranscriptStep>,
}

pub fn witness_to_doc(w: &PotencyWitness) -> WitnessDoc {
    WitnessDoc {
        k_u: w.k_u,
        n: w.n,
        certified_order: w.certified_order,
        vertices: w.graph.vertex_count(),
        permutations: w
            .permutations
            .iter()
            .map(|(label, p)| (label_key(&w.system, label), p.as_slice().to_vec()))
            .collect(),
        transcript: w.transcript.clone(),
    }
}

/// Rebuilds the label-keyed permutation map of a witness document.
pub fn doc_permutations(
    fs: &FactorSystem,
    doc: &WitnessDoc,
) -> Result<BTreeMap<Label, Permutation>, IoError> {
    doc.permutations
        .iter()
        .map(|(key, images)| {
            Ok((parse_label_key(fs, key)?, Permutation::from_images(images.clone())?))
        })
        .collect()
}

/// One crossing-count row of a trace document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCrossing {
    pub class: u32,
    pub factor: usize,
    pub plus: u64,
    pub minus: u64,
    pub l: u64,
}

/// On-disk form of a u-cycle report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub base_vertex: u32,
    pub length: u64,
    pub path: Vec<u32>,
    pub crossings: Vec<TraceCrossing>,
}

pub fn trace_to_doc(report: &UCycleReport) -> TraceDoc {
    TraceDoc {
        base_vertex: report.base_vertex,
        length: report.length,
        path: report.path.clone(),
        crossings: report
            .crossings
            .iter()
            .map(|(&(class, factor), c)| TraceCrossing {
                class,
                factor,
                plus: c.plus,
                minus: c.minus,
                l: c.l(),
            })
            .collect(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic DOT export: vertices in index order, then one directed
/// edge per positively oriented edge, grouped by label in label order.
pub fn graph_to_dot(fs: &FactorSystem, g: &ActionGraph) -> String {
    let mut out = String::from("digraph action_graph {\n");
    for v in 0..g.vertex_count() {
        let name = g
            .names()
            .map_or_else(|| format!("v{v}"), |names| names[v].clone());
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", dot_escape(&name));
    }
    for (label, arr) in g.iter() {
        let key = dot_escape(&label_key(fs, label));
        for (v, &w) in arr.iter().enumerate() {
            let _ = writeln!(out, "  v{v} -> v{w} [label=\"{key}\"];");
        }
    }
    out.push_str("}\n");
    out
}

/// Pretty JSON with a trailing newline — the one serialization used for all
/// emitted documents, so byte-identical reruns are byte-identical files.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}
