//! JSON and DOT formats.
//!
//! Posets and lattices share one JSON shape:
//! `{"elements": [...], "covers": [["lower", "upper"], ...], "labels": {"lower|upper": "x"}}`
//! where `labels` is optional.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::birkhoff::{ConstructionTrace, LabeledLattice};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// Cover labels keyed by (lower, upper) element index.
pub type EdgeLabels = HashMap<(usize, usize), String>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

/// A poset read from JSON with its (possibly partial) edge labels.
#[derive(Clone, Debug)]
pub struct Document {
    pub poset: Poset,
    /// Labels of cover edges, by `(lower, upper)` index.
    pub labels: EdgeLabels,
}

impl Document {
    /// Labels parallel to the cover list, if every cover edge has one.
    pub fn complete_labels(&self) -> Option<Vec<String>> {
        self.poset
            .covers()
            .iter()
            .map(|e| self.labels.get(e).cloned())
            .collect()
    }
}

fn label_key(lower: &str, upper: &str) -> String {
    format!("{lower}|{upper}")
}

pub fn parse_poset_json(text: &str) -> Result<Document> {
    let doc: PosetJson = serde_json::from_str(text)?;
    let (poset, redundant) = Poset::build(&doc.elements, &doc.covers)?;
    for (a, b) in redundant {
        log::warn!("dropping redundant cover pair ({a}, {b}): implied by transitivity");
    }
    let mut labels = HashMap::new();
    for (key, label) in &doc.labels {
        let (a, b) = key
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("label key `{key}` is not of the form `lower|upper`")))?;
        let e = (poset.index_of(a)?, poset.index_of(b)?);
        if poset.is_cover(e.0, e.1) {
            labels.insert(e, label.clone());
        } else {
            log::warn!("ignoring label on `{key}`: not a cover edge");
        }
    }
    Ok(Document { poset, labels })
}

pub fn read_poset(path: &Path) -> Result<Document> {
    parse_poset_json(&std::fs::read_to_string(path)?)
}

/// Reads a lattice, validating lattice-ness.
pub fn parse_lattice_json(text: &str) -> Result<(Lattice, EdgeLabels)> {
    let doc = parse_poset_json(text)?;
    Ok((Lattice::from_poset(doc.poset)?, doc.labels))
}

pub fn read_lattice(path: &Path) -> Result<(Lattice, EdgeLabels)> {
    parse_lattice_json(&std::fs::read_to_string(path)?)
}

pub fn poset_to_json(p: &Poset, labels: Option<&[String]>) -> String {
    let doc = PosetJson {
        elements: p.names().to_vec(),
        covers: p
            .cover_names()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        labels: labels
            .map(|ls| {
                p.cover_names()
                    .into_iter()
                    .zip(ls)
                    .map(|((a, b), l)| (label_key(a, b), l.clone()))
                    .collect()
            })
            .unwrap_or_default(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn labeled_lattice_to_json(l: &LabeledLattice) -> String {
    poset_to_json(l.lattice().poset(), Some(l.labels()))
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// DOT digraph with edges lower -> upper, drawn bottom to top.
pub fn to_dot(p: &Poset, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for name in p.names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (i, &(a, b)) in p.covers().iter().enumerate() {
        let _ = write!(out, "  {} -> {}", quote(p.name(a)), quote(p.name(b)));
        match labels.map(|ls| ls[i].as_str()) {
            Some(l) if !l.is_empty() => {
                let _ = writeln!(out, " [label={}];", quote(l));
            }
            _ => out.push_str(";\n"),
        }
    }
    out.push_str("}\n");
    out
}

/// Writes one DOT file per construction step: `step_000.dot`, `step_001.dot`, ...
pub fn write_trace(dir: &Path, trace: &ConstructionTrace) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(trace.steps.len());
    for (i, step) in trace.steps.iter().enumerate() {
        let path = dir.join(format!("step_{i:03}.dot"));
        let dot = to_dot(&step.snapshot.poset, Some(&step.snapshot.labels));
        let text = format!("// {}\n{dot}", step.description);
        std::fs::write(&path, text)?;
        paths.push(path);
    }
    Ok(paths)
}
