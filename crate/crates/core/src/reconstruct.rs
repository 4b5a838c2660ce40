//! Rebuilding the submodule lattice of a multiplicity-free module from its
//! join-irreducible submodules.
//!
//! Each join irreducible `J` has a unique top composition factor. In a
//! multiplicity-free module `J <= K` holds exactly when the top factor of `J`
//! is a factor of `K`, so the irreducibles form a poset `P` and the lattice is
//! `J(P)`, with the cover that adds `J` labelled by the top factor of `J`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::birkhoff::{ideals_lattice, LabeledLattice};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;
use crate::properties::{is_distributive, is_multiplicity_free};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleSpec {
    pub name: String,
    pub top: String,
    pub factors: Vec<String>,
}

/// Names and edge labels for the bounds adjoined by `--with-bounds`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSpec {
    pub top: String,
    pub top_label: String,
    pub bottom: String,
    pub bottom_label: String,
    /// New name for the old bottom, which becomes the socle.
    #[serde(default)]
    pub socle: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionSpec {
    pub factors: Vec<String>,
    pub irreducibles: Vec<IrreducibleSpec>,
    /// Containment facts `(lower, upper)` between irreducibles.
    #[serde(default)]
    pub order: Vec<(String, String)>,
    /// Expected cover edges `(lower, upper, label)`; endpoints may use
    /// aliases and `X+Y` sums.
    #[serde(default)]
    pub edges: Vec<(String, String, String)>,
    /// Extra names for elements, e.g. `"S": "A∩B+A∩C+B∩C"`.
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
    #[serde(default)]
    pub bounds: Option<BoundsSpec>,
}

impl ReconstructionSpec {
    pub fn from_json(text: &str) -> Result<ReconstructionSpec> {
        Ok(serde_json::from_str(text)?)
    }

    fn irreducible(&self, name: &str) -> Result<usize> {
        self.irreducibles
            .iter()
            .position(|j| j.name == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }
}

/// Checks coverage, multiplicity-freeness, the one-irreducible-per-factor
/// correspondence, and acyclicity of the declared order.
pub fn validate_spec(s: &ReconstructionSpec) -> Result<()> {
    let factors: BTreeSet<&str> = s.factors.iter().map(String::as_str).collect();
    if factors.len() != s.factors.len() {
        return Err(Error::Invalid("duplicate composition factor in `factors`".into()));
    }
    let mut names = BTreeSet::new();
    for j in &s.irreducibles {
        if !names.insert(j.name.as_str()) {
            return Err(Error::DuplicateElement(j.name.clone()));
        }
        let mut seen = BTreeSet::new();
        for f in &j.factors {
            if !factors.contains(f.as_str()) {
                return Err(Error::Invalid(format!("`{}` has undeclared factor `{f}`", j.name)));
            }
            if !seen.insert(f.as_str()) {
                return Err(Error::Invalid(format!(
                    "`{}` has factor `{f}` more than once; the module is not multiplicity free",
                    j.name
                )));
            }
        }
        if !seen.contains(j.top.as_str()) {
            return Err(Error::Invalid(format!(
                "top factor `{}` of `{}` is not among its factors",
                j.top, j.name
            )));
        }
    }
    for f in &s.factors {
        if !s.irreducibles.iter().any(|j| j.factors.contains(f)) {
            return Err(Error::CoverageGap(f.clone()));
        }
    }
    for f in &s.factors {
        match s.irreducibles.iter().filter(|j| &j.top == f).count() {
            0 => return Err(Error::CoverageGap(f.clone())),
            1 => {}
            _ => return Err(Error::DuplicateTopFactor(f.clone())),
        }
    }
    declared_order(s)?;
    Ok(())
}

fn declared_order(s: &ReconstructionSpec) -> Result<Poset> {
    let names: Vec<String> = s.irreducibles.iter().map(|j| j.name.clone()).collect();
    let mut pairs = Vec::new();
    for (a, b) in &s.order {
        pairs.push((s.irreducible(a)?, s.irreducible(b)?));
    }
    Poset::from_index_pairs(names, &pairs).map_err(|e| match e {
        Error::CycleDetected(at) => Error::InconsistentOrder(format!("containment facts form a cycle through `{at}`")),
        other => other,
    })
}

/// The poset of irreducibles plus warnings about relations implied by the
/// factors but not declared.
pub fn irreducible_order(s: &ReconstructionSpec, infer: bool) -> Result<(Poset, Vec<String>)> {
    validate_spec(s)?;
    let declared = declared_order(s)?;
    let k = s.irreducibles.len();
    let factor_sets: Vec<BTreeSet<&str>> = s
        .irreducibles
        .iter()
        .map(|j| j.factors.iter().map(String::as_str).collect())
        .collect();
    for a in 0..k {
        for b in a + 1..k {
            if factor_sets[a] == factor_sets[b] {
                return Err(Error::OrderConflict {
                    lower: s.irreducibles[a].name.clone(),
                    upper: s.irreducibles[b].name.clone(),
                    reason: "equal composition factors; the module is not multiplicity free".into(),
                });
            }
        }
    }
    let implied = |a: usize, b: usize| factor_sets[b].contains(s.irreducibles[a].top.as_str());
    let mut warnings = Vec::new();
    let mut inferred = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let (na, nb) = (&s.irreducibles[a].name, &s.irreducibles[b].name);
            if declared.lt(a, b) && !implied(a, b) {
                return Err(Error::OrderConflict {
                    lower: na.clone(),
                    upper: nb.clone(),
                    reason: format!("top factor `{}` of `{na}` is not a factor of `{nb}`", s.irreducibles[a].top),
                });
            }
            if !declared.lt(a, b) && implied(a, b) {
                if declared.lt(b, a) {
                    return Err(Error::OrderConflict {
                        lower: na.clone(),
                        upper: nb.clone(),
                        reason: format!("factors place `{na}` below `{nb}` but the order facts say otherwise"),
                    });
                }
                inferred.push((a, b));
                if !infer {
                    warnings.push(format!(
                        "factors imply `{na}` <= `{nb}` (top factor `{}`) but this is not declared",
                        s.irreducibles[a].top
                    ));
                }
            }
        }
    }
    if !infer || inferred.is_empty() {
        return Ok((declared, warnings));
    }
    let mut pairs: Vec<(usize, usize)> = declared.covers().to_vec();
    pairs.extend(inferred);
    let names = s.irreducibles.iter().map(|j| j.name.clone()).collect();
    let poset = Poset::from_index_pairs(names, &pairs).map_err(|e| match e {
        Error::CycleDetected(at) => Error::OrderConflict {
            lower: at.clone(),
            upper: at,
            reason: "inferred relations form a cycle".into(),
        },
        other => other,
    })?;
    Ok((poset, warnings))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReconstructionOptions {
    pub infer: bool,
    pub with_bounds: bool,
}

/// A reconstructed labelled lattice together with the name resolver built
/// from the spec's aliases.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub lattice: LabeledLattice,
    pub irreducibles: Poset,
    pub warnings: Vec<String>,
    aliases: BTreeMap<String, String>,
}

impl Reconstruction {
    /// Resolves an element name: a lattice element, an alias, or a `+`-sum of
    /// resolvable names (parentheses are ignored).
    pub fn resolve(&self, name: &str) -> Result<usize> {
        resolve(&self.lattice, &self.aliases, name, 0)
    }

    pub fn factors_of(&self, name: &str) -> Result<Vec<String>> {
        Ok(factors_at(&self.lattice, self.resolve(name)?))
    }
}

fn resolve(l: &LabeledLattice, aliases: &BTreeMap<String, String>, name: &str, depth: usize) -> Result<usize> {
    let lat = l.lattice();
    let trimmed = name.trim();
    if let Some(i) = lat.poset().try_index_of(trimmed) {
        return Ok(i);
    }
    if depth < 16 {
        if let Some(target) = aliases.get(trimmed) {
            return resolve(l, aliases, target, depth + 1);
        }
        let stripped: String = trimmed.chars().filter(|&c| c != '(' && c != ')').collect();
        if stripped.contains('+') {
            let mut acc = lat.bottom();
            for part in stripped.split('+') {
                acc = lat.join(acc, resolve(l, aliases, part, depth + 1)?);
            }
            return Ok(acc);
        }
        if stripped != trimmed {
            return resolve(l, aliases, &stripped, depth + 1);
        }
    }
    Err(Error::UnknownElement(name.to_string()))
}

/// Builds `J(P)` for the poset of irreducibles, labels each cover by the top
/// factor of the irreducible it adds, and checks the declared edges.
pub fn reconstruct(
    s: &ReconstructionSpec,
    options: ReconstructionOptions,
    limits: &Limits,
) -> Result<Reconstruction> {
    let (poset, mut warnings) = irreducible_order(s, options.infer)?;
    for (i, j) in s.irreducibles.iter().enumerate() {
        let below: BTreeSet<&str> = poset.down(i).ones().map(|k| s.irreducibles[k].top.as_str()).collect();
        let declared: BTreeSet<&str> = j.factors.iter().map(String::as_str).collect();
        if below != declared {
            warnings.push(format!(
                "factors of `{}` are {{{}}} but the irreducibles below it give {{{}}}",
                j.name,
                declared.iter().copied().collect::<Vec<_>>().join(","),
                below.iter().copied().collect::<Vec<_>>().join(",")
            ));
        }
    }
    let tops: HashMap<&str, &str> = s.irreducibles.iter().map(|j| (j.name.as_str(), j.top.as_str())).collect();
    let lattice = ideals_lattice(&poset, limits)?.map_labels(|name| tops[name].to_string());
    if !is_distributive(lattice.lattice()).holds() {
        return Err(Error::NotDistributive);
    }
    if !is_multiplicity_free(lattice.lattice())? {
        return Err(Error::Invalid("reconstructed lattice is not multiplicity free".into()));
    }
    let aliases = s.aliases.clone();
    for (lower, upper, label) in &s.edges {
        let failure = |reason: String| Error::EmbeddingFailure {
            lower: lower.clone(),
            upper: upper.clone(),
            label: label.clone(),
            reason,
        };
        let a = resolve(&lattice, &aliases, lower, 0).map_err(|e| failure(e.to_string()))?;
        let b = resolve(&lattice, &aliases, upper, 0).map_err(|e| failure(e.to_string()))?;
        match lattice.label(a, b) {
            None => return Err(failure("not a cover edge of the reconstructed lattice".into())),
            Some(l) if l != label => return Err(failure(format!("edge is labelled `{l}`"))),
            Some(_) => {}
        }
    }
    let lattice = match (&s.bounds, options.with_bounds) {
        (_, false) => lattice,
        (Some(b), true) => lattice.with_bounds(&b.bottom, &b.bottom_label, &b.top, &b.top_label, b.socle.as_deref())?,
        (None, true) => lattice.with_bounds("⊥", "", "⊤", "", None)?,
    };
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Reconstruction {
        lattice,
        irreducibles: poset,
        warnings,
        aliases,
    })
}

fn factors_at(l: &LabeledLattice, x: usize) -> Vec<String> {
    let lat = l.lattice();
    let mut out = Vec::new();
    let mut y = x;
    while y != lat.bottom() {
        let below = lat.poset().lower_covers(y)[0];
        out.push(l.label(below, y).expect("cover").to_string());
        y = below;
    }
    out.sort();
    out
}

/// Labels along a maximal chain from the bottom to `x`, sorted.
pub fn element_factors(l: &LabeledLattice, x: &str) -> Result<Vec<String>> {
    Ok(factors_at(l, l.lattice().index_of(x)?))
}

pub fn interval_of(l: &LabeledLattice, a: &str, b: &str) -> Result<LabeledLattice> {
    let lat = l.lattice();
    l.interval(lat.index_of(a)?, lat.index_of(b)?)
}

/// The interval `[s, 1]`, which is the lattice of the quotient by `s`.
pub fn quotient_by(l: &LabeledLattice, s: &str) -> Result<LabeledLattice> {
    let lat = l.lattice();
    l.interval(lat.index_of(s)?, lat.top())
}
