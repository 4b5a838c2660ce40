//! Down-set lattices `J(P)`, their join-irreducible posets, and the
//! incremental gluing construction of `J(P)`.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::freedist::MonotoneElement;
use crate::iso::find_isomorphism;
use crate::lattice::Lattice;
use crate::limits::Limits;
use crate::poset::Poset;
use crate::properties::{is_distributive, join_irreducible_poset};

/// A lattice whose cover edges carry labels.
#[derive(Clone, Debug)]
pub struct LabeledLattice {
    lattice: Lattice,
    /// Parallel to `lattice.poset().covers()`.
    labels: Vec<String>,
}

/// A poset whose cover edges carry labels; used for construction snapshots,
/// which need not be lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    pub poset: Poset,
    /// Parallel to `poset.covers()`.
    pub labels: Vec<String>,
}

impl LabeledPoset {
    pub fn label(&self, lower: usize, upper: usize) -> Option<&str> {
        edge_label(self.poset.covers(), &self.labels, lower, upper)
    }
}

fn edge_label<'a>(covers: &[(usize, usize)], labels: &'a [String], a: usize, b: usize) -> Option<&'a str> {
    covers.binary_search(&(a, b)).ok().map(|i| labels[i].as_str())
}

impl LabeledLattice {
    /// `labels` must be parallel to `lattice.poset().covers()`.
    pub fn new(lattice: Lattice, labels: Vec<String>) -> Result<LabeledLattice> {
        if labels.len() != lattice.poset().covers().len() {
            return Err(Error::Invalid(format!(
                "{} labels for {} cover edges",
                labels.len(),
                lattice.poset().covers().len()
            )));
        }
        Ok(LabeledLattice { lattice, labels })
    }

    /// Labels looked up per cover edge; missing edges are an error.
    pub fn from_label_map(lattice: Lattice, map: &HashMap<(usize, usize), String>) -> Result<LabeledLattice> {
        let labels = lattice
            .poset()
            .covers()
            .iter()
            .map(|&(a, b)| {
                map.get(&(a, b)).cloned().ok_or_else(|| {
                    Error::Invalid(format!(
                        "cover edge `{}` -> `{}` has no label",
                        lattice.name(a),
                        lattice.name(b)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        LabeledLattice::new(lattice, labels)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, lower: usize, upper: usize) -> Option<&str> {
        edge_label(self.lattice.poset().covers(), &self.labels, lower, upper)
    }

    /// `(lower, upper, label)` for every cover edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &str)> {
        self.lattice
            .poset()
            .covers()
            .iter()
            .zip(&self.labels)
            .map(|(&(a, b), l)| (a, b, l.as_str()))
    }

    pub fn map_labels(self, f: impl Fn(&str) -> String) -> LabeledLattice {
        let labels = self.labels.iter().map(|l| f(l)).collect();
        LabeledLattice {
            lattice: self.lattice,
            labels,
        }
    }

    /// The interval `[a, b]` with inherited labels.
    pub fn interval(&self, a: usize, b: usize) -> Result<LabeledLattice> {
        let sub = self.lattice.interval(a, b)?;
        let mut members = self.lattice.poset().up(a).clone();
        members.intersect_with(self.lattice.poset().down(b));
        let original: Vec<usize> = members.ones().collect();
        let labels = sub
            .poset()
            .covers()
            .iter()
            .map(|&(x, y)| {
                self.label(original[x], original[y])
                    .expect("interval covers are covers")
                    .to_string()
            })
            .collect();
        LabeledLattice::new(sub, labels)
    }

    /// Adjoins a new bottom and a new top. The old bottom may be renamed first
    /// (to free its name for the new bottom).
    pub fn with_bounds(
        &self,
        bottom: &str,
        bottom_label: &str,
        top: &str,
        top_label: &str,
        rename_old_bottom: Option<&str>,
    ) -> Result<LabeledLattice> {
        let mut base = self.lattice.clone();
        if let Some(new_name) = rename_old_bottom {
            let mut names = base.names().to_vec();
            names[base.bottom()] = new_name.to_string();
            let poset = base.poset().renamed(names)?;
            base = Lattice::from_poset(poset)?;
        }
        let ext = base.with_new_bounds(Some(bottom), Some(top))?;
        let mut map = HashMap::new();
        for (a, b, l) in self.edges() {
            map.insert((a + 1, b + 1), l.to_string());
        }
        map.insert((0, base.bottom() + 1), bottom_label.to_string());
        map.insert((base.top() + 1, ext.len() - 1), top_label.to_string());
        LabeledLattice::from_label_map(ext, &map)
    }
}

/// Canonical element order for sets of down-sets: by size, then by the sorted
/// list of members.
fn sort_sets(sets: &mut [FixedBitSet]) {
    sets.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
}

/// Names for down-sets of `p`: `0` for the empty set, otherwise the maximal
/// elements joined by `+`. Falls back to `{x,y,...}` for every set if that
/// naming is ambiguous.
pub fn ideal_names(p: &Poset, ideals: &[FixedBitSet]) -> Vec<String> {
    let by_max: Vec<String> = ideals
        .iter()
        .map(|s| {
            let tops: Vec<&str> = s
                .ones()
                .filter(|&x| p.upper_covers(x).iter().all(|&u| !s.contains(u)))
                .map(|x| p.name(x))
                .collect();
            if tops.is_empty() {
                "0".to_string()
            } else {
                tops.join("+")
            }
        })
        .collect();
    let unique: HashSet<&String> = by_max.iter().collect();
    if unique.len() == by_max.len() {
        return by_max;
    }
    ideals
        .iter()
        .map(|s| format!("{{{}}}", s.ones().map(|x| p.name(x)).collect::<Vec<_>>().join(",")))
        .collect()
}

/// `J(P)`: the down-sets of `p` under inclusion, each cover `I < I + {x}`
/// labelled by the name of `x`.
pub fn ideals_lattice(p: &Poset, limits: &Limits) -> Result<LabeledLattice> {
    let ideals = p.order_ideals(limits)?;
    if ideals.len() > limits.max_lattice {
        return Err(Error::size("lattice size", limits.max_lattice));
    }
    let index: HashMap<&FixedBitSet, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut pairs = Vec::new();
    let mut labels = HashMap::new();
    for (i, ideal) in ideals.iter().enumerate() {
        for x in 0..p.len() {
            if ideal.contains(x) || !p.lower_covers(x).iter().all(|&l| ideal.contains(l)) {
                continue;
            }
            let mut next = ideal.clone();
            next.insert(x);
            let j = index[&next];
            pairs.push((i, j));
            labels.insert((i, j), p.name(x).to_string());
        }
    }
    let names = ideal_names(p, &ideals);
    let lattice = Lattice::from_poset(Poset::from_index_pairs(names, &pairs)?)?;
    LabeledLattice::from_label_map(lattice, &labels)
}

/// The nonzero join irreducibles of a distributive lattice with the induced order.
pub fn irreducible_poset(l: &Lattice) -> Result<Poset> {
    if !is_distributive(l).holds() {
        return Err(Error::NotDistributive);
    }
    Ok(join_irreducible_poset(l))
}

/// Outcome of the two Birkhoff round trips.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub irreducibles: Poset,
    /// Isomorphism `J(irr(L)) -> L`, if one was found.
    pub lattice_map: Option<Vec<usize>>,
    /// Isomorphism `irr(J(P)) -> P` for `P = irr(L)`, if one was found.
    pub poset_map: Option<Vec<usize>>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.lattice_map.is_some() && self.poset_map.is_some()
    }
}

pub fn birkhoff_roundtrip(l: &Lattice, limits: &Limits) -> Result<RoundTrip> {
    let p = irreducible_poset(l)?;
    let jp = ideals_lattice(&p, limits)?;
    let lattice_map = find_isomorphism(jp.lattice().poset(), l.poset(), limits)?;
    let back = irreducible_poset(jp.lattice())?;
    let poset_map = find_isomorphism(&back, &p, limits)?;
    Ok(RoundTrip {
        irreducibles: p,
        lattice_map,
        poset_map,
    })
}

#[derive(Clone, Debug)]
pub struct ConstructionStep {
    pub description: String,
    pub snapshot: LabeledPoset,
}

#[derive(Clone, Debug, Default)]
pub struct ConstructionTrace {
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionTrace {
    pub fn element_counts(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.snapshot.poset.len()).collect()
    }

    pub fn last(&self) -> Option<&LabeledPoset> {
        self.steps.last().map(|s| &s.snapshot)
    }
}

fn snapshot(p: &Poset, nodes: &[FixedBitSet]) -> LabeledPoset {
    let mut nodes = nodes.to_vec();
    sort_sets(&mut nodes);
    let names = ideal_names(p, &nodes);
    let n = nodes.len();
    let down: Vec<FixedBitSet> = nodes
        .iter()
        .map(|s| {
            let mut row = FixedBitSet::with_capacity(n);
            for (j, t) in nodes.iter().enumerate() {
                if t.is_subset(s) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let poset = Poset::from_down_sets(names, down);
    let labels = poset
        .covers()
        .iter()
        .map(|&(a, b)| {
            let mut diff = nodes[b].clone();
            diff.difference_with(&nodes[a]);
            diff.ones().map(|x| p.name(x)).collect::<Vec<_>>().join("+")
        })
        .collect();
    LabeledPoset { poset, labels }
}

/// Builds `J(P)` by starting from the Boolean lattice on the minimal elements
/// and repeatedly adjoining the principal down-set of the first minimal
/// element `x` of the unprocessed part, then drawing in the joins of `x` with
/// the existing elements one level at a time. A snapshot is recorded after
/// each step.
pub fn stanley_construct(p: &Poset, limits: &Limits) -> Result<ConstructionTrace> {
    let m = p.len();
    let mut trace = ConstructionTrace::default();
    let mins = p.minimal_elements();
    if mins.len() >= usize::BITS as usize - 1 || 1usize << mins.len() > limits.max_lattice {
        return Err(Error::size("lattice size", limits.max_lattice));
    }
    let mut nodes: Vec<FixedBitSet> = Vec::new();
    for mask in 0..1usize << mins.len() {
        let mut s = FixedBitSet::with_capacity(m);
        for (i, &x) in mins.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(x);
            }
        }
        nodes.push(s);
    }
    let mut present: HashSet<FixedBitSet> = nodes.iter().cloned().collect();
    let mut processed = FixedBitSet::with_capacity(m);
    for &x in &mins {
        processed.insert(x);
    }
    let min_names: Vec<&str> = mins.iter().map(|&x| p.name(x)).collect();
    trace.steps.push(ConstructionStep {
        description: format!("Boolean lattice on the minimal elements {{{}}}", min_names.join(", ")),
        snapshot: snapshot(p, &nodes),
    });

    while processed.count_ones(..) < m {
        let x = (0..m)
            .find(|&x| !processed.contains(x) && p.lower_covers(x).iter().all(|&l| processed.contains(l)))
            .expect("a finite poset has a minimal unprocessed element");
        let principal = p.down(x).clone();
        let mut base = principal.clone();
        base.remove(x);
        let base_name = ideal_names(p, std::slice::from_ref(&base)).remove(0);
        let mut add = |s: FixedBitSet, nodes: &mut Vec<FixedBitSet>| -> Result<bool> {
            if present.contains(&s) {
                return Ok(false);
            }
            if nodes.len() >= limits.max_lattice {
                return Err(Error::size("lattice size", limits.max_lattice));
            }
            present.insert(s.clone());
            nodes.push(s);
            Ok(true)
        };
        add(principal.clone(), &mut nodes)?;
        trace.steps.push(ConstructionStep {
            description: format!("adjoin {} covering {}", p.name(x), base_name),
            snapshot: snapshot(p, &nodes),
        });
        let mut frontier = vec![principal];
        let mut pass = 1;
        loop {
            let mut fresh = Vec::new();
            for a in &frontier {
                for y in processed.ones() {
                    if a.contains(y) || !p.lower_covers(y).iter().all(|&l| a.contains(l)) {
                        continue;
                    }
                    let mut s = a.clone();
                    s.insert(y);
                    if add(s.clone(), &mut nodes)? {
                        fresh.push(s);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            trace.steps.push(ConstructionStep {
                description: format!("draw in joins with {} (pass {pass})", p.name(x)),
                snapshot: snapshot(p, &nodes),
            });
            frontier = fresh;
            pass += 1;
        }
        processed.insert(x);
    }
    Ok(trace)
}

/// Evaluates a join of meets of generators in `l`, sending generator `i` to
/// `assignment[i]`.
pub fn evaluate_in_lattice(expr: &MonotoneElement, l: &Lattice, assignment: &[usize]) -> Result<usize> {
    if assignment.len() != expr.arity() {
        return Err(Error::ArityMismatch(expr.arity(), assignment.len()));
    }
    if let Some(&bad) = assignment.iter().find(|&&x| x >= l.len()) {
        return Err(Error::UnknownElement(format!("#{bad}")));
    }
    Ok(l.join_all(expr.clauses().iter().map(|&clause| {
        l.meet_all((0..expr.arity()).filter(|i| clause >> i & 1 == 1).map(|i| assignment[i]))
    })))
}

/// [`evaluate_in_lattice`] with the assignment given by element names.
pub fn evaluate_named<S: AsRef<str>>(expr: &MonotoneElement, l: &Lattice, assignment: &[S]) -> Result<usize> {
    let idx = assignment
        .iter()
        .map(|s| l.index_of(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    evaluate_in_lattice(expr, l, &idx)
}
