//! Finite posets stored as a cover relation plus bitset rows of the order.
//!
//! Elements carry opaque string names but every algorithm works on dense
//! indices `0..len()`; the index order is the order in which elements were
//! supplied and serves as the canonical element order for tie-breaking.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    /// `down[x]` = { y : y <= x }
    down: Vec<FixedBitSet>,
    /// `up[x]` = { y : x <= y }
    up: Vec<FixedBitSet>,
    /// A linear extension; ties broken by index.
    topo: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for Poset {}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds a poset from element names and "b covers a" pairs `(a, b)`.
    ///
    /// The order is the reflexive-transitive closure of the pairs; the stored
    /// covers are its transitive reduction. Pairs implied by transitivity are
    /// dropped and returned as the second component.
    pub fn build<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<(Poset, Vec<(String, String)>)> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        let mut seen = HashSet::new();
        for (a, b) in covers {
            let pair = (lookup(a)?, lookup(b)?);
            if seen.insert(pair) {
                pairs.push(pair);
            }
        }
        let poset = Poset::from_index_pairs(names, &pairs)?;
        let redundant = pairs
            .iter()
            .filter(|&&(a, b)| poset.lower[b].binary_search(&a).is_err())
            .map(|&(a, b)| (poset.names[a].clone(), poset.names[b].clone()))
            .collect();
        Ok((poset, redundant))
    }

    /// Like [`Poset::build`], logging dropped redundant pairs as warnings.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        let (poset, redundant) = Poset::build(elements, covers)?;
        for (a, b) in redundant {
            log::warn!("dropping redundant cover pair ({a}, {b}): implied by transitivity");
        }
        Ok(poset)
    }

    /// Builds from index pairs `(lower, upper)` (any relation whose
    /// reflexive-transitive closure is the intended order).
    pub(crate) fn from_index_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::CycleDetected(names[a].clone()));
            }
            succ[a].push(b);
            pred[b].push(a);
        }
        let topo = match topological_order(n, &succ, &pred) {
            Ok(t) => t,
            Err(remaining) => {
                let at = node_on_cycle(&remaining, &pred);
                return Err(Error::CycleDetected(names[at].clone()));
            }
        };
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for &x in &topo {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for &p in &pred[x] {
                row.union_with(&down[p]);
            }
            down[x] = row;
        }
        Ok(Poset::from_parts(names, down, Some(topo)))
    }

    /// Builds from a relation given as down-set rows, which must already be
    /// reflexive, transitive and antisymmetric.
    pub(crate) fn from_down_sets(names: Vec<String>, down: Vec<FixedBitSet>) -> Poset {
        Poset::from_parts(names, down, None)
    }

    fn from_parts(names: Vec<String>, down: Vec<FixedBitSet>, topo: Option<Vec<usize>>) -> Poset {
        let n = names.len();
        let index = index_names(&names).expect("names were validated by the caller");
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, row) in down.iter().enumerate() {
            for y in row.ones() {
                up[y].insert(x);
            }
        }
        // Sorting by down-set size is a linear extension.
        let topo = topo.unwrap_or_else(|| {
            let mut t: Vec<usize> = (0..n).collect();
            t.sort_by_key(|&x| (down[x].count_ones(..), x));
            t
        });
        let mut pos = vec![0usize; n];
        for (i, &x) in topo.iter().enumerate() {
            pos[x] = i;
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        let mut covers = Vec::new();
        let mut covered = FixedBitSet::with_capacity(n);
        for b in 0..n {
            let mut below: Vec<usize> = down[b].ones().filter(|&a| a != b).collect();
            below.sort_by_key(|&a| Reverse(pos[a]));
            covered.clear();
            for a in below {
                if !covered.contains(a) {
                    lower[b].push(a);
                    upper[a].push(b);
                    covers.push((a, b));
                    covered.union_with(&down[a]);
                }
            }
        }
        for l in lower.iter_mut() {
            l.sort_unstable();
        }
        for u in upper.iter_mut() {
            u.sort_unstable();
        }
        covers.sort_unstable();
        Poset {
            names,
            index,
            covers,
            lower,
            upper,
            down,
            up,
            topo,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn try_index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lower[b].binary_search(&a).is_ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{ y : y <= x }` as a bitset row.
    pub fn down(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// `{ y : x <= y }` as a bitset row.
    pub fn up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// Principal down-set of the named element, in index order.
    pub fn down_set(&self, name: &str) -> Result<Vec<&str>> {
        let x = self.index_of(name)?;
        Ok(self.down[x].ones().map(|y| self.name(y)).collect())
    }

    /// All order ideals (down-sets), including the empty set and the whole
    /// poset. Ordered by size, then lexicographically by element index.
    pub fn order_ideals(&self, limits: &Limits) -> Result<Vec<FixedBitSet>> {
        let mut out = Vec::new();
        let mut current = FixedBitSet::with_capacity(self.len());
        self.ideals_rec(0, &mut current, &mut out, limits.max_ideals)?;
        out.sort_by(|a, b| {
            a.count_ones(..)
                .cmp(&b.count_ones(..))
                .then_with(|| a.ones().cmp(b.ones()))
        });
        Ok(out)
    }

    fn ideals_rec(
        &self,
        depth: usize,
        current: &mut FixedBitSet,
        out: &mut Vec<FixedBitSet>,
        cap: usize,
    ) -> Result<()> {
        if depth == self.len() {
            if out.len() >= cap {
                return Err(Error::size("number of order ideals", cap));
            }
            out.push(current.clone());
            return Ok(());
        }
        let x = self.topo[depth];
        self.ideals_rec(depth + 1, current, out, cap)?;
        if self.lower[x].iter().all(|&l| current.contains(l)) {
            current.insert(x);
            self.ideals_rec(depth + 1, current, out, cap)?;
            current.set(x, false);
        }
        Ok(())
    }

    /// Counts order ideals without materializing them.
    pub fn count_order_ideals(&self, limits: &Limits) -> Result<u64> {
        let mut current = FixedBitSet::with_capacity(self.len());
        let mut count = 0u64;
        self.count_rec(0, &mut current, &mut count, limits.max_ideals as u64)?;
        Ok(count)
    }

    fn count_rec(
        &self,
        depth: usize,
        current: &mut FixedBitSet,
        count: &mut u64,
        cap: u64,
    ) -> Result<()> {
        if depth == self.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::size("number of order ideals", cap as usize));
            }
            return Ok(());
        }
        let x = self.topo[depth];
        self.count_rec(depth + 1, current, count, cap)?;
        if self.lower[x].iter().all(|&l| current.contains(l)) {
            current.insert(x);
            self.count_rec(depth + 1, current, count, cap)?;
            current.set(x, false);
        }
        Ok(())
    }

    /// True iff `set` is closed downward.
    pub fn is_order_ideal(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> Poset {
        let mut topo = self.topo.clone();
        topo.reverse();
        let mut dual = Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            covers: self.covers.iter().map(|&(a, b)| (b, a)).collect(),
            lower: self.upper.clone(),
            upper: self.lower.clone(),
            down: self.up.clone(),
            up: self.down.clone(),
            topo,
        };
        dual.covers.sort_unstable();
        dual
    }

    /// The induced subposet on `subset` (element order follows `subset`).
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let m = subset.len();
        let names = subset.iter().map(|&x| self.names[x].clone()).collect();
        let down = subset
            .iter()
            .map(|&b| {
                let mut row = FixedBitSet::with_capacity(m);
                for (i, &a) in subset.iter().enumerate() {
                    if self.leq(a, b) {
                        row.insert(i);
                    }
                }
                row
            })
            .collect();
        Poset::from_down_sets(names, down)
    }

    /// Same order, new names (one per element, in index order).
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.len() {
            return Err(Error::Invalid(format!(
                "expected {} names, got {}",
                self.len(),
                names.len()
            )));
        }
        let index = index_names(&names)?;
        Ok(Poset {
            names,
            index,
            ..self.clone()
        })
    }

    /// Longest chain length from a minimal element to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for &x in &self.topo {
            h[x] = self.lower[x].iter().map(|&l| h[l] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Cover pairs by name.
    pub fn cover_names(&self) -> Vec<(&str, &str)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.name(a), self.name(b)))
            .collect()
    }
}

/// Kahn's algorithm, smallest index first. On a cycle returns the elements
/// that could not be ordered.
fn topological_order(
    n: usize,
    succ: &[Vec<usize>],
    pred: &[Vec<usize>],
) -> std::result::Result<Vec<usize>, Vec<bool>> {
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        let mut remaining = vec![true; n];
        for &x in &order {
            remaining[x] = false;
        }
        Err(remaining)
    }
}

/// Walks predecessors inside the unordered remainder until a node repeats.
fn node_on_cycle(remaining: &[bool], pred: &[Vec<usize>]) -> usize {
    let mut x = remaining.iter().position(|&r| r).expect("cycle present");
    let mut visited = vec![false; remaining.len()];
    while !visited[x] {
        visited[x] = true;
        x = *pred[x]
            .iter()
            .filter(|&&p| remaining[p])
            .min()
            .expect("every unordered node has an unordered predecessor");
    }
    x
}
