//! Finite lattices: a poset plus full meet and join tables.

use fixedbitset::FixedBitSet;

use crate::error::{BoundKind, Error, LatticeWitness, Result};
use crate::limits::Limits;
use crate::poset::Poset;

/// Tables store `u16` indices; `u16::MAX` marks "not yet known".
pub const MAX_TABLE_ELEMENTS: usize = u16::MAX as usize;
const NONE: u16 = u16::MAX;

#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
    degree: Option<Vec<usize>>,
}

/// Result of [`Lattice::grade`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    /// All maximal chains have `length` covers; `degree[x]` is the rank of `x`.
    Graded { degree: Vec<usize>, length: usize },
    /// Two maximal chains (bottom to top) of different lengths.
    Ungraded {
        shorter: Vec<usize>,
        longer: Vec<usize>,
    },
}

impl Grading {
    pub fn is_graded(&self) -> bool {
        matches!(self, Grading::Graded { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinIrreducible {
    pub element: usize,
    /// The unique lower cover `J^0`; `None` only for the bottom element.
    pub lower_cover: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWitness {
    pub rank: usize,
    pub generators: Vec<usize>,
}

impl Lattice {
    /// Promotes a poset to a lattice, filling the meet and join tables.
    pub fn from_poset(poset: Poset) -> Result<Lattice> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Invalid("the empty poset is not a lattice".into()));
        }
        if n >= MAX_TABLE_ELEMENTS {
            return Err(Error::size("lattice size", MAX_TABLE_ELEMENTS - 1));
        }
        let join = match bound_table(&poset, BoundKind::Join) {
            Some(t) => t,
            None => return Err(Error::NotALattice(Box::new(find_witness(&poset)))),
        };
        let meet = match bound_table(&poset, BoundKind::Meet) {
            Some(t) => t,
            None => return Err(Error::NotALattice(Box::new(find_witness(&poset)))),
        };
        Ok(Lattice::from_tables(poset, meet, join))
    }

    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Lattice> {
        Lattice::from_poset(Poset::from_covers(elements, covers)?)
    }

    /// Assembles a lattice from precomputed tables (row-major `n * n`).
    pub(crate) fn from_tables(poset: Poset, meet: Vec<u16>, join: Vec<u16>) -> Lattice {
        let n = poset.len();
        debug_assert_eq!(meet.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        let bottom = poset.minimal_elements()[0];
        let top = poset.maximal_elements()[0];
        let mut l = Lattice {
            poset,
            meet,
            join,
            bottom,
            top,
            degree: None,
        };
        if let Grading::Graded { degree, .. } = l.grade() {
            l.degree = Some(degree);
        }
        l
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Degree function, present iff the lattice is graded.
    pub fn degree(&self) -> Option<&[usize]> {
        self.degree.as_deref()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom).to_vec()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top).to_vec()
    }

    /// Grades the lattice, or returns two maximal chains of different length.
    pub fn grade(&self) -> Grading {
        let n = self.len();
        let mut shortest = vec![usize::MAX; n];
        let mut longest = vec![0usize; n];
        for &x in self.poset.topological_order() {
            let lower = self.poset.lower_covers(x);
            if lower.is_empty() {
                shortest[x] = 0;
                longest[x] = 0;
            } else {
                shortest[x] = lower.iter().map(|&l| shortest[l] + 1).min().unwrap();
                longest[x] = lower.iter().map(|&l| longest[l] + 1).max().unwrap();
            }
        }
        if shortest[self.top] == longest[self.top] {
            return Grading::Graded {
                length: longest[self.top],
                degree: longest,
            };
        }
        let trace = |lens: &[usize]| {
            let mut chain = vec![self.top];
            let mut x = self.top;
            while x != self.bottom {
                x = *self
                    .poset
                    .lower_covers(x)
                    .iter()
                    .find(|&&l| lens[l] + 1 == lens[x])
                    .expect("DP predecessor");
                chain.push(x);
            }
            chain.reverse();
            chain
        };
        Grading::Ungraded {
            shorter: trace(&shortest),
            longer: trace(&longest),
        }
    }

    /// Elements with at most one lower cover. The bottom element (no lower
    /// cover) is included only when `include_bottom` is set.
    pub fn join_irreducibles(&self, include_bottom: bool) -> Vec<JoinIrreducible> {
        (0..self.len())
            .filter_map(|x| match self.poset.lower_covers(x) {
                [] if include_bottom => Some(JoinIrreducible {
                    element: x,
                    lower_cover: None,
                }),
                [l] => Some(JoinIrreducible {
                    element: x,
                    lower_cover: Some(*l),
                }),
                _ => None,
            })
            .collect()
    }

    /// Nonzero join irreducibles as indices.
    pub fn nonzero_join_irreducibles(&self) -> Vec<usize> {
        self.join_irreducibles(false).iter().map(|j| j.element).collect()
    }

    /// Least superset of `seed` closed under meet and join.
    pub fn sublattice_closure(&self, seed: &[usize]) -> FixedBitSet {
        let mut in_set = FixedBitSet::with_capacity(self.len());
        let mut members: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set.put(s) {
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            members.push(x);
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for z in [self.meet(x, y), self.join(x, y)] {
                    if !in_set.put(z) {
                        queue.push(z);
                    }
                }
                i += 1;
            }
        }
        in_set
    }

    /// Least number of join irreducibles generating the lattice, with the
    /// first generating set in canonical (index-lexicographic) order.
    pub fn rank(&self, limits: &Limits) -> Result<RankWitness> {
        let (atoms, coatoms) = (self.atoms().len(), self.coatoms().len());
        if atoms < 2 || coatoms < 2 {
            return Err(Error::NotRestricted { atoms, coatoms });
        }
        let jis = self.nonzero_join_irreducibles();
        if jis.len() > limits.max_rank_irreducibles {
            return Err(Error::size(
                "number of join irreducibles for rank search",
                limits.max_rank_irreducibles,
            ));
        }
        let n = self.len();
        for k in 1..=jis.len() {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let seed: Vec<usize> = idx.iter().map(|&i| jis[i]).collect();
                if self.sublattice_closure(&seed).count_ones(..) == n {
                    return Ok(RankWitness {
                        rank: k,
                        generators: seed,
                    });
                }
                if !next_combination(&mut idx, jis.len()) {
                    break;
                }
            }
        }
        unreachable!("the full set of join irreducibles generates a finite lattice")
    }

    /// The dual lattice on the same element names.
    pub fn dual(&self) -> Lattice {
        Lattice::from_tables(self.poset.dual(), self.join.clone(), self.meet.clone())
    }

    /// Restricts to a subset closed under meet and join (index order follows
    /// `subset`).
    pub fn sublattice(&self, subset: &[usize]) -> Lattice {
        let n = self.len();
        let m = subset.len();
        let mut pos = vec![NONE; n];
        for (i, &x) in subset.iter().enumerate() {
            pos[x] = i as u16;
        }
        let mut meet = vec![NONE; m * m];
        let mut join = vec![NONE; m * m];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                meet[i * m + j] = pos[self.meet(a, b)];
                join[i * m + j] = pos[self.join(a, b)];
            }
        }
        debug_assert!(meet.iter().chain(&join).all(|&v| v != NONE), "subset not closed");
        Lattice::from_tables(self.poset.induced(subset), meet, join)
    }

    /// The interval `[a, b]`.
    pub fn interval(&self, a: usize, b: usize) -> Result<Lattice> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(self.name(a).into(), self.name(b).into()));
        }
        let mut members = self.poset.up(a).clone();
        members.intersect_with(self.poset.down(b));
        let subset: Vec<usize> = members.ones().collect();
        Ok(self.sublattice(&subset))
    }

    /// Adjoins a new bottom and/or a new top element.
    pub fn with_new_bounds(&self, bottom: Option<&str>, top: Option<&str>) -> Result<Lattice> {
        let mut names: Vec<String> = Vec::with_capacity(self.len() + 2);
        let offset = usize::from(bottom.is_some());
        if let Some(b) = bottom {
            names.push(b.to_string());
        }
        names.extend(self.names().iter().cloned());
        let mut pairs: Vec<(usize, usize)> = self
            .poset
            .covers()
            .iter()
            .map(|&(a, b)| (a + offset, b + offset))
            .collect();
        if bottom.is_some() {
            pairs.push((0, self.bottom + offset));
        }
        if let Some(t) = top {
            names.push(t.to_string());
            pairs.push((self.top + offset, names.len() - 1));
        }
        let mut unique = std::collections::HashSet::new();
        for n in &names {
            if !unique.insert(n) {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        Lattice::from_poset(Poset::from_index_pairs(names, &pairs)?)
    }

    /// All maximal chains bottom to top, depth-first in index order.
    pub fn maximal_chains(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut chain = vec![self.bottom];
        self.chains_rec(&mut chain, &mut out, limits.max_chains)?;
        Ok(out)
    }

    fn chains_rec(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        let x = *chain.last().unwrap();
        if x == self.top {
            if out.len() >= cap {
                return Err(Error::ChainCapExceeded(cap));
            }
            out.push(chain.clone());
            return Ok(());
        }
        for &u in self.poset.upper_covers(x) {
            chain.push(u);
            self.chains_rec(chain, out, cap)?;
            chain.pop();
        }
        Ok(())
    }

    /// Exhaustively checks the lattice axioms against the order. Intended for
    /// tests and for validating externally supplied tables.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.len();
        let p = &self.poset;
        for a in 0..n {
            for b in 0..n {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if !(p.leq(m, a) && p.leq(m, b) && p.leq(a, j) && p.leq(b, j)) {
                    return Err(format!("bounds of ({a}, {b}) are not bounds"));
                }
                let mut ub = p.up(a).clone();
                ub.intersect_with(p.up(b));
                if !ub.is_subset(p.up(j)) {
                    return Err(format!("join of ({a}, {b}) is not least"));
                }
                let mut lb = p.down(a).clone();
                lb.intersect_with(p.down(b));
                if !lb.is_subset(p.down(m)) {
                    return Err(format!("meet of ({a}, {b}) is not greatest"));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Err(format!("absorption fails for ({a}, {b})"));
                }
                if p.leq(b, a) != (m == b) || p.leq(b, a) != (j == a) {
                    return Err(format!("order/table mismatch for ({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}

/// Fills a join (or meet) table by dynamic programming over the covers:
/// if `a` and `b` are incomparable, `a v b` is the least of `c v b` over the
/// upper covers `c` of `a`. Returns `None` if some pair has no bound.
fn bound_table(p: &Poset, kind: BoundKind) -> Option<Vec<u16>> {
    let n = p.len();
    let mut table = vec![NONE; n * n];
    let topo = p.topological_order();
    let order: Box<dyn Iterator<Item = &usize>> = match kind {
        BoundKind::Join => Box::new(topo.iter().rev()),
        BoundKind::Meet => Box::new(topo.iter()),
    };
    // below(x, y) is "x is on the near side of y": x <= y for joins, x >= y for meets.
    let below = |x: usize, y: usize| match kind {
        BoundKind::Join => p.leq(x, y),
        BoundKind::Meet => p.leq(y, x),
    };
    for &a in order {
        let next = match kind {
            BoundKind::Join => p.upper_covers(a),
            BoundKind::Meet => p.lower_covers(a),
        };
        for b in 0..n {
            let v = if below(a, b) {
                b
            } else if below(b, a) {
                a
            } else {
                let mut best: Option<usize> = None;
                for &c in next {
                    let j = table[c * n + b];
                    if j == NONE {
                        return None;
                    }
                    let j = j as usize;
                    best = Some(match best {
                        Some(cur) if below(cur, j) => cur,
                        _ => j,
                    });
                }
                let best = best?;
                if !next.iter().all(|&c| below(best, table[c * n + b] as usize)) {
                    return None;
                }
                best
            };
            table[a * n + b] = v as u16;
        }
    }
    Some(table)
}

/// First pair (in index order) that lacks a join or a meet.
fn find_witness(p: &Poset) -> LatticeWitness {
    let n = p.len();
    let extremes = |set: &FixedBitSet, kind: BoundKind| -> Vec<usize> {
        set.ones()
            .filter(|&m| {
                let near = match kind {
                    BoundKind::Join => p.down(m),
                    BoundKind::Meet => p.up(m),
                };
                let mut both = near.clone();
                both.intersect_with(set);
                both.count_ones(..) == 1
            })
            .collect()
    };
    for a in 0..n {
        for b in a + 1..n {
            for kind in [BoundKind::Join, BoundKind::Meet] {
                let mut set = match kind {
                    BoundKind::Join => p.up(a).clone(),
                    BoundKind::Meet => p.down(a).clone(),
                };
                set.intersect_with(match kind {
                    BoundKind::Join => p.up(b),
                    BoundKind::Meet => p.down(b),
                });
                let ext = extremes(&set, kind);
                if ext.len() != 1 {
                    return LatticeWitness {
                        a: p.name(a).into(),
                        b: p.name(b).into(),
                        kind,
                        candidates: ext.iter().map(|&x| p.name(x).to_string()).collect(),
                    };
                }
            }
        }
    }
    unreachable!("bound table failed but every pair has bounds")
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
