//! Modularity, semimodularity, distributivity, interval classes and
//! Jordan–Hölder multiplicities.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{Grading, Lattice};
use crate::limits::Limits;
use crate::poset::Poset;

/// An embedded pentagon, listed as `[bottom, a, c, b, top]` with `c < b` and
/// `a` incomparable to both.
pub type Pentagon = [usize; 5];
/// An embedded diamond, listed as `[bottom, x, y, z, top]`.
pub type Diamond = [usize; 5];

/// Verdicts of the three modularity criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularityReport {
    /// First triple `(a, b, c)` with `b <= c` and `b v (a ^ c) != (b v a) ^ c`.
    pub identity_violation: Option<[usize; 3]>,
    /// Upper semimodularity of the lattice and of its dual.
    pub semimodular_both_ways: bool,
    /// First pentagon sublattice found.
    pub pentagon: Option<Pentagon>,
}

impl ModularityReport {
    pub fn holds(&self) -> bool {
        self.identity_violation.is_none()
    }

    /// True when all three criteria give the same verdict.
    pub fn consistent(&self) -> bool {
        let v = self.holds();
        self.semimodular_both_ways == v && self.pentagon.is_none() == v
    }
}

/// Verdicts of the four distributivity criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityReport {
    /// First triple with `b v (a ^ c) != (b v a) ^ (b v c)`.
    pub identity_violation: Option<[usize; 3]>,
    /// First triple with `b ^ (a v c) != (b ^ a) v (b ^ c)`.
    pub dual_identity_violation: Option<[usize; 3]>,
    pub pentagon: Option<Pentagon>,
    pub diamond: Option<Diamond>,
    /// Number of down-sets of the join-irreducible poset. It equals the
    /// lattice size exactly when the lattice is distributive.
    pub irreducible_ideal_count: u64,
    pub size: usize,
}

impl DistributivityReport {
    pub fn holds(&self) -> bool {
        self.identity_violation.is_none()
    }

    pub fn verdicts(&self) -> [bool; 4] {
        [
            self.identity_violation.is_none(),
            self.dual_identity_violation.is_none(),
            self.pentagon.is_none() && self.diamond.is_none(),
            self.irreducible_ideal_count == self.size as u64,
        ]
    }

    pub fn consistent(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&x| x == v[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimodularVerdict {
    pub holds: bool,
    /// Why the check failed, if it did.
    pub reason: Option<String>,
}

fn find_triple(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<[usize; 3]> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First pentagon sublattice, searched over triples `(a, c, b)` with `c < b`,
/// `a` incomparable to both, `a ^ c = a ^ b` and `a v c = a v b`. Those five
/// elements are then closed under meet and join.
pub fn find_pentagon(l: &Lattice) -> Option<Pentagon> {
    let n = l.len();
    let p = l.poset();
    for a in 0..n {
        for c in 0..n {
            if p.comparable(a, c) {
                continue;
            }
            for b in 0..n {
                if b == c || !p.leq(c, b) || p.comparable(a, b) {
                    continue;
                }
                if l.meet(a, c) == l.meet(a, b) && l.join(a, c) == l.join(a, b) {
                    return Some([l.meet(a, b), a, c, b, l.join(a, b)]);
                }
            }
        }
    }
    None
}

/// First diamond sublattice: three pairwise incomparable elements sharing all
/// pairwise meets and joins.
pub fn find_diamond(l: &Lattice) -> Option<Diamond> {
    let n = l.len();
    let p = l.poset();
    for x in 0..n {
        for y in x + 1..n {
            if p.comparable(x, y) {
                continue;
            }
            let (m, j) = (l.meet(x, y), l.join(x, y));
            for z in y + 1..n {
                if !p.comparable(x, z)
                    && !p.comparable(y, z)
                    && l.meet(x, z) == m
                    && l.meet(y, z) == m
                    && l.join(x, z) == j
                    && l.join(y, z) == j
                {
                    return Some([m, x, y, z, j]);
                }
            }
        }
    }
    None
}

/// Degree inequality `r(a) + r(b) >= r(a v b) + r(a ^ b)` for all pairs.
pub fn is_upper_semimodular(l: &Lattice) -> SemimodularVerdict {
    let Some(deg) = l.degree() else {
        return SemimodularVerdict {
            holds: false,
            reason: Some("not graded".into()),
        };
    };
    let n = l.len();
    for a in 0..n {
        for b in a + 1..n {
            if deg[a] + deg[b] < deg[l.join(a, b)] + deg[l.meet(a, b)] {
                return SemimodularVerdict {
                    holds: false,
                    reason: Some(format!(
                        "degree inequality fails for `{}` and `{}`",
                        l.name(a),
                        l.name(b)
                    )),
                };
            }
        }
    }
    SemimodularVerdict {
        holds: true,
        reason: None,
    }
}

pub fn is_modular(l: &Lattice) -> ModularityReport {
    let identity_violation = find_triple(l.len(), |a, b, c| {
        l.leq(b, c) && l.join(b, l.meet(a, c)) != l.meet(l.join(b, a), c)
    });
    let semimodular_both_ways = is_upper_semimodular(l).holds && is_upper_semimodular(&l.dual()).holds;
    ModularityReport {
        identity_violation,
        semimodular_both_ways,
        pentagon: find_pentagon(l),
    }
}

/// Nonzero join irreducibles with the induced order.
pub(crate) fn join_irreducible_poset(l: &Lattice) -> Poset {
    l.poset().induced(&l.nonzero_join_irreducibles())
}

pub fn is_distributive(l: &Lattice) -> DistributivityReport {
    let n = l.len();
    let identity_violation = find_triple(n, |a, b, c| {
        l.join(b, l.meet(a, c)) != l.meet(l.join(b, a), l.join(b, c))
    });
    let dual_identity_violation = find_triple(n, |a, b, c| {
        l.meet(b, l.join(a, c)) != l.join(l.meet(b, a), l.meet(b, c))
    });
    // Every element is the join of the irreducibles below it, so the lattice
    // injects into the down-sets of its irreducibles; capping the count just
    // above `n` keeps this cheap.
    let limits = Limits {
        max_ideals: n + 1,
        ..Limits::default()
    };
    let irreducible_ideal_count = match join_irreducible_poset(l).count_order_ideals(&limits) {
        Ok(c) => c,
        Err(_) => n as u64 + 1,
    };
    DistributivityReport {
        identity_violation,
        dual_identity_violation,
        pentagon: find_pentagon(l),
        diamond: find_diamond(l),
        irreducible_ideal_count,
        size: n,
    }
}

/// Partition of the cover edges into perspectivity classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalClassPartition {
    /// Cover edges `(lower, upper)` in sorted order.
    pub edges: Vec<(usize, usize)>,
    /// `class_of[i]` is the class of `edges[i]`.
    pub class_of: Vec<usize>,
    /// Edge indices per class; class ids are ordered by their smallest edge.
    pub classes: Vec<Vec<usize>>,
}

impl IntervalClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn edge_index(&self, lower: usize, upper: usize) -> Option<usize> {
        self.edges.binary_search(&(lower, upper)).ok()
    }

    pub fn class_of_edge(&self, lower: usize, upper: usize) -> Option<usize> {
        self.edge_index(lower, upper).map(|i| self.class_of[i])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Merges `[a ^ b, b]` with `[a, a v b]` whenever both are cover edges.
/// Fails with `NotModular` unless `allow_nonmodular` is set.
pub fn interval_classes(l: &Lattice, allow_nonmodular: bool) -> Result<IntervalClassPartition> {
    if !is_modular(l).holds() {
        if !allow_nonmodular {
            return Err(Error::NotModular);
        }
        log::warn!("interval classes of a non-modular lattice are not well behaved");
    }
    let edges: Vec<(usize, usize)> = l.poset().covers().to_vec();
    let index = |a: usize, b: usize| edges.binary_search(&(a, b)).ok();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            if let (Some(e), Some(f)) = (index(m, b), index(a, j)) {
                let (re, rf) = (find(&mut parent, e), find(&mut parent, f));
                if re != rf {
                    parent[re.max(rf)] = re.min(rf);
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; edges.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; edges.len()];
    for (e, class) in class_of.iter_mut().enumerate() {
        let r = find(&mut parent, e);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        *class = root_class[r];
        classes[root_class[r]].push(e);
    }
    Ok(IntervalClassPartition {
        edges,
        class_of,
        classes,
    })
}

/// Counts, per interval class, the cover edges along a maximal chain.
pub fn chain_multiplicities(
    l: &Lattice,
    classes: &IntervalClassPartition,
    chain: &[usize],
) -> Result<Vec<usize>> {
    let names = || chain.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join(" < ");
    if chain.first() != Some(&l.bottom()) || chain.last() != Some(&l.top()) {
        return Err(Error::NotMaximalChain(format!("{} does not run from bottom to top", names())));
    }
    let mut counts = vec![0; classes.len()];
    for w in chain.windows(2) {
        match classes.class_of_edge(w[0], w[1]) {
            Some(c) => counts[c] += 1,
            None => {
                return Err(Error::NotMaximalChain(format!(
                    "{}: `{}` is not covered by `{}`",
                    names(),
                    l.name(w[0]),
                    l.name(w[1])
                )))
            }
        }
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanHolder {
    /// Every maximal chain has the same class multiplicities.
    Consistent {
        multiplicities: Vec<usize>,
        chain_count: u128,
    },
    /// Two maximal chains whose multiplicity vectors differ.
    Inconsistent {
        first: Vec<usize>,
        first_multiplicities: Vec<usize>,
        second: Vec<usize>,
        second_multiplicities: Vec<usize>,
    },
}

impl JordanHolder {
    pub fn holds(&self) -> bool {
        matches!(self, JordanHolder::Consistent { .. })
    }
}

/// Compares class multiplicity vectors over all maximal chains.
///
/// Chains are not enumerated: for every element the set of distinct vectors
/// of chains from it to the top is built bottom-up, so the cost depends on
/// the number of distinct vectors rather than the number of chains.
pub fn verify_jordan_holder(l: &Lattice, allow_nonmodular: bool) -> Result<JordanHolder> {
    let classes = interval_classes(l, allow_nonmodular)?;
    let p = l.poset();
    let k = classes.len();
    let n = l.len();
    let mut vectors: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); n];
    let mut counts = vec![0u128; n];
    for &x in p.topological_order().iter().rev() {
        if x == l.top() {
            vectors[x].insert(vec![0; k]);
            counts[x] = 1;
            continue;
        }
        let mut set = BTreeSet::new();
        for &u in p.upper_covers(x) {
            let c = classes.class_of_edge(x, u).expect("cover edge");
            for v in &vectors[u] {
                let mut v = v.clone();
                v[c] += 1;
                set.insert(v);
            }
            counts[x] = counts[x].saturating_add(counts[u]);
        }
        vectors[x] = set;
    }
    let at_bottom: Vec<&Vec<usize>> = vectors[l.bottom()].iter().collect();
    if at_bottom.len() == 1 {
        return Ok(JordanHolder::Consistent {
            multiplicities: at_bottom[0].clone(),
            chain_count: counts[l.bottom()],
        });
    }
    let trace = |target: &Vec<usize>| {
        let mut chain = vec![l.bottom()];
        let mut x = l.bottom();
        let mut rest = target.clone();
        while x != l.top() {
            let (u, c) = p
                .upper_covers(x)
                .iter()
                .map(|&u| (u, classes.class_of_edge(x, u).expect("cover edge")))
                .find(|&(u, c)| {
                    rest[c] > 0 && {
                        let mut r = rest.clone();
                        r[c] -= 1;
                        vectors[u].contains(&r)
                    }
                })
                .expect("vector is realised by some chain");
            rest[c] -= 1;
            chain.push(u);
            x = u;
        }
        chain
    };
    let (a, b) = (at_bottom[0].clone(), at_bottom[at_bottom.len() - 1].clone());
    Ok(JordanHolder::Inconsistent {
        first: trace(&a),
        first_multiplicities: a,
        second: trace(&b),
        second_multiplicities: b,
    })
}

/// Explicit-enumeration variant of [`verify_jordan_holder`], bounded by
/// `limits.max_chains`.
pub fn verify_jordan_holder_enumerated(
    l: &Lattice,
    allow_nonmodular: bool,
    limits: &Limits,
) -> Result<JordanHolder> {
    let classes = interval_classes(l, allow_nonmodular)?;
    let chains = l.maximal_chains(limits)?;
    let first = chains[0].clone();
    let first_multiplicities = chain_multiplicities(l, &classes, &first)?;
    for c in &chains[1..] {
        let m = chain_multiplicities(l, &classes, c)?;
        if m != first_multiplicities {
            return Ok(JordanHolder::Inconsistent {
                first,
                first_multiplicities,
                second: c.clone(),
                second_multiplicities: m,
            });
        }
    }
    Ok(JordanHolder::Consistent {
        multiplicities: first_multiplicities,
        chain_count: chains.len() as u128,
    })
}

pub fn is_multiplicity_free(l: &Lattice) -> Result<bool> {
    Ok(match verify_jordan_holder(l, false)? {
        JordanHolder::Consistent { multiplicities, .. } => multiplicities.iter().all(|&m| m == 1),
        JordanHolder::Inconsistent { .. } => false,
    })
}

/// Convenience: is the lattice graded?
pub fn is_graded(l: &Lattice) -> bool {
    matches!(l.grade(), Grading::Graded { .. })
}
