//! The free distributive lattice on `n` generators, with elements stored as
//! antichains of clause masks (a join of meets of generators).

mod parse;

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::lattice::Lattice;
use crate::limits::Limits;
use crate::poset::Poset;

pub use parse::parse_dnf;

/// Largest arity accepted by clause masks.
pub const MAX_ARITY: usize = 32;
/// Largest arity with a `u64` truth table.
pub const MAX_TABLE_ARITY: usize = 6;

/// An element of the (extended) free distributive lattice on `arity`
/// generators. Bit `i` of a clause is generator `P_{i+1}`.
///
/// No clauses is the adjoined bottom; the single empty clause is the adjoined
/// top. Every other value has nonempty, pairwise incomparable clauses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneElement {
    arity: usize,
    clauses: Vec<u32>,
}

fn prune(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u32> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

impl MonotoneElement {
    pub fn from_clauses(arity: usize, clauses: impl IntoIterator<Item = u32>) -> Result<MonotoneElement> {
        if arity > MAX_ARITY {
            return Err(Error::size("arity", MAX_ARITY));
        }
        let full = full_mask(arity);
        let clauses: Vec<u32> = clauses.into_iter().collect();
        if let Some(bad) = clauses.iter().find(|&&c| c & !full != 0) {
            return Err(Error::Invalid(format!("clause mask {bad:#b} exceeds arity {arity}")));
        }
        Ok(MonotoneElement {
            arity,
            clauses: prune(clauses),
        })
    }

    /// Generator `P_{index+1}`.
    pub fn variable(arity: usize, index: usize) -> MonotoneElement {
        assert!(index < arity && arity <= MAX_ARITY, "generator out of range");
        MonotoneElement {
            arity,
            clauses: vec![1 << index],
        }
    }

    /// The meet of the generators in `set`.
    pub fn meet_of(arity: usize, set: u32) -> MonotoneElement {
        MonotoneElement { arity, clauses: vec![set] }
    }

    pub fn bottom(arity: usize) -> MonotoneElement {
        MonotoneElement { arity, clauses: Vec::new() }
    }

    pub fn top(arity: usize) -> MonotoneElement {
        MonotoneElement { arity, clauses: vec![0] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Clause masks in increasing numeric order.
    pub fn clauses(&self) -> &[u32] {
        &self.clauses
    }

    pub fn is_bottom(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses == [0]
    }

    /// True for elements of the restricted lattice (neither adjoined bound).
    pub fn is_proper(&self) -> bool {
        !self.is_bottom() && !self.is_top()
    }

    fn check(&self, other: &MonotoneElement) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn join(&self, other: &MonotoneElement) -> Result<MonotoneElement> {
        self.check(other)?;
        let all = self.clauses.iter().chain(&other.clauses).copied().collect();
        Ok(MonotoneElement {
            arity: self.arity,
            clauses: prune(all),
        })
    }

    pub fn meet(&self, other: &MonotoneElement) -> Result<MonotoneElement> {
        self.check(other)?;
        let mut all = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for &a in &self.clauses {
            for &b in &other.clauses {
                all.push(a | b);
            }
        }
        Ok(MonotoneElement {
            arity: self.arity,
            clauses: prune(all),
        })
    }

    /// `self <= other`, i.e. `self ^ other == self`.
    pub fn leq(&self, other: &MonotoneElement) -> Result<bool> {
        self.check(other)?;
        // Every clause of self must contain some clause of other.
        Ok(self
            .clauses
            .iter()
            .all(|&a| other.clauses.iter().any(|&b| b & !a == 0)))
    }

    /// Evaluates the function at an assignment given as a mask of true generators.
    pub fn eval(&self, assignment: u32) -> bool {
        self.clauses.iter().any(|&c| c & !assignment == 0)
    }

    /// Bit `x` is set iff the function is true at assignment `x`.
    pub fn truth_table(&self) -> u64 {
        assert!(self.arity <= MAX_TABLE_ARITY, "truth tables need arity <= 6");
        let mut t = 0u64;
        for x in 0..1u32 << self.arity {
            if self.eval(x) {
                t |= 1 << x;
            }
        }
        t
    }

    /// The element with the given truth table, which must be monotone.
    pub fn from_truth_table(arity: usize, table: u64) -> Result<MonotoneElement> {
        if arity > MAX_TABLE_ARITY {
            return Err(Error::size("truth-table arity", MAX_TABLE_ARITY));
        }
        let points: Vec<u32> = (0..1u32 << arity).filter(|&x| table >> x & 1 == 1).collect();
        let e = MonotoneElement::from_clauses(arity, points)?;
        if e.truth_table() != table & table_mask(arity) {
            return Err(Error::Invalid("truth table is not monotone".into()));
        }
        Ok(e)
    }

    /// The De Morgan dual `x -> not f(not x)`: the meet over clauses of the
    /// join of their generators.
    pub fn dual(&self) -> MonotoneElement {
        let mut acc = MonotoneElement::top(self.arity);
        for &c in &self.clauses {
            let disjunction = MonotoneElement {
                arity: self.arity,
                clauses: (0..self.arity).filter(|i| c >> i & 1 == 1).map(|i| 1 << i).collect(),
            };
            acc = acc.meet(&disjunction).expect("same arity");
        }
        acc
    }

    /// Clauses as sorted lists of 1-based generator numbers, in lexicographic order.
    fn clause_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self
            .clauses
            .iter()
            .map(|&c| (0..self.arity).filter(|i| c >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
        lists.sort();
        lists
    }

    /// Parseable expression text such as `P1 & P2 | P1 & P3`. The adjoined
    /// bounds have no expression and render as `0` and `1`.
    pub fn to_expression(&self) -> String {
        if self.is_bottom() {
            return "0".into();
        }
        if self.is_top() {
            return "1".into();
        }
        self.clause_lists()
            .iter()
            .map(|c| c.iter().map(|i| format!("P{i}")).collect::<Vec<_>>().join(" & "))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// Clause-set notation: `{1,2}|{1,3}`; the adjoined bounds print as `0` and `1`.
impl fmt::Display for MonotoneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return f.write_str("0");
        }
        if self.is_top() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .clause_lists()
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

fn full_mask(arity: usize) -> u32 {
    if arity >= 32 {
        u32::MAX
    } else {
        (1u32 << arity) - 1
    }
}

fn table_mask(arity: usize) -> u64 {
    if arity >= MAX_TABLE_ARITY {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

pub fn fd_join(a: &MonotoneElement, b: &MonotoneElement) -> Result<MonotoneElement> {
    a.join(b)
}

pub fn fd_meet(a: &MonotoneElement, b: &MonotoneElement) -> Result<MonotoneElement> {
    a.meet(b)
}

/// Comparability masks over the subsets of `[n]`: bit `t` of `comparable[s]`
/// is set iff `s` and `t` are comparable under inclusion.
fn comparability(n: usize) -> Vec<u64> {
    let size = 1usize << n;
    (0..size)
        .map(|s| {
            let mut m = 0u64;
            for t in 0..size {
                if s & t == s || s & t == t {
                    m |= 1 << t;
                }
            }
            m
        })
        .collect()
}

fn candidates_mask(size: usize) -> u64 {
    if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

fn count_antichains(candidates: u64, comparable: &[u64]) -> u64 {
    let mut total = 1;
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += count_antichains(rest & !comparable[v], comparable);
    }
    total
}

/// The number of antichains of subsets of `[n]`, which is the size of the
/// extended free distributive lattice on `n` generators.
pub fn dedekind_count(n: usize) -> Result<u64> {
    if n > MAX_TABLE_ARITY {
        return Err(Error::size("Dedekind arity", MAX_TABLE_ARITY));
    }
    let comparable = comparability(n);
    Ok(count_antichains(candidates_mask(1 << n), &comparable))
}

fn visit_antichains(candidates: u64, comparable: &[u64], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    out.push(current.clone());
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        current.push(v as u32);
        visit_antichains(rest & !comparable[v], comparable, current, out);
        current.pop();
    }
}

/// Every element of extended `Λ_n` (including both bounds), unordered.
pub fn all_elements(n: usize, limits: &Limits) -> Result<Vec<MonotoneElement>> {
    if n > limits.max_free_arity.min(MAX_TABLE_ARITY) {
        return Err(Error::size("free lattice arity", limits.max_free_arity.min(MAX_TABLE_ARITY)));
    }
    let comparable = comparability(n);
    let mut out = Vec::new();
    visit_antichains(candidates_mask(1 << n), &comparable, &mut Vec::new(), &mut out);
    Ok(out
        .into_iter()
        .map(|clauses| MonotoneElement::from_clauses(n, clauses).expect("antichain in range"))
        .collect())
}

/// A materialized free distributive lattice together with the element values.
#[derive(Clone, Debug)]
pub struct FreeLattice {
    pub lattice: Lattice,
    /// `elements[i]` is the value of lattice element `i`.
    pub elements: Vec<MonotoneElement>,
}

impl FreeLattice {
    pub fn index_of(&self, e: &MonotoneElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn arity(&self) -> usize {
        self.elements.first().map_or(0, MonotoneElement::arity)
    }

    /// Index of generator `P_{i+1}`.
    pub fn generator(&self, i: usize) -> usize {
        self.index_of(&MonotoneElement::variable(self.arity(), i))
            .expect("generator present")
    }
}

/// Multiplicative hash for truth-table keys; SipHash dominated table
/// construction.
#[derive(Default)]
struct TableHasher(u64);

impl Hasher for TableHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100_0000_01b3);
        }
    }

    fn write_u64(&mut self, x: u64) {
        let h = (x ^ (x >> 29)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 = h ^ (h >> 32);
    }
}

/// Builds `Λ_n` (or extended `Λ_n`) with elements ordered by the number of
/// true points of their truth table, then by the table itself.
pub fn generate_lattice(n: usize, extended: bool, limits: &Limits) -> Result<FreeLattice> {
    let mut elements: Vec<MonotoneElement> = all_elements(n, limits)?
        .into_iter()
        .filter(|e| extended || e.is_proper())
        .collect();
    if elements.len() > limits.max_lattice {
        return Err(Error::size("lattice size", limits.max_lattice));
    }
    if elements.is_empty() {
        return Err(Error::Invalid("restricted free lattice on 0 generators is empty".into()));
    }
    let tables: Vec<u64> = {
        elements.sort_by_cached_key(|e| {
            let t = e.truth_table();
            (t.count_ones(), t)
        });
        elements.iter().map(MonotoneElement::truth_table).collect()
    };
    let m = elements.len();
    let index: HashMap<u64, u16, BuildHasherDefault<TableHasher>> =
        tables.iter().enumerate().map(|(i, &t)| (t, i as u16)).collect();
    let mut meet = vec![0u16; m * m];
    let mut join = vec![0u16; m * m];
    for a in 0..m {
        for b in a..m {
            let lo = index[&(tables[a] & tables[b])];
            let hi = index[&(tables[a] | tables[b])];
            meet[a * m + b] = lo;
            meet[b * m + a] = lo;
            join[a * m + b] = hi;
            join[b * m + a] = hi;
        }
    }
    let down: Vec<FixedBitSet> = tables
        .iter()
        .map(|&ta| {
            let mut row = FixedBitSet::with_capacity(m);
            for (j, &tb) in tables.iter().enumerate() {
                if tb & !ta == 0 {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let names = elements.iter().map(|e| e.to_string()).collect();
    let poset = Poset::from_down_sets(names, down);
    Ok(FreeLattice {
        lattice: Lattice::from_tables(poset, meet, join),
        elements,
    })
}

/// Two witnesses that restricted `Λ_n` is self-dual.
#[derive(Clone, Debug)]
pub struct SelfDuality {
    pub free: FreeLattice,
    /// Isomorphism from the lattice onto its dual found by search.
    pub search_map: Option<Vec<usize>>,
    /// The De Morgan map `f -> f^d`, as indices.
    pub de_morgan_map: Vec<usize>,
    /// Whether the De Morgan map reverses order.
    pub de_morgan_reverses_order: bool,
}

impl SelfDuality {
    pub fn holds(&self) -> bool {
        self.search_map.is_some() && self.de_morgan_reverses_order
    }
}

pub fn check_self_dual(n: usize, limits: &Limits) -> Result<SelfDuality> {
    if n > 4 {
        return Err(Error::size("self-duality arity", 4));
    }
    let free = generate_lattice(n, false, limits)?;
    let l = &free.lattice;
    let search_map = find_isomorphism(l.poset(), &l.poset().dual(), limits)?;
    let de_morgan_map: Vec<usize> = free
        .elements
        .iter()
        .map(|e| free.index_of(&e.dual()).expect("dual stays in the restricted lattice"))
        .collect();
    let m = l.len();
    let de_morgan_reverses_order =
        (0..m).all(|a| (0..m).all(|b| l.leq(a, b) == l.leq(de_morgan_map[b], de_morgan_map[a])));
    Ok(SelfDuality {
        free,
        search_map,
        de_morgan_map,
        de_morgan_reverses_order,
    })
}

#[derive(Clone, Debug)]
pub struct MeetReport {
    /// The meets of generators over nonempty subsets, by subset mask.
    pub meets: Vec<MonotoneElement>,
    pub pairwise_distinct: bool,
    /// Join irreducibles of restricted `Λ_n`, counting its bottom.
    pub join_irreducibles: Vec<MonotoneElement>,
    /// Whether those join irreducibles are exactly the meets.
    pub irreducibles_are_meets: bool,
}

impl MeetReport {
    pub fn holds(&self) -> bool {
        self.pairwise_distinct && self.irreducibles_are_meets
    }
}

/// Checks that the `2^n - 1` meets of generators are distinct and are exactly
/// the join irreducibles of restricted `Λ_n` (its bottom is the meet of all
/// generators, so the bottom is counted here).
pub fn meets_distinct(n: usize, limits: &Limits) -> Result<MeetReport> {
    if n > 5 {
        return Err(Error::size("arity", 5));
    }
    let meets: Vec<MonotoneElement> = (1..1u32 << n).map(|s| MonotoneElement::meet_of(n, s)).collect();
    let mut sorted = meets.clone();
    sorted.sort();
    sorted.dedup();
    let pairwise_distinct = sorted.len() == meets.len();
    let free = generate_lattice(n, false, limits)?;
    let mut join_irreducibles: Vec<MonotoneElement> = free
        .lattice
        .join_irreducibles(true)
        .iter()
        .map(|j| free.elements[j.element].clone())
        .collect();
    join_irreducibles.sort();
    Ok(MeetReport {
        irreducibles_are_meets: join_irreducibles == sorted,
        meets,
        pairwise_distinct,
        join_irreducibles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, clauses: &[u32]) -> MonotoneElement {
        MonotoneElement::from_clauses(n, clauses.iter().copied()).unwrap()
    }

    #[test]
    fn absorption_and_distribution() {
        assert_eq!(el(2, &[0b01]).join(&el(2, &[0b11])).unwrap(), el(2, &[0b01]));
        assert_eq!(el(2, &[0b01]).meet(&el(2, &[0b10])).unwrap(), el(2, &[0b11]));
        let m = el(3, &[0b001, 0b010]).meet(&el(3, &[0b100])).unwrap();
        assert_eq!(m.to_string(), "{1,3}|{2,3}");
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            el(2, &[1]).join(&el(3, &[1])),
            Err(Error::ArityMismatch(2, 3))
        ));
    }

    #[test]
    fn bounds() {
        let b = MonotoneElement::bottom(2);
        let t = MonotoneElement::top(2);
        let x = MonotoneElement::variable(2, 1);
        assert_eq!(b.join(&x).unwrap(), x);
        assert_eq!(t.meet(&x).unwrap(), x);
        assert!(b.leq(&x).unwrap() && x.leq(&t).unwrap());
        assert_eq!((b.to_string(), t.to_string()), ("0".to_string(), "1".to_string()));
        assert_eq!(b.dual(), t);
        assert_eq!(t.dual(), b);
    }

    #[test]
    fn dual_is_de_morgan() {
        let e = el(3, &[0b011, 0b100]);
        let d = e.dual();
        for x in 0..8u32 {
            assert_eq!(d.eval(x), !e.eval(!x & 0b111));
        }
        assert_eq!(d.dual(), e);
    }

    #[test]
    fn truth_table_roundtrip() {
        let e = el(3, &[0b011, 0b101]);
        assert_eq!(MonotoneElement::from_truth_table(3, e.truth_table()).unwrap(), e);
        assert!(MonotoneElement::from_truth_table(1, 0b01).is_err());
    }

    #[test]
    fn small_dedekind_numbers() {
        let counts: Vec<u64> = (0..=4).map(|n| dedekind_count(n).unwrap()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168]);
        assert!(dedekind_count(7).is_err());
    }

    #[test]
    fn generated_sizes() {
        let l = Limits::default();
        assert_eq!(generate_lattice(1, true, &l).unwrap().lattice.len(), 3);
        assert_eq!(generate_lattice(3, true, &l).unwrap().lattice.len(), 20);
        assert_eq!(generate_lattice(3, false, &l).unwrap().lattice.len(), 18);
        let one = generate_lattice(1, true, &l).unwrap();
        let names: Vec<&str> = one.lattice.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["0", "{1}", "1"]);
    }

    #[test]
    fn generated_tables_satisfy_axioms() {
        let f = generate_lattice(3, true, &Limits::default()).unwrap();
        f.lattice.check_axioms().unwrap();
        assert_eq!(f.lattice.degree().unwrap()[f.lattice.top()], 8);
    }

    #[test]
    fn self_duality_small() {
        let l = Limits::default();
        let one = check_self_dual(1, &l).unwrap();
        assert!(one.holds());
        assert_eq!(one.search_map, Some(vec![0]));
        assert!(check_self_dual(2, &l).unwrap().holds());
    }

    #[test]
    fn meets_for_two() {
        let r = meets_distinct(2, &Limits::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.meets.len(), 3);
    }

    #[test]
    fn expression_rendering() {
        let e = el(3, &[0b011, 0b101]);
        assert_eq!(e.to_expression(), "P1 & P2 | P1 & P3");
        assert_eq!(parse_dnf(&e.to_expression(), Some(3)).unwrap(), e);
    }
}
