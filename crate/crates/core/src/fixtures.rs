//! Small named posets and lattices used throughout the tests, benches and CLI.

use crate::lattice::Lattice;
use crate::poset::Poset;
use crate::reconstruct::ReconstructionSpec;

const CASE_N1: &str = include_str!("../fixtures/case_n1.json");
const CASE_N2: &str = include_str!("../fixtures/case_n2.json");

fn lattice(elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
    Lattice::from_covers(elements, covers).expect("fixture is a lattice")
}

/// N5: `0 < a < 1` and `0 < c < b < 1`.
pub fn pentagon() -> Lattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "1"), ("0", "c"), ("c", "b"), ("b", "1")],
    )
}

/// M3: three atoms that are also coatoms.
pub fn diamond() -> Lattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

pub fn chain_poset(n: usize) -> Poset {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Poset::from_covers(&names, &covers).expect("chain")
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Lattice {
    Lattice::from_poset(chain_poset(n)).expect("chain is a lattice")
}

pub fn antichain(n: usize) -> Poset {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Poset::from_covers::<String>(&names, &[]).expect("antichain")
}

/// Name of a subset of `[n]` given as a bit mask: `∅`, `{1}`, `{1,3}`, ...
pub fn subset_name(mask: usize) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let items: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Subsets of `[n]` ordered by inclusion; element `i` is the subset with mask `i`.
pub fn boolean_poset(n: usize) -> Poset {
    let names: Vec<String> = (0..1usize << n).map(subset_name).collect();
    let mut covers = Vec::new();
    for s in 0..1usize << n {
        for i in 0..n {
            if s >> i & 1 == 0 {
                covers.push((names[s].clone(), names[s | 1 << i].clone()));
            }
        }
    }
    Poset::from_covers(&names, &covers).expect("boolean poset")
}

pub fn boolean_lattice(n: usize) -> Lattice {
    Lattice::from_poset(boolean_poset(n)).expect("boolean lattice")
}

/// Divisors of 12 under divisibility.
pub fn divisor_lattice_12() -> Lattice {
    lattice(
        &["1", "2", "3", "4", "6", "12"],
        &[("1", "2"), ("1", "3"), ("2", "4"), ("2", "6"), ("3", "6"), ("4", "12"), ("6", "12")],
    )
}

/// The five 3-element posets up to isomorphism, with short descriptive names.
pub fn three_element_posets() -> Vec<(&'static str, Poset)> {
    let p = |covers: &[(&str, &str)]| Poset::from_covers(&["x", "y", "z"], covers).expect("3-poset");
    vec![
        ("chain", p(&[("x", "y"), ("y", "z")])),
        ("chain-plus-point", p(&[("x", "y")])),
        ("antichain", p(&[])),
        ("two-below-one", p(&[("x", "z"), ("y", "z")])),
        ("one-below-two", p(&[("x", "y"), ("x", "z")])),
    ]
}

/// Spec of the first reconstruction case (the non-generic `n = 1` module).
pub fn case_n1_spec() -> ReconstructionSpec {
    serde_json::from_str(CASE_N1).expect("case_n1.json parses")
}

/// Spec of the generic reconstruction case (`n >= 2`).
pub fn case_n2_spec() -> ReconstructionSpec {
    serde_json::from_str(CASE_N2).expect("case_n2.json parses")
}

pub fn case_n1_json() -> &'static str {
    CASE_N1
}

pub fn case_n2_json() -> &'static str {
    CASE_N2
}
