//! Shared helpers for the integration tests: brute-force oracles that do not
//! reuse the library's algorithms, plus fixture collections.

#![allow(dead_code)]

use hasse_core::fixtures;
use hasse_core::freedist::{generate_lattice, MonotoneElement};
use hasse_core::{
    reconstruct, Lattice, Limits, Poset, ReconstructionOptions, ReconstructionSpec,
};
use rand::RngExt;

/// Order relation by closing the cover pairs with Floyd–Warshall.
pub fn closure_oracle(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in covers {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    leq
}

/// Least upper bound by scanning all elements, if it exists.
pub fn brute_join(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let ub: Vec<usize> = (0..p.len()).filter(|&c| p.leq(a, c) && p.leq(b, c)).collect();
    ub.iter().copied().find(|&c| ub.iter().all(|&d| p.leq(c, d)))
}

pub fn brute_meet(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let lb: Vec<usize> = (0..p.len()).filter(|&c| p.leq(c, a) && p.leq(c, b)).collect();
    lb.iter().copied().find(|&c| lb.iter().all(|&d| p.leq(d, c)))
}

/// Number of down-sets by checking every subset (small posets only).
pub fn brute_ideal_count(p: &Poset) -> u64 {
    let n = p.len();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|x| s >> x & 1 == 0 || p.lower_covers(x).iter().all(|&y| s >> y & 1 == 1))
        })
        .count() as u64
}

/// Counts monotone Boolean functions on `n` variables by testing all `2^(2^n)`
/// truth tables.
pub fn brute_monotone_count(n: usize) -> u64 {
    assert!(n <= 4);
    let points = 1u32 << n;
    let mut count = 0;
    for f in 0u64..1 << points {
        let monotone = (0..points).all(|x| {
            f >> x & 1 == 0 || (0..n).all(|i| f >> (x | 1 << i) & 1 == 1)
        });
        if monotone {
            count += 1;
        }
    }
    count
}

/// All maximal chains by explicit DFS over covers.
pub fn brute_chains(l: &Lattice) -> Vec<Vec<usize>> {
    fn go(l: &Lattice, x: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == l.top() {
            out.push(cur.clone());
            return;
        }
        for &u in l.poset().upper_covers(x) {
            cur.push(u);
            go(l, u, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(l, l.bottom(), &mut vec![l.bottom()], &mut out);
    out
}

/// A lattice of subsets of `[ground]` closed under intersection, with the
/// full set added as top. Every finite lattice arises this way.
pub fn random_closure_lattice<R: RngExt>(rng: &mut R, ground: usize, max_size: usize) -> Option<Lattice> {
    let full = (1u32 << ground) - 1;
    let k = rng.random_range(2..=ground + 3);
    let mut family: Vec<u32> = vec![full];
    for _ in 0..k {
        let s = rng.random_range(0..=full);
        if !family.contains(&s) {
            family.push(s);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = family.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                if !family.contains(&(a & b)) {
                    family.push(a & b);
                    grew = true;
                }
            }
        }
        if family.len() > max_size {
            return None;
        }
        if !grew {
            break;
        }
    }
    family.sort_by_key(|s| (s.count_ones(), *s));
    let names: Vec<String> = family.iter().map(|&s| fixtures::subset_name(s as usize)).collect();
    let mut pairs = Vec::new();
    for (i, &a) in family.iter().enumerate() {
        for (j, &b) in family.iter().enumerate() {
            if i != j && a & b == a {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let (poset, _) = Poset::build(&names, &pairs).expect("inclusion is a partial order");
    Some(Lattice::from_poset(poset).expect("intersection-closed family with top is a lattice"))
}

pub fn case4() -> Lattice {
    Lattice::from_covers(
        &["0", "x", "y", "m", "1"],
        &[("0", "x"), ("0", "y"), ("x", "m"), ("y", "m"), ("m", "1")],
    )
    .unwrap()
}

/// The five length-3 distributive lattices, built directly from their diagrams.
pub fn hag_cases() -> Vec<(&'static str, Lattice)> {
    vec![
        ("case 1: [3]", fixtures::chain(4)),
        ("case 2: D12", fixtures::divisor_lattice_12()),
        ("case 3: B", fixtures::boolean_lattice(3)),
        ("case 4", case4()),
        ("case 5", case4().dual()),
    ]
}

pub fn reconstruct_case(spec: &ReconstructionSpec, with_bounds: bool) -> hasse_core::Reconstruction {
    reconstruct(
        spec,
        ReconstructionOptions {
            infer: false,
            with_bounds,
        },
        &Limits::default(),
    )
    .expect("fixture reconstructs")
}

/// Every distributive fixture lattice, by name.
pub fn distributive_fixtures() -> Vec<(String, Lattice)> {
    let limits = Limits::default();
    let mut out: Vec<(String, Lattice)> = (1..=4)
        .map(|n| (format!("B_{n}"), fixtures::boolean_lattice(n)))
        .collect();
    out.push(("D12".into(), fixtures::divisor_lattice_12()));
    for (name, l) in hag_cases() {
        out.push((name.into(), l));
    }
    for n in 2..=3 {
        out.push((format!("extended Λ_{n}"), generate_lattice(n, true, &limits).unwrap().lattice));
        out.push((format!("restricted Λ_{n}"), generate_lattice(n, false, &limits).unwrap().lattice));
    }
    out.push((
        "case n=1".into(),
        reconstruct_case(&fixtures::case_n1_spec(), false).lattice.into_lattice(),
    ));
    out.push((
        "case n=2".into(),
        reconstruct_case(&fixtures::case_n2_spec(), false).lattice.into_lattice(),
    ));
    out
}

/// Every fixture lattice, distributive or not.
pub fn all_fixtures() -> Vec<(String, Lattice)> {
    let mut out = distributive_fixtures();
    out.push(("N5".into(), fixtures::pentagon()));
    out.push(("M3".into(), fixtures::diamond()));
    out.push(("chain 5".into(), fixtures::chain(5)));
    out
}

/// Evaluates a clause set at an assignment with a plain loop.
pub fn truth(e: &MonotoneElement, x: u32) -> bool {
    e.clauses().iter().any(|&c| (0..e.arity()).all(|i| c >> i & 1 == 0 || x >> i & 1 == 1))
}
