mod common;

use fixedbitset::FixedBitSet;
use hasse_core::{fixtures, find_isomorphism, Error, Lattice, Limits, Poset};
use proptest::prelude::*;

fn pentagon_poset() -> Poset {
    Poset::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "1"), ("0", "c"), ("c", "b"), ("b", "1")],
    )
    .unwrap()
}

#[test]
fn three_chain() {
    let p = Poset::from_covers(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
    assert!(p.leq(0, 2));
    assert!(!p.is_cover(0, 2));
    assert_eq!(p.down_set("a").unwrap(), ["0", "a"]);
    assert_eq!(p.count_order_ideals(&Limits::default()).unwrap(), 4);
}

#[test]
fn two_cycle_rejected() {
    let err = Poset::from_covers(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
    assert!(matches!(err, Error::CycleDetected(_)));
}

#[test]
fn unknown_and_duplicate_names() {
    assert!(matches!(
        Poset::from_covers(&["x"], &[("x", "z")]),
        Err(Error::UnknownElement(z)) if z == "z"
    ));
    assert!(matches!(Poset::from_covers::<&str>(&["x", "x"], &[]), Err(Error::DuplicateElement(_))));
}

#[test]
fn redundant_pairs_are_reported() {
    let (p, redundant) = Poset::build(&["0", "a", "1"], &[("0", "a"), ("a", "1"), ("0", "1")]).unwrap();
    assert_eq!(p.covers().len(), 2);
    assert_eq!(redundant, [("0".to_string(), "1".to_string())]);
}

#[test]
fn pentagon_down_set_matches_closure() {
    let p = pentagon_poset();
    assert_eq!(p.down_set("b").unwrap(), ["0", "b", "c"]);
    let leq = common::closure_oracle(p.len(), p.covers());
    for (x, row) in leq.iter().enumerate() {
        for (y, &below) in row.iter().enumerate() {
            assert_eq!(p.leq(x, y), below);
        }
    }
}

#[test]
fn boolean_down_set() {
    let p = fixtures::boolean_poset(3);
    let down = p.down_set("{1,2}").unwrap();
    assert_eq!(down, ["∅", "{1}", "{2}", "{1,2}"]);
}

#[test]
fn ideal_counts() {
    let limits = Limits::default();
    assert_eq!(fixtures::antichain(3).count_order_ideals(&limits).unwrap(), 8);
    assert_eq!(fixtures::boolean_poset(3).count_order_ideals(&limits).unwrap(), 20);
    assert_eq!(fixtures::chain_poset(3).order_ideals(&limits).unwrap().len(), 4);
}

#[test]
fn ideal_cap() {
    let limits = Limits {
        max_ideals: 10,
        ..Limits::default()
    };
    assert!(matches!(
        fixtures::antichain(4).order_ideals(&limits),
        Err(Error::SizeLimitExceeded { .. })
    ));
}

#[test]
fn duals() {
    let limits = Limits::default();
    let c = fixtures::chain_poset(3);
    assert!(find_isomorphism(&c.dual(), &c, &limits).unwrap().is_some());
    let p = pentagon_poset();
    assert!(p.is_isomorphic(&p.dual(), &limits).unwrap().is_some());
    let case4 = common::case4();
    let case5 = Lattice::from_covers(
        &["0", "m", "x", "y", "1"],
        &[("0", "m"), ("m", "x"), ("m", "y"), ("x", "1"), ("y", "1")],
    )
    .unwrap();
    assert!(find_isomorphism(case4.dual().poset(), case5.poset(), &limits).unwrap().is_some());
    assert!(find_isomorphism(case4.poset(), case5.poset(), &limits).unwrap().is_none());
}

#[test]
fn isomorphism_examples() {
    let limits = Limits::default();
    let d = fixtures::divisor_lattice_12().into_poset();
    let map = find_isomorphism(&d, &d, &limits).unwrap().unwrap();
    assert_eq!(map, (0..d.len()).collect::<Vec<_>>());
    let n5 = fixtures::pentagon().into_poset();
    let m3 = fixtures::diamond().into_poset();
    assert!(find_isomorphism(&n5, &m3, &limits).unwrap().is_none());
}

fn arb_poset() -> impl Strategy<Value = Poset> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((names[i].clone(), names[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::build(&names, &pairs).unwrap().0
        })
    })
}

proptest! {
    #[test]
    fn covers_are_reduction_of_closure(p in arb_poset()) {
        let leq = common::closure_oracle(p.len(), p.covers());
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.leq(x, y), leq[x][y]);
                let cover = x != y && leq[x][y]
                    && (0..p.len()).all(|z| z == x || z == y || !(leq[x][z] && leq[z][y]));
                prop_assert_eq!(p.is_cover(x, y), cover);
            }
        }
    }

    #[test]
    fn dual_is_an_involution(p in arb_poset()) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn ideal_count_matches_brute_force(p in arb_poset()) {
        let limits = Limits::default();
        let ideals = p.order_ideals(&limits).unwrap();
        prop_assert_eq!(ideals.len() as u64, common::brute_ideal_count(&p));
        prop_assert_eq!(p.count_order_ideals(&limits).unwrap(), ideals.len() as u64);
        for i in &ideals {
            prop_assert!(p.is_order_ideal(i));
        }
    }

    #[test]
    fn down_sets_are_ideals(p in arb_poset()) {
        for x in 0..p.len() {
            let mut set = FixedBitSet::with_capacity(p.len());
            for name in p.down_set(p.name(x)).unwrap() {
                set.insert(p.index_of(name).unwrap());
            }
            prop_assert!(set.contains(x));
            prop_assert!(p.is_order_ideal(&set));
        }
    }

    #[test]
    fn topological_order_respects_order(p in arb_poset()) {
        let order = p.topological_order();
        let mut pos = vec![0; p.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        for &(a, b) in p.covers() {
            prop_assert!(pos[a] < pos[b]);
        }
    }

    #[test]
    fn antichain_and_chain_counts(n in 0usize..10) {
        let limits = Limits::default();
        prop_assert_eq!(fixtures::antichain(n).count_order_ideals(&limits).unwrap(), 1u64 << n);
        prop_assert_eq!(fixtures::chain_poset(n).count_order_ideals(&limits).unwrap(), n as u64 + 1);
    }
}
