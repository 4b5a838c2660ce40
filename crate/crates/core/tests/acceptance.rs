//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hasse_core::birkhoff::evaluate_named;
use hasse_core::freedist::{generate_lattice, MonotoneElement};
use hasse_core::{
    birkhoff_roundtrip, check_self_dual, dedekind_count, fixtures, find_isomorphism, ideals_lattice,
    irreducible_poset, is_distributive, is_modular, meets_distinct, verify_jordan_holder, JordanHolder,
    Lattice, Limits,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iso(a: &Lattice, b: &Lattice) -> bool {
    find_isomorphism(a.poset(), b.poset(), &Limits::default())
        .map(|m| m.is_some())
        .unwrap_or(false)
}

fn dedekind() -> Check {
    let expected = [2u64, 3, 6, 20, 168, 7581, 7828354];
    let start = Instant::now();
    for (k, &want) in expected.iter().enumerate().take(6) {
        let got = dedekind_count(k).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("M({k}) = {got}, expected {want}"))?;
        if k <= 4 {
            let oracle = common::brute_monotone_count(k);
            ensure(got == oracle, || format!("M({k}) = {got} but brute force gives {oracle}"))?;
        }
    }
    let small = start.elapsed();
    ensure(small < Duration::from_secs(5), || format!("K <= 5 took {small:?}"))?;
    let start = Instant::now();
    let six = dedekind_count(6).map_err(|e| e.to_string())?;
    let big = start.elapsed();
    ensure(six == expected[6], || format!("M(6) = {six}"))?;
    ensure(big < Duration::from_secs(300), || format!("K = 6 took {big:?}"))?;
    Ok(format!("M(0..6) = {expected:?}; K<=5 in {small:.2?}, K=6 in {big:.2?}"))
}

fn roundtrip() -> Check {
    let start = Instant::now();
    let fixtures = common::distributive_fixtures();
    for (name, l) in &fixtures {
        let r = birkhoff_roundtrip(l, &Limits::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.lattice_map.is_some(), || format!("{name}: J(irr(L)) not isomorphic to L"))?;
        ensure(r.poset_map.is_some(), || format!("{name}: irr(J(P)) not isomorphic to P"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{} lattices round-trip in {t:.2?}", fixtures.len()))
}

fn case_n2() -> Check {
    let limits = Limits::default();
    let spec = fixtures::case_n2_spec();
    let plain = common::reconstruct_case(&spec, false);
    let l = plain.lattice.lattice();
    ensure(l.len() == 18, || format!("{} elements, expected 18", l.len()))?;
    let restricted = generate_lattice(3, false, &limits).unwrap().lattice;
    ensure(iso(l, &restricted), || "not isomorphic to restricted Λ3".into())?;
    let bounded = common::reconstruct_case(&spec, true);
    let lb = bounded.lattice.lattice();
    ensure(lb.len() == 20, || format!("{} elements with bounds, expected 20", lb.len()))?;
    let extended = generate_lattice(3, true, &limits).unwrap().lattice;
    ensure(iso(lb, &extended), || "bounded lattice not isomorphic to extended Λ3".into())?;
    let irr = irreducible_poset(lb).map_err(|e| e.to_string())?;
    let boolean = fixtures::boolean_poset(3);
    let m = find_isomorphism(&irr, &boolean, &limits).map_err(|e| e.to_string())?;
    ensure(m.is_some(), || "join-irreducible poset is not B_3".into())?;
    Ok("18 elements ≅ restricted Λ3; 20 with bounds ≅ extended Λ3; J(L) ≅ B_3".into())
}

/// The composition factors block for the first case, with the top `N` added.
const FACTOR_SETS: [(&str, &str); 17] = [
    ("G", "d+g"),
    ("E", "d+f"),
    ("D", "b+f"),
    ("F", "f+g"),
    ("B", "c+d+g"),
    ("S", "d+f+g"),
    ("C", "b+d+f"),
    ("D+F", "b+f+g"),
    ("A", "e+f+g"),
    ("B+S", "c+d+f+g"),
    ("C+S", "b+d+f+g"),
    ("A+D", "b+e+f+g"),
    ("A+S", "d+e+f+g"),
    ("B+C", "b+d+c+f+g"),
    ("A+C", "b+d+e+f+g"),
    ("A+B", "c+d+e+f+g"),
    ("N", "b+c+d+e+f+g"),
];

fn case_n1() -> Check {
    let limits = Limits::default();
    let spec = fixtures::case_n1_spec();
    let r = common::reconstruct_case(&spec, false);
    let ll = &r.lattice;
    let l = ll.lattice();
    ensure(l.len() == 21, || format!("{} elements, expected 21", l.len()))?;
    let bounded = common::reconstruct_case(&spec, true);
    ensure(bounded.lattice.lattice().len() == 23, || {
        format!("{} elements with bounds, expected 23", bounded.lattice.lattice().len())
    })?;
    let rank = l.rank(&limits).map_err(|e| e.to_string())?;
    let witness: Vec<&str> = rank.generators.iter().map(|&x| l.name(x)).collect();
    ensure(rank.rank == 4, || format!("rank {} (witness {witness:?})", rank.rank))?;
    let s = r.resolve("S").map_err(|e| e.to_string())?;
    let b3 = fixtures::boolean_lattice(3);
    let lower = ll.interval(l.bottom(), s).map_err(|e| e.to_string())?;
    let upper = ll.interval(s, l.top()).map_err(|e| e.to_string())?;
    ensure(iso(lower.lattice(), &b3), || "[0,S] is not the box".into())?;
    ensure(iso(upper.lattice(), &b3), || "[S,1] is not the box".into())?;
    for (name, want) in FACTOR_SETS {
        let mut want: Vec<&str> = want.split('+').collect();
        want.sort();
        let got = r.factors_of(name).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{name} has factors {got:?}, expected {want:?}"))?;
    }
    Ok(format!(
        "21 elements, 23 with bounds, rank 4 via {{{}}}, [0,S] ≅ [S,1] ≅ B, 17 factor sets match",
        witness.join(", ")
    ))
}

fn check_lattice(name: &str, l: &Lattice) -> Result<(), String> {
    let m = is_modular(l);
    ensure(m.consistent(), || format!("{name}: modularity criteria disagree: {m:?}"))?;
    let d = is_distributive(l);
    ensure(d.consistent(), || format!("{name}: distributivity criteria disagree: {d:?}"))?;
    ensure(!d.holds() || m.holds(), || format!("{name}: distributive but not modular"))?;
    Ok(())
}

fn forbidden_sublattices() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut generated = 0;
    let (mut modular, mut distributive) = (0, 0);
    while generated < 500 {
        let ground = 3 + generated % 3;
        let Some(l) = common::random_closure_lattice(&mut rng, ground, 12) else {
            continue;
        };
        check_lattice(&format!("random #{generated}"), &l)?;
        modular += usize::from(is_modular(&l).holds());
        distributive += usize::from(is_distributive(&l).holds());
        generated += 1;
    }
    let fixtures = common::all_fixtures();
    for (name, l) in &fixtures {
        check_lattice(name, l)?;
    }
    Ok(format!(
        "500 random lattices ({modular} modular, {distributive} distributive) and {} fixtures agree",
        fixtures.len()
    ))
}

fn jordan_holder() -> Check {
    let mut count = 0;
    for (name, l) in common::all_fixtures() {
        if !is_modular(&l).holds() {
            continue;
        }
        match verify_jordan_holder(&l, false).map_err(|e| format!("{name}: {e}"))? {
            JordanHolder::Consistent { .. } => count += 1,
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    let n5 = fixtures::pentagon();
    match verify_jordan_holder(&n5, true).map_err(|e| e.to_string())? {
        JordanHolder::Inconsistent {
            first,
            first_multiplicities,
            second,
            second_multiplicities,
        } => {
            ensure(first_multiplicities != second_multiplicities, || "vectors equal".into())?;
            let names = |c: &[usize]| c.iter().map(|&x| n5.name(x)).collect::<Vec<_>>().join("<");
            Ok(format!(
                "{count} modular fixtures pass; N5: {} {:?} vs {} {:?}",
                names(&first),
                first_multiplicities,
                names(&second),
                second_multiplicities
            ))
        }
        other => Err(format!("N5 unexpectedly consistent: {other:?}")),
    }
}

fn free_lattice_laws() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let free = generate_lattice(3, false, &limits).map_err(|e| e.to_string())?;
    let els = &free.elements;
    ensure(els.len() == 18, || format!("{} elements", els.len()))?;
    for a in els {
        for b in els {
            let j = a.join(b).unwrap();
            let m = a.meet(b).unwrap();
            ensure(a.meet(&j).unwrap() == *a && a.join(&m).unwrap() == *a, || format!("absorption fails for {a}, {b}"))?;
            for c in els {
                let lhs = a.meet(&b.join(c).unwrap()).unwrap();
                let rhs = a.meet(b).unwrap().join(&a.meet(c).unwrap()).unwrap();
                ensure(lhs == rhs, || format!("meet over join fails for {a}, {b}, {c}"))?;
                let lhs = a.join(&b.meet(c).unwrap()).unwrap();
                let rhs = a.join(b).unwrap().meet(&a.join(c).unwrap()).unwrap();
                ensure(lhs == rhs, || format!("join over meet fails for {a}, {b}, {c}"))?;
            }
        }
    }
    let sd = check_self_dual(3, &limits).map_err(|e| e.to_string())?;
    ensure(sd.holds(), || "Λ3 is not self-dual".into())?;
    let meets = meets_distinct(3, &limits).map_err(|e| e.to_string())?;
    ensure(meets.pairwise_distinct, || "meets of generators collide".into())?;
    ensure(meets.irreducibles_are_meets, || "join irreducibles are not the meets".into())?;
    let b = fixtures::boolean_lattice(3);
    let gens = ["{1}", "{2}", "{3}"];
    let mut image = vec![false; b.len()];
    for e in els {
        image[evaluate_named(e, &b, &gens).map_err(|e| e.to_string())?] = true;
    }
    ensure(image.iter().all(|&x| x), || "evaluation Λ3 -> B is not surjective".into())?;
    let collide: Vec<usize> = [0b011u32, 0b101, 0b110]
        .iter()
        .map(|&s| evaluate_named(&MonotoneElement::meet_of(3, s), &b, &gens).unwrap())
        .collect();
    ensure(collide.iter().all(|&x| x == b.bottom()), || "pairwise meets do not collide in B".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("laws, self-duality, 7 distinct irreducible meets, Λ3 -> B onto all 8 elements ({t:.2?})"))
}

fn length_three() -> Check {
    let limits = Limits::default();
    let mut built = Vec::new();
    for (name, p) in fixtures::three_element_posets() {
        let j = ideals_lattice(&p, &limits).map_err(|e| e.to_string())?.into_lattice();
        ensure(is_distributive(&j).holds(), || format!("J({name}) not distributive"))?;
        ensure(j.degree().map(|d| d[j.top()]) == Some(3), || format!("J({name}) does not have length 3"))?;
        built.push((name, j));
    }
    for i in 0..built.len() {
        for k in i + 1..built.len() {
            ensure(!iso(&built[i].1, &built[k].1), || format!("{} ≅ {}", built[i].0, built[k].0))?;
        }
    }
    let cases = common::hag_cases();
    for (case, l) in &cases {
        let hits = built.iter().filter(|(_, j)| iso(j, l)).count();
        ensure(hits == 1, || format!("{case} matched {hits} constructed lattices"))?;
    }
    ensure(iso(&cases[4].1, &cases[3].1.dual()), || "case 5 is not dual to case 4".into())?;
    let four = &built.iter().find(|(_, j)| iso(j, &cases[3].1)).unwrap().1;
    let five = &built.iter().find(|(_, j)| iso(j, &cases[4].1)).unwrap().1;
    ensure(iso(five, &four.dual()), || "J(one-below-two) is not dual to J(two-below-one)".into())?;
    Ok("5 pairwise non-isomorphic length-3 lattices, one per case; case 5 ≅ dual(case 4)".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 Dedekind counts", dedekind),
        ("2 Birkhoff round-trip", roundtrip),
        ("3 generic reconstruction", case_n2),
        ("4 first reconstruction", case_n1),
        ("5 forbidden-sublattice equivalence", forbidden_sublattices),
        ("6 modular Jordan-Hölder", jordan_holder),
        ("7 free-lattice laws", free_lattice_laws),
        ("8 length-3 classification", length_three),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{t:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} [{t:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
