use std::fs;
use std::path::Path;

use hasse_core::freedist::{generate_lattice, FreeLattice};
use hasse_core::io::{self, labeled_lattice_to_json, poset_to_json, to_dot, write_trace};
use hasse_core::lattice::Grading;
use hasse_core::{
    birkhoff_roundtrip, dedekind_count, element_factors, find_isomorphism, ideals_lattice, irreducible_poset,
    is_distributive, is_modular, is_upper_semimodular, parse_dnf, reconstruct, stanley_construct,
    verify_jordan_holder, Error, JordanHolder, LabeledLattice, Lattice, Limits, Reconstruction,
    ReconstructionOptions, ReconstructionSpec, Result,
};

use crate::{BirkhoffAction, Command, FreedistAction, Property, Verdict};

pub(crate) fn run(command: Command, limits: &Limits) -> Result<Verdict> {
    match command {
        Command::Check {
            file,
            property,
            allow_nonmodular,
        } => check(&file, property, allow_nonmodular),
        Command::Birkhoff { action } => birkhoff(action, limits),
        Command::Stanley { file, trace_dir } => {
            let doc = io::read_poset(&file)?;
            let trace = stanley_construct(&doc.poset, limits)?;
            let paths = write_trace(&trace_dir, &trace)?;
            for (step, path) in trace.steps.iter().zip(&paths) {
                println!("{}: {} elements ({})", path.display(), step.snapshot.poset.len(), step.description);
            }
            Ok(Verdict::Success)
        }
        Command::Freedist { action } => freedist(action, limits),
        Command::Dedekind { n } => {
            println!("{}", dedekind_count(n)?);
            Ok(Verdict::Success)
        }
        Command::Reconstruct {
            file,
            with_bounds,
            infer,
            out,
        } => {
            let r = reconstruct_file(&file, with_bounds, infer, limits)?;
            let l = r.lattice.lattice();
            match identify_free(l, limits)? {
                Some(kind) => println!("{} elements; isomorphic to {kind}", l.len()),
                None => println!("{} elements", l.len()),
            }
            println!("join irreducibles: {}", r.irreducibles.len());
            emit(out.as_deref(), &labeled_lattice_to_json(&r.lattice))?;
            Ok(Verdict::Success)
        }
        Command::Render { file, out } => {
            let text = fs::read_to_string(&file)?;
            let dot = if is_spec(&text)? {
                let r = reconstruct_text(&text, false, false, limits)?;
                to_dot(r.lattice.lattice().poset(), Some(r.lattice.labels()))
            } else {
                let doc = io::parse_poset_json(&text)?;
                let labels: Vec<String> = doc
                    .poset
                    .covers()
                    .iter()
                    .map(|e| doc.labels.get(e).cloned().unwrap_or_default())
                    .collect();
                to_dot(&doc.poset, Some(&labels))
            };
            write_or_print(out.as_deref(), &dot)?;
            Ok(Verdict::Success)
        }
        Command::Factors { file, element } => {
            let text = fs::read_to_string(&file)?;
            let factors = if is_spec(&text)? {
                reconstruct_text(&text, false, false, limits)?.factors_of(&element)?
            } else {
                let (lattice, labels) = io::parse_lattice_json(&text)?;
                element_factors(&LabeledLattice::from_label_map(lattice, &labels)?, &element)?
            };
            if factors.is_empty() {
                println!("{element} = 0");
            } else {
                println!("{element} = {}", factors.join("+"));
            }
            Ok(Verdict::Success)
        }
    }
}

fn is_spec(text: &str) -> Result<bool> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    Ok(value.get("irreducibles").is_some())
}

fn reconstruct_text(text: &str, with_bounds: bool, infer: bool, limits: &Limits) -> Result<Reconstruction> {
    let spec = ReconstructionSpec::from_json(text)?;
    let r = reconstruct(&spec, ReconstructionOptions { infer, with_bounds }, limits)?;
    for w in &r.warnings {
        log::warn!("{w}");
    }
    Ok(r)
}

fn reconstruct_file(path: &Path, with_bounds: bool, infer: bool, limits: &Limits) -> Result<Reconstruction> {
    reconstruct_text(&fs::read_to_string(path)?, with_bounds, infer, limits)
}

/// Names the free distributive lattice a lattice is isomorphic to, if any.
fn identify_free(l: &Lattice, limits: &Limits) -> Result<Option<String>> {
    for n in 1..=limits.max_free_arity.min(5) {
        let m = dedekind_count(n)? as usize;
        for (extended, size, kind) in [(true, m, "extended"), (false, m - 2, "restricted")] {
            if size != l.len() {
                continue;
            }
            let free = generate_lattice(n, extended, limits)?;
            if find_isomorphism(l.poset(), free.lattice.poset(), limits)?.is_some() {
                return Ok(Some(format!("{kind} Λ{n}")));
            }
        }
    }
    Ok(None)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    if let Some(path) = out {
        fs::write(path, text)?;
    }
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn names(l: &Lattice, xs: &[usize]) -> String {
    xs.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join(", ")
}

fn chain(l: &Lattice, xs: &[usize]) -> String {
    xs.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join(" < ")
}

fn verdict(holds: bool) -> Verdict {
    if holds {
        Verdict::Success
    } else {
        Verdict::PropertyFails
    }
}

fn check(file: &Path, property: Property, allow_nonmodular: bool) -> Result<Verdict> {
    let (l, _) = io::read_lattice(file)?;
    match property {
        Property::Modular => {
            let r = is_modular(&l);
            println!("modular: {}", r.holds());
            if let Some(p) = r.pentagon {
                println!("pentagon sublattice: {}", names(&l, &p));
            }
            if let Some([a, b, c]) = r.identity_violation {
                println!("modular law fails at ({}, {}, {})", l.name(a), l.name(b), l.name(c));
            }
            Ok(verdict(r.holds()))
        }
        Property::Distributive => {
            let r = is_distributive(&l);
            println!("distributive: {}", r.holds());
            if let Some(p) = r.pentagon {
                println!("pentagon sublattice: {}", names(&l, &p));
            }
            if let Some(d) = r.diamond {
                println!("diamond sublattice: {}", names(&l, &d));
            }
            if let Some([a, b, c]) = r.identity_violation {
                println!("distributive law fails at ({}, {}, {})", l.name(a), l.name(b), l.name(c));
            }
            Ok(verdict(r.holds()))
        }
        Property::Semimodular => {
            let r = is_upper_semimodular(&l);
            println!("upper semimodular: {}", r.holds);
            if let Some(reason) = &r.reason {
                println!("{reason}");
            }
            Ok(verdict(r.holds))
        }
        Property::Graded => match l.grade() {
            Grading::Graded { length, .. } => {
                println!("graded: true");
                println!("length: {length}");
                Ok(Verdict::Success)
            }
            Grading::Ungraded { shorter, longer } => {
                println!("graded: false");
                println!("maximal chain: {}", chain(&l, &shorter));
                println!("maximal chain: {}", chain(&l, &longer));
                Ok(Verdict::PropertyFails)
            }
        },
        Property::Multfree | Property::Jordanholder => {
            let jh = verify_jordan_holder(&l, allow_nonmodular)?;
            let multfree = matches!(&jh, JordanHolder::Consistent { multiplicities, .. } if multiplicities.iter().all(|&m| m == 1));
            let holds = match property {
                Property::Multfree => multfree,
                _ => jh.holds(),
            };
            match &jh {
                JordanHolder::Consistent {
                    multiplicities,
                    chain_count,
                } => {
                    println!("jordan-holder: true ({chain_count} maximal chains)");
                    println!("class multiplicities: {multiplicities:?}");
                }
                JordanHolder::Inconsistent {
                    first,
                    first_multiplicities,
                    second,
                    second_multiplicities,
                } => {
                    println!("jordan-holder: false");
                    println!("{} has multiplicities {first_multiplicities:?}", chain(&l, first));
                    println!("{} has multiplicities {second_multiplicities:?}", chain(&l, second));
                }
            }
            if let Property::Multfree = property {
                println!("multiplicity free: {multfree}");
            }
            Ok(verdict(holds))
        }
    }
}

fn birkhoff(action: BirkhoffAction, limits: &Limits) -> Result<Verdict> {
    match action {
        BirkhoffAction::Ideals { file, out } => {
            let doc = io::read_poset(&file)?;
            let j = ideals_lattice(&doc.poset, limits)?;
            write_or_print(out.as_deref(), &labeled_lattice_to_json(&j))?;
            Ok(Verdict::Success)
        }
        BirkhoffAction::Irr { file, out } => {
            let (l, _) = io::read_lattice(&file)?;
            let p = irreducible_poset(&l)?;
            write_or_print(out.as_deref(), &poset_to_json(&p, None))?;
            Ok(Verdict::Success)
        }
        BirkhoffAction::Roundtrip { file } => {
            let (l, _) = io::read_lattice(&file)?;
            match birkhoff_roundtrip(&l, limits) {
                Ok(r) => {
                    println!("join irreducibles: {}", r.irreducibles.len());
                    println!("L ≅ J(irr(L)): {}", r.lattice_map.is_some());
                    println!("irr(J(P)) ≅ P: {}", r.poset_map.is_some());
                    Ok(verdict(r.holds()))
                }
                Err(Error::NotDistributive) => {
                    println!("round trip: false (lattice is not distributive)");
                    Ok(Verdict::PropertyFails)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn free_lattice_json(free: &FreeLattice) -> String {
    let names: Vec<String> = free.elements.iter().map(|e| e.to_string()).collect();
    let renamed = free
        .lattice
        .poset()
        .renamed(names)
        .expect("clause sets are distinct");
    poset_to_json(&renamed, None)
}

fn freedist(action: FreedistAction, limits: &Limits) -> Result<Verdict> {
    match action {
        FreedistAction::Count { n } => {
            println!("{}", dedekind_count(n)?);
        }
        FreedistAction::Generate { n, extended, out } => {
            let free = generate_lattice(n, extended, limits)?;
            log::info!("generated {} elements", free.lattice.len());
            write_or_print(out.as_deref(), &free_lattice_json(&free))?;
        }
        FreedistAction::Dnf { expr, arity } => {
            let e = parse_dnf(&expr, arity)?;
            println!("{e}");
        }
    }
    Ok(Verdict::Success)
}
