//! Finite order theory: posets, lattices, distributive lattices and their
//! Birkhoff representation, free distributive lattices, and reconstruction of
//! multiplicity-free submodule lattices from their join irreducibles.

pub mod birkhoff;
pub mod error;
pub mod fixtures;
pub mod freedist;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod limits;
pub mod poset;
pub mod properties;
pub mod reconstruct;

pub use birkhoff::{
    birkhoff_roundtrip, evaluate_in_lattice, ideals_lattice, irreducible_poset, stanley_construct,
    ConstructionStep, ConstructionTrace, LabeledLattice, LabeledPoset, RoundTrip,
};
pub use error::{BoundKind, Error, LatticeWitness, Result};
pub use freedist::{
    check_self_dual, dedekind_count, generate_lattice, meets_distinct, parse_dnf, FreeLattice,
    MonotoneElement,
};
pub use iso::{find_isomorphism, is_order_isomorphism};
pub use lattice::{Grading, JoinIrreducible, Lattice, RankWitness};
pub use limits::Limits;
pub use poset::Poset;
pub use properties::{
    chain_multiplicities, interval_classes, is_distributive, is_modular, is_multiplicity_free,
    is_upper_semimodular, verify_jordan_holder, DistributivityReport, IntervalClassPartition,
    JordanHolder, ModularityReport, SemimodularVerdict,
};
pub use reconstruct::{
    element_factors, interval_of, irreducible_order, quotient_by, reconstruct, validate_spec,
    Reconstruction, ReconstructionOptions, ReconstructionSpec,
};
