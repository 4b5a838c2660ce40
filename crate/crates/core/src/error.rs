use thiserror::Error;

/// Which bound was missing when a poset failed to be a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Join => f.write_str("least upper bound"),
            BoundKind::Meet => f.write_str("greatest lower bound"),
        }
    }
}

/// Witness returned when a poset is not a lattice: the pair lacking a bound and
/// the minimal upper (or maximal lower) bounds that exist instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWitness {
    pub a: String,
    pub b: String,
    pub kind: BoundKind,
    pub candidates: Vec<String>,
}

impl std::fmt::Display for LatticeWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "`{}` and `{}` have no {} (candidates: [{}])",
            self.a,
            self.b,
            self.kind,
            self.candidates.join(", ")
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("size limit exceeded: {what} exceeds the cap of {limit}")]
    SizeLimitExceeded { what: String, limit: usize },
    #[error("not a lattice: {0}")]
    NotALattice(Box<LatticeWitness>),
    #[error("lattice is not restricted ({atoms} atoms, {coatoms} coatoms; need at least 2 of each)")]
    NotRestricted { atoms: usize, coatoms: usize },
    #[error("lattice is not modular")]
    NotModular,
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("not a maximal chain: {0}")]
    NotMaximalChain(String),
    #[error("more than {0} maximal chains")]
    ChainCapExceeded(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no declared join irreducible accounts for composition factor `{0}`")]
    CoverageGap(String),
    #[error("composition factor `{0}` is the top factor of more than one join irreducible")]
    DuplicateTopFactor(String),
    #[error("inconsistent order facts: {0}")]
    InconsistentOrder(String),
    #[error("order conflict between `{lower}` and `{upper}`: {reason}")]
    OrderConflict {
        lower: String,
        upper: String,
        reason: String,
    },
    #[error("declared edge `{lower}` -> `{upper}` (label `{label}`) has no image: {reason}")]
    EmbeddingFailure {
        lower: String,
        upper: String,
        label: String,
        reason: String,
    },
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn size(what: impl Into<String>, limit: usize) -> Self {
        Error::SizeLimitExceeded {
            what: what.into(),
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
