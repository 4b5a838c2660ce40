/// Size caps for the enumerating operations.
///
/// Every operation that can blow up combinatorially takes a `&Limits` and fails
/// with [`Error::SizeLimitExceeded`](crate::Error::SizeLimitExceeded) (or
/// [`Error::ChainCapExceeded`](crate::Error::ChainCapExceeded)) instead of
/// running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of order ideals enumerated by `Poset::order_ideals`.
    pub max_ideals: usize,
    /// Maximum number of elements of a materialized lattice (tables are n x n).
    pub max_lattice: usize,
    /// Maximum poset size accepted by the isomorphism search.
    pub max_iso: usize,
    /// Maximum number of maximal chains enumerated explicitly.
    pub max_chains: usize,
    /// Maximum number of join irreducibles searched by `Lattice::rank`.
    pub max_rank_irreducibles: usize,
    /// Largest arity for which a free distributive lattice is materialized.
    pub max_free_arity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ideals: 10_000_000,
            max_lattice: 10_000,
            max_iso: 4_096,
            max_chains: 1_000_000,
            max_rank_irreducibles: 20,
            max_free_arity: 5,
        }
    }
}

impl Limits {
    /// Raises or lowers every element-count cap to `n`. The arity cap is left
    /// alone since it is not an element count.
    pub fn with_global_cap(mut self, n: usize) -> Self {
        self.max_ideals = n;
        self.max_lattice = n.min(crate::lattice::MAX_TABLE_ELEMENTS);
        self.max_iso = n;
        self.max_chains = n;
        self.max_rank_irreducibles = n.min(63);
        self
    }
}
