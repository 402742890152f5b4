use serde::{Deserialize, Serialize};

/// Default seed for the pseudo-random eigenspace splitting combinations.
pub const DEFAULT_SEED: u64 = 0xD1C50;

/// Resource caps and seeds shared by every analysis.
///
/// Every cap converts a potential blow-up into an [`Error::Resource`](crate::Error).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest group order that may be enumerated element by element.
    pub element_cap: u64,
    /// Largest degree of a coset-action quotient.
    pub quotient_degree_cap: u64,
    /// Largest number of normal subgroups kept in a lattice.
    pub lattice_cap: usize,
    /// Largest number of candidate subgroup builds in complement searches.
    pub search_cap: u64,
    /// Upper bound on the candidate scanned while looking for a Dixon prime.
    pub prime_search_limit: u64,
    /// Number of random class-matrix combinations tried after the class
    /// matrices themselves fail to split an eigenspace.
    pub split_iterations: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            element_cap: 200_000,
            quotient_degree_cap: 20_000,
            lattice_cap: 10_000,
            search_cap: 1_000_000,
            prime_search_limit: 1 << 40,
            split_iterations: 64,
            seed: DEFAULT_SEED,
        }
    }
}
