//! Exact linear-extension counting, Stanley-inequality equality checks, and
//! the poset gadgets, continued-fraction machinery and polytope volumes that
//! connect them.

pub mod bits;
pub mod cf;
pub mod corpus;
pub mod decide;
pub mod error;
pub mod gadget;
pub mod geometry;
pub mod linext;
pub mod poset;
pub mod selftest;

pub use error::{Error, Result};
pub use linext::{CountInstance, LinearExtension};
pub use poset::{Poset, PosetJson};

/// Resource ceilings shared by every exponential-time routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest poset accepted by the counting DP.
    pub max_elements: usize,
    /// Largest poset accepted by explicit enumeration.
    pub enumerate_n: usize,
    /// Largest number of ideals kept in one DP layer.
    pub ideal_budget: usize,
    /// Largest square minor examined by the TU check.
    pub minor: usize,
    /// Largest intrinsic dimension for volumes and mixed volumes.
    pub dim: usize,
    /// Largest number of free coordinates in 0/1 vertex enumeration.
    pub vertex_free: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: poset::MAX_ELEMENTS,
            enumerate_n: 12,
            ideal_budget: 4_000_000,
            minor: 8,
            dim: 6,
            vertex_free: 20,
        }
    }
}
