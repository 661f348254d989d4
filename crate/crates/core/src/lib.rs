//! Exact simulation and cross-verification of Fourier sampling for hidden
//! involution subgroups of the symmetric group.
//!
//! The crate computes measurement distributions for one- and multi-register
//! coset-state experiments in two independent ways: a representation-theoretic
//! pipeline built from exact characters and Young orthogonal matrices, and a
//! brute-force dense simulation in the group algebra. The two are compared
//! exactly at small `n`.

pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod measurement;
pub mod oracle;
pub mod spectral;
pub mod tensor;
pub mod yor;

pub use combinatorics::{Involution, Partition, Permutation};
pub use error::{Error, Result};
