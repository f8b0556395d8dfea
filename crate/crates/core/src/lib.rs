//! Construction, verification and exhaustive classification of perfect
//! 2-colorings of the Johnson graphs `J(n,3)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`johnson`]: vertices, adjacency, distances, closed-form eigenvalues.
//! * [`coloring`]: partitions, quotient matrices, merging, part types, spectra.
//! * [`perm`]: permutations, automorphism groups of helper graphs, orbits on
//!   `k`-subsets, coloring isomorphism and stabilizers.
//! * [`nbarray`]: neighborhood arrays of `J(10,3)` vertices and their
//!   canonical forms.
//! * [`deduction`]: an all-solutions 0/1 integer-linear enumerator and the
//!   `J(10,3)` encodings built on it.
//! * [`pipeline`]: end-to-end claim checks producing JSON reports.

pub mod coloring;
pub mod deduction;
pub mod error;
pub mod johnson;
pub mod nbarray;
pub mod perm;
pub mod pipeline;

pub use coloring::{
    merge, part_type, verify_perfect, ColoringFile, MergeOutcome, PartColoring, QuotientMatrix,
    Spectrum,
};
pub use error::{Error, Result};
pub use johnson::{johnson_eigenvalue, JohnsonGraph, Vertex};
pub use perm::{PermGroup, Permutation};
