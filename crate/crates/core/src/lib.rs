//! Truth values of experimental quantum propositions decided as linear-system
//! solvability.
//!
//! A rank-1 proposition `P = ΨΨ†` is true in a state when the state lies in
//! `ran(P)` and false when it lies in `ker(P)`. Both memberships are decided
//! by consistency of a linear system: the range test needs a linear number of
//! primitive operations, while the kernel test runs a Gaussian-type
//! elimination with a cubic operation count. The crate counts every primitive
//! operation, compares the two valuation semantics (total and partial), and
//! accounts the sequential, PRAM and QPRAM costs of the two tests.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod config;
pub mod costmodel;
pub mod error;
pub mod linalg;
pub mod probability;
pub mod qpram;
pub mod rng;
pub mod solvability;
pub mod valuation;

pub use config::{OpWeights, SolverConfig, Tolerances};
pub use error::{Error, Result};
pub use linalg::{CMatrix, ComplexScalar, Projector, StateVector, SubspaceBasis, SubspaceKind};
pub use solvability::{AugmentedTableau, OpCounter, Statement, StatementVerdict};
pub use valuation::{Semantics, TruthValue, TruthVerdict};
