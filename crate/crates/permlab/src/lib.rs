//! A laboratory for exact statistics of random permutations.
//!
//! The crate computes, in exact rational arithmetic, the distributions of
//! several adjacency and fixed-point statistics of uniform random
//! permutations; realizes the combinatorial bijections relating them;
//! provides sequential Markov-chain samplers whose laws can be enumerated
//! exactly at small sizes; and analyzes the fixed points of commutators
//! `[eta, pi]` against a unit-mean Poisson reference, exactly at small sizes
//! and by Monte Carlo at large ones.
//!
//! Everything exact is checked against brute-force enumeration over whole
//! symmetric groups; see [`verify`] for the runnable suites.

mod error;

pub mod bijections;
pub mod commutator;
pub mod dist;
pub mod generators;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
