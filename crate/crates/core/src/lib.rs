//! Finite-to-one factor codes between shifts of finite type.
//!
//! The crate decides finite-to-one-ness of 1-block codes on 1-step SFTs,
//! computes their degree with a magic-word certificate, builds the fiber
//! products and the topological degree joining, and lists the ergodic lifts
//! of ergodic measures on the image together with their multiplicities:
//! exactly for periodic-orbit measures and for the linear cellular automaton
//! families, statistically for fully supported Markov measures.

pub mod analysis;
pub mod ca;
pub mod cli;
pub mod error;
pub mod fiber;
pub mod joining;
pub mod measure;
pub mod rational;
pub mod shift;

#[cfg(test)]
mod fixtures;

pub use error::{Error, Result};
