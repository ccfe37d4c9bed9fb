//! Shifts of finite type presented by labeled graphs, sliding block codes and
//! their recodings.

pub mod automaton;
pub mod block_code;
pub mod graph;
pub mod orbits;
pub mod perron;
pub mod structure;

pub use automaton::{determinize, SubsetAutomaton};
pub use block_code::{recode_to_one_block, BlockCodeJson, CodeInput, Recoding, SlidingBlockCode};
pub use graph::{GraphJson, LabeledGraph};
pub use orbits::{enumerate_periodic_orbits, PeriodicOrbit};
pub use perron::entropy;
pub use structure::{analyze_graph, require_irreducible, StructureReport};
