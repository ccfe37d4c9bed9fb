//! Fiber products, the topological degree joining and its periodic points.

pub mod path;
pub mod periodic;
pub mod product;

pub use path::lambda_path_over;
pub use periodic::{enumerate_periodic_degree_joinings, PeriodicJoinings};
pub use product::{degree_joining_graph, fiber_product, permutations, DegreeJoiningGraph, FiberProductGraph};
