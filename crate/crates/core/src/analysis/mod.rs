//! Finite-to-one tests, degrees and exact fibers of 1-block codes.

pub mod degree;
pub mod diamond;
pub mod periodic;
pub mod preimage;

pub use degree::{compute_degree, d_star, degree_report, Degree, DegreeReport};
pub use diamond::{is_constant_to_one, is_finite_to_one, is_left_closing, is_right_closing};
pub use periodic::{enumerate_image_orbits, periodic_fiber, LiftOrbit, PhasedFiberDecomposition};
pub use preimage::preimage_words;
