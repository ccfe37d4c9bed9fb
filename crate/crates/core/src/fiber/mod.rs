//! Measure fibers: exact lifts of orbit measures and Monte-Carlo
//! classification of the lifts of fully supported Markov measures.

pub mod monte_carlo;
pub mod periodic;
pub mod report;

pub use monte_carlo::{classify_lifts_monte_carlo, FactorMeasure, McClassification, McParams};
pub use periodic::{analyze_periodic_lifts, CanonicalLiftDecomposition, PeriodicLift};
pub use report::{Lift, LiftReport, Method, MonteCarloInfo};
