use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

/// One ergodic lift of the base measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lift {
    pub measure: String,
    pub multiplicity: usize,
    /// Weight in the canonical lift, `multiplicity / degree`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    /// Mass of the diagonal under the relatively independent self-joining.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_mass: Option<String>,
    /// Joining coordinates carrying this lift (Monte-Carlo only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<usize>>,
    /// Mean empirical cylinder frequencies of those coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequencies: Option<BTreeMap<String, f64>>,
}

impl Lift {
    pub fn new(measure: String, multiplicity: usize) -> Self {
        Lift {
            measure,
            multiplicity,
            weight: None,
            diagonal_mass: None,
            coordinates: None,
            frequencies: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloInfo {
    pub sample_length: usize,
    pub cyl_depth: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub burn_in: usize,
    /// Largest within-cluster and smallest between-cluster distances.
    pub max_within: f64,
    pub min_between: Option<f64>,
}

/// The measure fiber over an ergodic base measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub base_measure: String,
    /// Number of preimages of a typical point, `Σ multiplicities`.
    pub degree: usize,
    pub method: Method,
    pub lifts: Vec<Lift>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_lift_ergodic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloInfo>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl LiftReport {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.lifts.iter().map(|l| l.multiplicity).collect()
    }

    /// Multiplicities in increasing order.
    pub fn multiplicity_multiset(&self) -> Vec<usize> {
        let mut m = self.multiplicities();
        m.sort_unstable();
        m
    }
}
