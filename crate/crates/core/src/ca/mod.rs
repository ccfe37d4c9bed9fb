//! Linear cellular automata on `Z/N` viewed as factor codes of the full
//! `N`-shift, with exact descriptions of the lifts of Bernoulli images.
//!
//! The difference code `x ↦ (x_{i+1} − x_i)` commutes with adding a constant,
//! so its lifts are the translates of the Bernoulli measure. The sum code
//! `x ↦ (x_{i+1} + x_i)` is invariant under adding `c·z` for the alternating
//! point `z = (…, +1, −1, +1, …)`, which produces lifts beyond the translates.

pub mod cross;
pub mod difference;
pub mod sum;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::report::{Lift, LiftReport, Method};
use crate::measure::{BernoulliMeasure, Comparison, CylinderMeasure, SkewMargin};
use crate::rational::{self, Rational};
use crate::shift::block_code::{recode_to_one_block, Recoding, SlidingBlockCode};
use crate::shift::LabeledGraph;

pub use cross::{cross_validate, ClusterMatch, CrossValidation};
pub use difference::difference_lift_analysis;
pub use sum::sum_code_lift_analysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Difference,
    Sum,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diff" | "difference" => Ok(Family::Difference),
            "sum" => Ok(Family::Sum),
            _ => Err(Error::InvalidInput(format!("unknown family `{s}` (expected diff or sum)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearCACode {
    pub modulus: usize,
    pub family: Family,
    pub code: SlidingBlockCode,
    pub recoding: Recoding,
}

impl LinearCACode {
    pub fn new(family: Family, modulus: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidInput("modulus must be at least 2".into()));
        }
        let n = modulus;
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let domain = LabeledGraph::full_shift(&names);
        let code = SlidingBlockCode::from_fn(0, 1, domain, names, |w| match family {
            Family::Difference => (w[1] + n - w[0]) % n,
            Family::Sum => (w[0] + w[1]) % n,
        })?;
        let recoding = recode_to_one_block(&code);
        Ok(LinearCACode {
            modulus,
            family,
            code,
            recoding,
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.recoding.graph
    }
}

/// An exactly known lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactLift {
    Bernoulli(BernoulliMeasure),
    Skew(SkewMargin),
}

impl CylinderMeasure for ExactLift {
    fn alphabet_len(&self) -> usize {
        match self {
            ExactLift::Bernoulli(m) => m.alphabet_len(),
            ExactLift::Skew(m) => m.alphabet_len(),
        }
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        match self {
            ExactLift::Bernoulli(m) => m.cylinder(w),
            ExactLift::Skew(m) => m.cylinder(w),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessWitness {
    pub lifts: (usize, usize),
    pub comparison: Comparison,
}

#[derive(Clone, Debug)]
pub struct NamedLift {
    pub name: String,
    pub measure: ExactLift,
    pub multiplicity: usize,
}

/// Exact lift structure of a Bernoulli image under a linear CA code.
#[derive(Clone, Debug)]
pub struct CaLiftAnalysis {
    pub family: Family,
    pub modulus: usize,
    pub alpha: Vec<Rational>,
    pub degree: usize,
    pub lifts: Vec<NamedLift>,
    /// One exact witness per pair of lifts.
    pub witnesses: Vec<DistinctnessWitness>,
    pub warnings: Vec<String>,
}

impl CaLiftAnalysis {
    pub fn report(&self) -> LiftReport {
        LiftReport {
            base_measure: format!("image of {}", bernoulli_name(&self.alpha)),
            degree: self.degree,
            method: Method::Exact,
            lifts: self
                .lifts
                .iter()
                .map(|l| Lift::new(l.name.clone(), l.multiplicity))
                .collect(),
            canonical_lift_ergodic: Some(self.lifts.len() == 1),
            monte_carlo: None,
            warnings: self.warnings.clone(),
        }
    }

    pub fn multiplicity_multiset(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.lifts.iter().map(|l| l.multiplicity).collect();
        m.sort_unstable();
        m
    }
}

pub(crate) fn bernoulli_name(alpha: &[Rational]) -> String {
    let parts: Vec<String> = alpha.iter().map(rational::format).collect();
    format!("Bernoulli({})", parts.join(","))
}

/// Pairwise exact comparisons up to word length `depth`; all pairs must
/// differ.
pub(crate) fn certify_distinct(lifts: &[NamedLift], depth: usize) -> Result<Vec<DistinctnessWitness>> {
    let mut out = Vec::new();
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            let c = crate::measure::compare_measures(&lifts[i].measure, &lifts[j].measure, depth)?;
            if !c.is_distinct() {
                return Err(Error::Internal(format!(
                    "lifts `{}` and `{}` agree on all words up to length {depth}",
                    lifts[i].name, lifts[j].name
                )));
            }
            out.push(DistinctnessWitness {
                lifts: (i, j),
                comparison: c,
            });
        }
    }
    Ok(out)
}

pub(crate) fn check_alpha(alpha: &[Rational], modulus: usize) -> Result<()> {
    if alpha.len() != modulus {
        return Err(Error::InvalidInput(format!(
            "probability vector has {} entries for modulus {modulus}",
            alpha.len()
        )));
    }
    if !rational::is_probability_vector(alpha) {
        return Err(Error::InvalidInput("entries must be non-negative and sum to 1".into()));
    }
    Ok(())
}
