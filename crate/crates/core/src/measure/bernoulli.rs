use num_traits::{One, Zero};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use serde::Serialize;

use super::CylinderMeasure;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Product measure with the same marginal at every coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliMeasure {
    #[serde(with = "rational::serde_rational_vec")]
    probabilities: Vec<Rational>,
}

impl BernoulliMeasure {
    pub fn new(probabilities: Vec<Rational>) -> Result<Self> {
        if probabilities.is_empty() || !rational::is_probability_vector(&probabilities) {
            return Err(Error::InvalidInput(
                "Bernoulli weights must be non-negative and sum to 1".into(),
            ));
        }
        Ok(BernoulliMeasure { probabilities })
    }

    /// Uniform measure on `n` symbols.
    pub fn uniform(n: usize) -> Self {
        BernoulliMeasure {
            probabilities: vec![rational::ratio(1, n as i64); n],
        }
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    pub fn is_fully_supported(&self) -> bool {
        self.probabilities.iter().all(|p| !p.is_zero())
    }

    /// Image under adding `k` mod the alphabet size to every coordinate.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.probabilities.len();
        BernoulliMeasure {
            probabilities: (0..n).map(|a| self.probabilities[(a + n - k % n) % n].clone()).collect(),
        }
    }

    pub fn sample<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<usize> {
        let w: Vec<f64> = self.probabilities.iter().map(rational::to_f64).collect();
        let dist = WeightedIndex::new(&w).expect("probability vector has positive mass");
        (0..len).map(|_| dist.sample(rng)).collect()
    }
}

impl CylinderMeasure for BernoulliMeasure {
    fn alphabet_len(&self) -> usize {
        self.probabilities.len()
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        w.iter().fold(Rational::one(), |acc, &a| match self.probabilities.get(a) {
            Some(p) => acc * p,
            None => Rational::zero(),
        })
    }
}
