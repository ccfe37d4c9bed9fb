use num_traits::Zero;
use rand::Rng;

use super::bernoulli::BernoulliMeasure;
use super::CylinderMeasure;
use crate::rational::{self, Rational};

/// Law of `x + c·z` (mod `N`) where `x` follows a Bernoulli measure and `z`
/// is the alternating point `(…, +1, −1, +1, …)` taken at a uniform phase.
///
/// Under the sum code `(x_i + x_{i+1}) mod N` the perturbation cancels, so
/// every such law lifts the image of the Bernoulli measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMargin {
    base: BernoulliMeasure,
    shift: usize,
}

impl SkewMargin {
    pub fn new(base: BernoulliMeasure, shift: usize) -> Self {
        let n = base.alphabet_len();
        SkewMargin {
            base,
            shift: shift % n,
        }
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn base(&self) -> &BernoulliMeasure {
        &self.base
    }

    fn offset(&self, phase: usize, i: usize) -> usize {
        let n = self.base.alphabet_len();
        if (i + phase) % 2 == 0 {
            self.shift
        } else {
            (n - self.shift) % n
        }
    }

    pub fn sample<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<usize> {
        let n = self.base.alphabet_len();
        let phase = rng.gen_range(0..2);
        let x = self.base.sample(len, rng);
        x.iter()
            .enumerate()
            .map(|(i, &a)| (a + self.offset(phase, i)) % n)
            .collect()
    }
}

impl CylinderMeasure for SkewMargin {
    fn alphabet_len(&self) -> usize {
        self.base.alphabet_len()
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        let n = self.base.alphabet_len();
        if w.iter().any(|&a| a >= n) {
            return Rational::zero();
        }
        let total: Rational = (0..2)
            .map(|phase| {
                let shifted: Vec<usize> = w
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (a + n - self.offset(phase, i)) % n)
                    .collect();
                self.base.cylinder(&shifted)
            })
            .sum();
        total * rational::ratio(1, 2)
    }
}
