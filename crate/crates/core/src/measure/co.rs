use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::CylinderMeasure;
use crate::rational::{self, Rational};
use crate::shift::orbits::PeriodicOrbit;

/// Uniform measure on a periodic orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct COMeasure {
    orbit: PeriodicOrbit,
    alphabet_len: usize,
}

impl COMeasure {
    pub fn new(orbit: PeriodicOrbit, alphabet_len: usize) -> Self {
        COMeasure { orbit, alphabet_len }
    }

    pub fn orbit(&self) -> &PeriodicOrbit {
        &self.orbit
    }

    /// The periodic point starting at a uniformly chosen phase.
    pub fn sample<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<usize> {
        let w = self.orbit.word();
        let r = rng.gen_range(0..w.len());
        (0..len).map(|i| w[(r + i) % w.len()]).collect()
    }
}

impl CylinderMeasure for COMeasure {
    fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        let u = self.orbit.word();
        let p = u.len();
        let hits = (0..p)
            .filter(|&r| w.iter().enumerate().all(|(i, &a)| u[(r + i) % p] == a))
            .count();
        if hits == 0 {
            return Rational::zero();
        }
        rational::ratio(hits as i64, p as i64)
    }
}
