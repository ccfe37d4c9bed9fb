//! Exact-rational shift-invariant measures on symbol sequences.
//!
//! A measure is known through its cylinder function `w ↦ μ([w]₀)`. Every
//! implementation is exact; floating point appears only in sampling and in
//! empirical statistics.

pub mod bernoulli;
pub mod co;
pub mod compare;
pub mod empirical;
pub mod json;
pub mod markov;
pub mod pushforward;
pub mod skew;
pub mod two_point;

use crate::rational::Rational;

pub use bernoulli::BernoulliMeasure;
pub use co::COMeasure;
pub use compare::{compare_measures, Comparison};
pub use empirical::EmpiricalDistribution;
pub use json::{MeasureJson, Side};
pub use markov::MarkovMeasure;
pub use pushforward::{pushforward_cylinder, pushforward_words, Pushforward};
pub use skew::SkewMargin;
pub use two_point::has_two_point_factor;

pub trait CylinderMeasure {
    /// Size of the alphabet the measure lives on.
    fn alphabet_len(&self) -> usize;

    /// Mass of the cylinder `[w]` at coordinate 0; 1 for the empty word and
    /// 0 for words containing symbols outside the alphabet.
    fn cylinder(&self, w: &[usize]) -> Rational;
}

impl<M: CylinderMeasure + ?Sized> CylinderMeasure for &M {
    fn alphabet_len(&self) -> usize {
        (**self).alphabet_len()
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        (**self).cylinder(w)
    }
}

/// All words of length `k` over `0..n` in lexicographic order.
pub fn words_of_length(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}
