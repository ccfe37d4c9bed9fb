//! Images of measures under 1-block codes, evaluated lazily.

use num_traits::{One, Zero};

use super::markov::MarkovMeasure;
use super::CylinderMeasure;
use crate::analysis::preimage::preimage_words;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::shift::block_code::Recoding;
use crate::shift::LabeledGraph;

/// `π_* m` for a Markov measure `m` on the symbols of `g`, evaluated with the
/// forward algorithm.
#[derive(Clone, Debug)]
pub struct Pushforward {
    chain: MarkovMeasure,
    graph: LabeledGraph,
}

impl Pushforward {
    pub fn new(chain: MarkovMeasure, graph: LabeledGraph) -> Result<Self> {
        if chain.len() != graph.len() {
            return Err(Error::InvalidInput(format!(
                "measure has {} states but the code has {} symbols",
                chain.len(),
                graph.len()
            )));
        }
        Ok(Pushforward { chain, graph })
    }

    pub fn chain(&self) -> &MarkovMeasure {
        &self.chain
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }
}

impl CylinderMeasure for Pushforward {
    fn alphabet_len(&self) -> usize {
        self.graph.y_len()
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        let g = &self.graph;
        let Some((&first, rest)) = w.split_first() else {
            return Rational::one();
        };
        let mut alpha: Vec<Rational> = (0..g.len())
            .map(|s| {
                if g.label(s) == first {
                    self.chain.stationary()[s].clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        for &a in rest {
            let mut next = vec![Rational::zero(); g.len()];
            for (s, mass) in alpha.iter().enumerate() {
                if mass.is_zero() {
                    continue;
                }
                for (t, p) in self.chain.matrix()[s].iter().enumerate() {
                    if g.label(t) == a && !p.is_zero() {
                        next[t] += mass * p;
                    }
                }
            }
            alpha = next;
        }
        alpha.into_iter().sum()
    }
}

/// `(π_* m)([w])` for a Markov measure on the symbols of `g`.
pub fn pushforward_cylinder(m: &MarkovMeasure, g: &LabeledGraph, w: &[usize]) -> Result<Rational> {
    Ok(Pushforward::new(m.clone(), g.clone())?.cylinder(w))
}

/// Image of an arbitrary measure on the base alphabet of a recoded block
/// code: the sum of its masses over the base words spanned by the preimages.
pub fn pushforward_words<M: CylinderMeasure + ?Sized>(m: &M, r: &Recoding, w: &[usize]) -> Rational {
    preimage_words(&r.graph, w)
        .iter()
        .map(|u| m.cylinder(&r.spanned_word(u)))
        .sum()
}
